//! Shared helpers for eventually periodic words `prefix · cycle^ω`.

/// Rewrites `(prefix, cycle)` into the unique representative with minimal
/// cycle period and minimal prefix. `cycle` must be nonempty.
pub(crate) fn canonicalize<T: PartialEq>(prefix: &mut Vec<T>, cycle: &mut Vec<T>) {
    debug_assert!(!cycle.is_empty());
    let len = cycle.len();
    let period = (1..=len)
        .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| cycle[i] == cycle[i - d]))
        .unwrap_or(len);
    cycle.truncate(period);
    // pull the prefix back into the cycle while its last symbol matches
    while let Some(last) = prefix.last() {
        if last != cycle.last().expect("nonempty cycle") {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Symbol at position `n` of `prefix · cycle^ω`.
pub(crate) fn at<'a, T>(prefix: &'a [T], cycle: &'a [T], n: usize) -> &'a T {
    if n < prefix.len() {
        &prefix[n]
    } else {
        &cycle[(n - prefix.len()) % cycle.len()]
    }
}
