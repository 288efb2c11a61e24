//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one `PASS`/`FAIL` line; exits nonzero on failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use boolconv::corpus::{exhaustive, random_selector, random_selectors, random_sequence, Bounds};
use boolconv::forcing::{ax_bx, intersection_infinite_value, intersection_infinite_value_by_atoms};
use boolconv::suite::{run_suite, SuiteConfig};
use boolconv::topology::{
    all_topologies, closure_fixpoint, condition_hbar, dual_homeomorphism_check, generate_sequential_topology,
    is_weakly_topological, maximality_brute_force,
};
use boolconv::{compose_with_enumeration, convergence_eq, convergence_le, Algebra, Caps, Convergence, EPSequence, ElementSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(n: usize) -> Algebra {
    Algebra::new(n).unwrap()
}

fn corpus(n: usize) -> Vec<EPSequence> {
    exhaustive(p(n), Bounds::new(1, 3)).unwrap()
}

fn bits(b: Algebra, words: impl IntoIterator<Item = u64>) -> ElementSet {
    b.set_from_bits(words.into_iter().fold(0, |acc, w| acc | 1 << w)).unwrap()
}

/// Values seen far out in the sequence, read off explicit terms.
fn tail_values(x: &EPSequence) -> Vec<u64> {
    let seen: BTreeSet<u64> = (40..160).map(|i| x.get(i).word()).collect();
    seen.into_iter().collect()
}

fn limsup(x: &EPSequence) -> u64 {
    tail_values(x).into_iter().fold(0, |a, v| a | v)
}

fn liminf(x: &EPSequence) -> u64 {
    let top = (1u64 << x.algebra().atoms()) - 1;
    tail_values(x).into_iter().fold(top, |a, v| a & v)
}

fn up(b: Algebra, w: u64) -> u64 {
    (0..b.size() as u64).filter(|&v| v & w == w).fold(0, |a, v| a | 1 << v)
}

fn oracle_s(x: &EPSequence) -> u64 {
    let (i, s) = (liminf(x), limsup(x));
    if i == s {
        1 << s
    } else {
        0
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (s, ls, li) = (Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI);
    let meet = Convergence::meet(ls.clone(), li.clone());
    let star_s = Convergence::star(s.clone());
    let meet_star = Convergence::meet(Convergence::star(ls), Convergence::star(li));
    let mut checked = 0;
    for n in 1..=3 {
        for x in corpus(n) {
            checked += 1;
            let want = oracle_s(&x);
            ensure(s.eval(&x).unwrap().bits() == want, || format!("s({x}) disagrees with oracle"))?;
            ensure(meet.eval(&x).unwrap().bits() == want, || format!("(ls ∩ li)({x}) ≠ s"))?;
            // the star of s keeps a value only when it is the sole tail value
            let tv = tail_values(&x);
            let want_star = if tv.len() == 1 { 1 << tv[0] } else { 0 };
            ensure(star_s.eval(&x).unwrap().bits() == want_star, || format!("s*({x}) disagrees with oracle"))?;
            ensure(meet_star.eval(&x).unwrap().bits() == want_star, || format!("(ls* ∩ li*)({x}) ≠ s*"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} sequences, {:.2}s", elapsed.as_secs_f64()))
}

/// `a ∈ lim x` iff every open set containing `a` contains the tail values.
fn oracle_lim(opens: &[u64], x: &EPSequence) -> u64 {
    let tail = tail_values(x).into_iter().fold(0u64, |a, v| a | 1 << v);
    (0..x.algebra().size() as u64)
        .filter(|&a| opens.iter().all(|&o| o & (1 << a) == 0 || tail & !o == 0))
        .fold(0, |acc, a| acc | 1 << a)
}

fn criterion_2() -> Outcome {
    let caps = Caps::default();
    let mut checked = 0;
    for n in 1..=3 {
        let b = p(n);
        let xs = corpus(n);
        for c in [Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI] {
            let t = generate_sequential_topology(&c, b, &caps).unwrap();
            let opens: Vec<u64> = t.open_sets().map(|o| o.bits()).collect();
            let lim = Convergence::lim_of(t.clone());
            for x in &xs {
                checked += 1;
                let v = c.eval(x).unwrap();
                ensure(v.bits() == oracle_lim(&opens, x), || format!("{c}({x}) ≠ lim of its topology (oracle)"))?;
                ensure(v == lim.eval(x).unwrap(), || format!("{c}({x}) ≠ lim of its topology"))?;
            }
        }
    }
    Ok(format!("{checked} comparisons"))
}

fn monotone_family(b: Algebra, upward: bool) -> BTreeSet<u64> {
    let m = b.size() as u64;
    (0..1u64 << m)
        .filter(|&f| {
            (0..m).all(|p| {
                f & (1 << p) == 0 || (0..m).all(|q| {
                    let related = if upward { q & p == p } else { q & p == q };
                    !related || f & (1 << q) != 0
                })
            })
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let caps = Caps::default();
    let mut sizes = Vec::new();
    for n in 1..=3 {
        let b = p(n);
        let top = b.size() as u64 - 1;
        let ls: BTreeSet<u64> = generate_sequential_topology(&Convergence::LambdaLS, b, &caps)
            .unwrap()
            .closed_sets()
            .map(|f| f.bits())
            .collect();
        let li: BTreeSet<u64> = generate_sequential_topology(&Convergence::LambdaLI, b, &caps)
            .unwrap()
            .closed_sets()
            .map(|f| f.bits())
            .collect();
        ensure(ls == monotone_family(b, true), || format!("n={n}: ls-closed sets are not the up-sets"))?;
        ensure(li == monotone_family(b, false), || format!("n={n}: li-closed sets are not the down-sets"))?;
        let image: BTreeSet<u64> = ls
            .iter()
            .map(|&f| (0..=top).filter(|&e| f & (1 << e) != 0).fold(0, |a, e| a | 1 << (top ^ e)))
            .collect();
        ensure(image == li, || format!("n={n}: complement does not carry ls-closed onto li-closed"))?;
        ensure(dual_homeomorphism_check(b, &caps).unwrap().holds, || format!("n={n}: library bijection check fails"))?;
        sizes.push(format!("{}/{}", ls.len(), li.len()));
        if n == 2 {
            let listed: BTreeSet<u64> = [
                vec![],
                vec![3],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3],
                vec![0, 1, 2, 3],
            ]
            .into_iter()
            .map(|w| bits(b, w).bits())
            .collect();
            ensure(ls == listed && ls.len() == 6 && li.len() == 6, || "n=2: families differ from the listed six".into())?;
        }
    }
    Ok(format!("family sizes {}", sizes.join(", ")))
}

/// Reflexive transitive relations on `m` points; these correspond to the
/// topologies on an `m`-point set.
fn count_preorders(m: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    (0u64..1 << off.len())
        .filter(|&mask| {
            let rel = |i: usize, j: usize| i == j || off.iter().position(|&q| q == (i, j)).is_some_and(|k| mask & (1 << k) != 0);
            (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))))
        })
        .count()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let mut counts = Vec::new();
    for n in 1..=2 {
        let b = p(n);
        let xs = exhaustive(b, Bounds::default_for(b)).unwrap();
        let expected = count_preorders(b.size());
        let listed = all_topologies(b, &caps).unwrap().len();
        ensure(listed == expected, || format!("n={n}: {listed} topologies, oracle {expected}"))?;
        for c in [Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI] {
            let r = maximality_brute_force(&c, b, &xs, &caps).unwrap();
            let again = maximality_brute_force(&c, b, &xs, &caps).unwrap();
            ensure(r.holds, || format!("n={n}: O({c}) not maximal: {:?}", r.witness))?;
            ensure(r == again, || format!("n={n}: unstable report for {c}"))?;
            ensure(r.topologies_examined == expected, || format!("n={n}: examined {}", r.topologies_examined))?;
        }
        counts.push(format!("{} points: {expected}", b.size()));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("topologies on {}, {:.2}s", counts.join(", "), elapsed.as_secs_f64()))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for n in 1..=3 {
        for x in corpus(n) {
            checked += 1;
            let r = ax_bx(&x).unwrap();
            let (inf, sup) = (liminf(&x), limsup(&x));
            let le = |a: u64, b: u64| a & !b == 0;
            ensure(le(inf, r.a_x) && le(r.a_x, r.b_x) && le(r.b_x, sup), || format!("{x}: chain broken {r:?}"))?;
            ensure(r.a_x == inf && r.b_x == sup, || format!("{x}: {r:?} vs liminf {inf}, limsup {sup}"))?;
            ensure(r.b_x == r.b_x_by_subsequences, || format!("{x}: the two b_x displays differ"))?;
        }
    }
    Ok(format!("{checked} sequences"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pairs = 600;
    for i in 0..pairs {
        let b = p(1 + i % 4);
        let x = random_sequence(&mut rng, b, Bounds::new(2, 4)).unwrap();
        let a = random_selector(&mut rng);
        let by_composition = intersection_infinite_value(&x, &a).unwrap().word();
        let by_atoms = intersection_infinite_value_by_atoms(&x, &a).unwrap().word();
        // atom α counts iff α <= x_n for some n ∈ A far out
        let direct = (200..400).filter(|&m| a.contains(m)).fold(0, |acc, m| acc | x.get(m).word());
        ensure(by_composition == by_atoms && by_atoms == direct, || {
            format!("{x} with A = {a:?}: composition {by_composition}, atoms {by_atoms}, direct {direct}")
        })?;
    }
    Ok(format!("{pairs} seeded pairs"))
}

fn criterion_7() -> Outcome {
    let mut stable = 0;
    for n in 1..=3 {
        let b = p(n);
        // one step of the ls closure: A plus the up-closures of joins of nonempty subsets
        let step = |a: u64| {
            let mut out = a;
            let mut s = a;
            while s != 0 {
                let join = (0..64).filter(|&i| s & (1 << i) != 0).fold(0, |acc, i| acc | i);
                out |= up(b, join);
                s = (s - 1) & a;
            }
            out
        };
        for x in corpus(n) {
            if !x.is_limsup_stable() {
                continue;
            }
            // stable means every recurring value has the same join as the whole tail
            ensure(tail_values(&x).iter().all(|&v| v == limsup(&x)), || format!("{x} is reported stable"))?;
            stable += 1;
            let range = (0..200).fold(0u64, |acc, i| acc | 1 << x.get(i).word());
            let mut fix = range;
            while step(fix) != fix {
                fix = step(fix);
            }
            let formula = (0..64).filter(|&v| range & (1 << v) != 0).fold(up(b, limsup(&x)), |acc, v| acc | up(b, v));
            let lib = closure_fixpoint(&Convergence::LambdaLS, x.range()).unwrap().closure.bits();
            ensure(fix == formula && lib == formula, || format!("{x}: oracle {fix:#b}, formula {formula:#b}, library {lib:#b}"))?;
        }
    }
    Ok(format!("{stable} stable sequences"))
}

fn criterion_8() -> Outcome {
    let caps = Caps::default();
    let mut supports = 0;
    for n in 1..=4 {
        let r = condition_hbar(p(n), &caps).unwrap();
        ensure(r.holds && r.largest_witness == 1, || format!("n={n}: {r:?}"))?;
        supports += r.supports_checked;
    }
    for n in 1..=3 {
        let b = p(n);
        let v = is_weakly_topological(&Convergence::LambdaLS, b, &corpus(n), &caps).unwrap();
        ensure(v.holds, || format!("n={n}: ls not weakly topological: {:?}", v.witness))?;
    }
    Ok(format!("{supports} supports, ls weakly topological for n <= 3"))
}

fn criterion_9() -> Outcome {
    let l4 = Convergence::LambdaI(4);
    let mut checked = 0;
    for n in 1..=3 {
        let xs = corpus(n);
        for i in 1..=3 {
            let v = convergence_eq(&Convergence::LambdaI(i), &l4, &xs).unwrap();
            ensure(v.holds, || format!("n={n}: l{i} ≠ l4 at {:?}", v.witness))?;
        }
        let v = convergence_le(&Convergence::LambdaI(0), &Convergence::LambdaI(1), &xs).unwrap();
        ensure(v.holds, || format!("n={n}: l0 not below l1 at {:?}", v.witness))?;
        for x in &xs {
            checked += 1;
            ensure(l4.eval(x).unwrap().bits() == 1 << limsup(x), || format!("l4({x}) is not {{limsup}}"))?;
            ensure(Convergence::LambdaI(0).eval(x).unwrap().bits() == oracle_s(x), || format!("l0({x}) ≠ s"))?;
        }
    }
    Ok(format!("{checked} sequences"))
}

fn criterion_10() -> Outcome {
    let selectors = random_selectors(0x5eed ^ 10, 100);
    let mut builtins = vec![Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI];
    builtins.extend((0..=4).map(Convergence::LambdaI));
    builtins.push(Convergence::star(Convergence::LambdaS));
    builtins.push(Convergence::meet(Convergence::LambdaLS, Convergence::LambdaLI));
    let mut comparisons = 0usize;
    for n in 1..=3 {
        let b = p(n);
        let xs = corpus(n);
        for x in &xs {
            let ts = x.tail_support();
            ensure(ts.bits() == bits(b, tail_values(x)).bits(), || format!("{x}: tail support differs from explicit terms"))?;
            let ys: Vec<EPSequence> = selectors.iter().map(|a| compose_with_enumeration(x, a).unwrap()).collect();
            for c in &builtins {
                let v = c.eval(x).unwrap();
                ensure(v == c.eval_support(ts).unwrap(), || format!("{c}({x}) not determined by its tail support"))?;
                for y in &ys {
                    comparisons += 1;
                    let w = x.witness_subsequence(y.tail_support()).unwrap();
                    ensure(c.eval(y).unwrap() == c.eval(&w).unwrap(), || format!("{c}: sampled {y} vs witness {w}"))?;
                }
            }
        }
    }
    let config = SuiteConfig::default().with_suites(["soundness"]);
    let report = run_suite(&config).unwrap();
    ensure(report.all_pass(), || format!("soundness suite: {} failures", report.failed))?;
    Ok(format!("{comparisons} sampled comparisons, {} suite checks", report.checks.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("s = ls ∩ li and s* = ls* ∩ li*", criterion_1),
        ("s, ls, li equal lim of their topologies", criterion_2),
        ("closed families are the up-sets and down-sets; complement is a bijection", criterion_3),
        ("generated topology is maximal among all topologies", criterion_4),
        ("liminf <= a_x <= b_x <= limsup with equalities", criterion_5),
        ("intersection value paths agree", criterion_6),
        ("closure formula for limsup-stable sequences", criterion_7),
        ("condition (ħ) and ls weakly topological", criterion_8),
        ("l1 = l2 = l3 = l4 and l0 <= l1", criterion_9),
        ("subset reduction agrees with sampled selectors", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS criterion {}: {name} ({note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
