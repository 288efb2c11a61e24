//! Exhaustive tables over the subset lattice of the carrier.
//!
//! A table holds one set word per nonempty subset of a `k`-point ground set
//! (index 0 is the empty subset). The sum-over-subsets transforms below turn
//! the nested `∀T ⊆ S` / `∃U ⊆ T` quantifiers of the sequential-closure and
//! star formulas into `k · 2^k` word operations.

/// `out[S] = ⋃_{∅ ≠ T ⊆ S} table[T]`, with `out[∅] = 0`.
pub fn subset_union(table: &[u64]) -> Vec<u64> {
    let mut out = table.to_vec();
    if let Some(first) = out.first_mut() {
        *first = 0;
    }
    let k = width(out.len());
    for i in 0..k {
        let bit = 1usize << i;
        for s in 0..out.len() {
            if s & bit != 0 {
                out[s] |= out[s ^ bit];
            }
        }
    }
    out
}

/// `out[S] = ⋂_{∅ ≠ T ⊆ S} table[T]`, with `out[∅] = full`.
pub fn subset_intersection(table: &[u64], full: u64) -> Vec<u64> {
    let mut out = table.to_vec();
    if let Some(first) = out.first_mut() {
        *first = full;
    }
    let k = width(out.len());
    for i in 0..k {
        let bit = 1usize << i;
        for s in 0..out.len() {
            if s & bit != 0 {
                out[s] &= out[s ^ bit];
            }
        }
    }
    out
}

/// `out[S] = ⋃_{T ⊇ S} table[T]`; `out[∅]` includes `table[∅]`.
pub fn superset_union(table: &[u64]) -> Vec<u64> {
    let mut out = table.to_vec();
    let k = width(out.len());
    for i in 0..k {
        let bit = 1usize << i;
        for s in 0..out.len() {
            if s & bit == 0 {
                out[s] |= out[s | bit];
            }
        }
    }
    out
}

/// `λ*`-style transform: `⋂_{∅≠T⊆S} ⋃_{∅≠U⊆T} table[U]`.
pub fn star_transform(table: &[u64], full: u64) -> Vec<u64> {
    subset_intersection(&subset_union(table), full)
}

fn width(len: usize) -> u32 {
    assert!(len.is_power_of_two(), "table length {len} is not a power of two");
    len.trailing_zeros()
}

/// Maps submasks of a sparse mask onto dense indices `0 .. 2^popcount`.
#[derive(Debug, Clone)]
pub struct Compressor {
    positions: Vec<u32>,
}

impl Compressor {
    pub fn new(mask: u64) -> Self {
        Compressor {
            positions: crate::algebra::BitIter(mask).map(|p| p as u32).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.positions.len()
    }

    pub fn expand(&self, dense: usize) -> u64 {
        self.positions
            .iter()
            .enumerate()
            .filter(|(i, _)| dense & (1 << i) != 0)
            .fold(0, |acc, (_, &p)| acc | 1 << p)
    }
}
