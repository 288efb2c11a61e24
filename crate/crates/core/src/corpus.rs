//! Sequence corpora: exhaustive within bounds, or seeded-random.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::omega::OmegaSet;
use crate::sequence::EPSequence;

/// Raw enumerations above this size fall back to random sampling.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub prefix: usize,
    pub cycle: usize,
}

impl Bounds {
    pub fn new(prefix: usize, cycle: usize) -> Self {
        Bounds { prefix, cycle }
    }

    /// Defaults per atom count: `|prefix| <= 2, |cycle| <= 4` up to two atoms,
    /// `1, 3` for three, `1, 2` for four and more.
    pub fn default_for(algebra: Algebra) -> Self {
        match algebra.atoms() {
            0..=2 => Bounds::new(2, 4),
            3 => Bounds::new(1, 3),
            _ => Bounds::new(1, 2),
        }
    }

    /// Number of raw `(prefix, cycle)` words before canonical deduplication.
    pub fn raw_count(&self, algebra: Algebra) -> u128 {
        let n = algebra.size() as u128;
        let prefixes: u128 = (0..=self.prefix as u32).map(|k| n.pow(k)).sum();
        let cycles: u128 = (1..=self.cycle as u32).map(|k| n.pow(k)).sum();
        prefixes.saturating_mul(cycles)
    }
}

/// All canonical sequences with `|prefix| <= bounds.prefix` and
/// `1 <= |cycle| <= bounds.cycle`, deduplicated and sorted shortest first.
pub fn exhaustive(algebra: Algebra, bounds: Bounds) -> Result<Vec<EPSequence>> {
    if bounds.cycle == 0 {
        return Err(Error::structural("cycle bound must be at least 1"));
    }
    let raw = bounds.raw_count(algebra);
    if raw > EXHAUSTIVE_LIMIT {
        return Err(Error::precondition(format!(
            "{raw} raw sequences exceed the exhaustive limit {EXHAUSTIVE_LIMIT}"
        )));
    }
    let n = algebra.size() as u64;
    let mut out = BTreeSet::new();
    for plen in 0..=bounds.prefix {
        for clen in 1..=bounds.cycle {
            let mut digits = vec![0u64; plen + clen];
            loop {
                out.insert(EPSequence::from_words(algebra, &digits[..plen], &digits[plen..])?);
                if !increment(&mut digits, n) {
                    break;
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn increment(digits: &mut [u64], base: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `samples` random sequences: uniform elements, prefix length uniform in
/// `0..=bounds.prefix`, cycle length uniform in `1..=bounds.cycle`.
/// Deduplicated and sorted; deterministic in `seed`.
pub fn random(algebra: Algebra, bounds: Bounds, seed: u64, samples: usize) -> Result<Vec<EPSequence>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    for _ in 0..samples {
        out.insert(random_sequence(&mut rng, algebra, bounds)?);
    }
    Ok(out.into_iter().collect())
}

pub fn random_sequence(rng: &mut impl Rng, algebra: Algebra, bounds: Bounds) -> Result<EPSequence> {
    let top = algebra.size() as u64;
    let plen = rng.gen_range(0..=bounds.prefix);
    let clen = rng.gen_range(1..=bounds.cycle.max(1));
    let prefix: Vec<u64> = (0..plen).map(|_| rng.gen_range(0..top)).collect();
    let cycle: Vec<u64> = (0..clen).map(|_| rng.gen_range(0..top)).collect();
    EPSequence::from_words(algebra, &prefix, &cycle)
}

/// Exhaustive when the raw count is within [`EXHAUSTIVE_LIMIT`], otherwise random.
pub fn generate(algebra: Algebra, bounds: Bounds, seed: u64, samples: usize) -> Result<Vec<EPSequence>> {
    if bounds.raw_count(algebra) <= EXHAUSTIVE_LIMIT {
        exhaustive(algebra, bounds)
    } else {
        random(algebra, bounds, seed, samples)
    }
}

/// A random infinite subset of ω with prefix at most 3 and cycle at most 6.
pub fn random_selector(rng: &mut impl Rng) -> OmegaSet {
    let plen = rng.gen_range(0..=3);
    let clen = rng.gen_range(1..=6);
    let prefix: Vec<bool> = (0..plen).map(|_| rng.gen()).collect();
    let mut cycle: Vec<bool> = (0..clen).map(|_| rng.gen()).collect();
    if !cycle.iter().any(|&b| b) {
        let i = rng.gen_range(0..clen);
        cycle[i] = true;
    }
    OmegaSet::new(prefix, cycle).expect("nonempty cycle")
}

pub fn random_selectors(seed: u64, count: usize) -> Vec<OmegaSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_selector(&mut rng)).collect()
}
