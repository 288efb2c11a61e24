//! Shared fixtures for the benchmarks.

use boolconv::{corpus, Algebra, Bounds, EPSequence};

pub fn algebra(n: usize) -> Algebra {
    Algebra::new(n).expect("benchmark atom count")
}

/// The default corpus on `P(n)`.
pub fn default_corpus(n: usize) -> Vec<EPSequence> {
    let b = algebra(n);
    corpus::generate(b, Bounds::default_for(b), 1, 500).expect("corpus")
}
