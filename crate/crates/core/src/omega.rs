//! Eventually periodic subsets of ω.
//!
//! An [`OmegaSet`] is stored as `prefix · cycle^ω` over bits and kept in
//! canonical form, so two values are equal iff they denote the same set.
//! Infinite sets double as selectors: the subsequence `x ∘ f_A` along the
//! increasing enumeration of `A` is [`compose_with_enumeration`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::periodic::{at, canonicalize, lcm};
use crate::sequence::EPSequence;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OmegaRepr", into = "OmegaRepr")]
pub struct OmegaSet {
    prefix: Vec<bool>,
    cycle: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaClass {
    Finite,
    Cofinite,
    InfiniteCoinfinite,
}

#[derive(Serialize, Deserialize)]
struct OmegaRepr {
    prefix: Vec<u8>,
    cycle: Vec<u8>,
}

fn bits_from(v: &[u8]) -> Result<Vec<bool>> {
    v.iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(Error::parse(format!("omega-set bit must be 0 or 1, got {other}"))),
        })
        .collect()
}

impl TryFrom<OmegaRepr> for OmegaSet {
    type Error = Error;
    fn try_from(r: OmegaRepr) -> Result<Self> {
        OmegaSet::new(bits_from(&r.prefix)?, bits_from(&r.cycle)?)
    }
}

impl From<OmegaSet> for OmegaRepr {
    fn from(s: OmegaSet) -> Self {
        let f = |v: &[bool]| v.iter().map(|&b| b as u8).collect();
        OmegaRepr {
            prefix: f(&s.prefix),
            cycle: f(&s.cycle),
        }
    }
}

impl fmt::Debug for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "{}|({})", s(&self.prefix), s(&self.cycle))
    }
}

impl OmegaSet {
    /// Canonicalizing constructor. Fails on an empty cycle.
    pub fn new(mut prefix: Vec<bool>, mut cycle: Vec<bool>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::structural("omega-set cycle must be nonempty"));
        }
        canonicalize(&mut prefix, &mut cycle);
        Ok(OmegaSet { prefix, cycle })
    }

    pub fn from_bits(prefix: &[u8], cycle: &[u8]) -> Result<Self> {
        OmegaSet::new(bits_from(prefix)?, bits_from(cycle)?)
    }

    /// ω itself.
    pub fn all() -> Self {
        OmegaSet {
            prefix: vec![],
            cycle: vec![true],
        }
    }

    pub fn empty() -> Self {
        OmegaSet {
            prefix: vec![],
            cycle: vec![false],
        }
    }

    pub fn evens() -> Self {
        OmegaSet {
            prefix: vec![],
            cycle: vec![true, false],
        }
    }

    pub fn odds() -> Self {
        OmegaSet {
            prefix: vec![],
            cycle: vec![false, true],
        }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[bool] {
        &self.cycle
    }

    pub fn contains(&self, n: usize) -> bool {
        *at(&self.prefix, &self.cycle, n)
    }

    pub fn classify(&self) -> OmegaClass {
        if self.cycle.iter().all(|&b| !b) {
            OmegaClass::Finite
        } else if self.cycle.iter().all(|&b| b) {
            OmegaClass::Cofinite
        } else {
            OmegaClass::InfiniteCoinfinite
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.classify() != OmegaClass::Finite
    }

    pub fn is_cofinite(&self) -> bool {
        self.classify() == OmegaClass::Cofinite
    }

    /// Members in increasing order; endless when the set is infinite.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        let finite_end = if self.is_infinite() {
            usize::MAX
        } else {
            self.prefix.len()
        };
        (0..finite_end).filter(move |&n| self.contains(n))
    }

    /// Pointwise combination of two sets, computed over the joint period.
    pub fn zip_with(&self, other: &OmegaSet, f: impl Fn(bool, bool) -> bool) -> OmegaSet {
        let start = self.prefix.len().max(other.prefix.len());
        let period = lcm(self.cycle.len(), other.cycle.len());
        let g = |n| f(self.contains(n), other.contains(n));
        OmegaSet::new((0..start).map(g).collect(), (start..start + period).map(g).collect())
            .expect("nonempty period")
    }

    pub fn intersection(&self, other: &OmegaSet) -> OmegaSet {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn is_subset(&self, other: &OmegaSet) -> bool {
        self.intersection(other) == *self
    }
}

/// `x ∘ f_A`, the subsequence of `x` along the increasing enumeration of `A`.
///
/// Past both prefixes, membership in `A` and the values of `x` repeat with
/// period `lcm(|cycle(A)|, |cycle(x)|)`, so one window of that length gives
/// the cycle of the result exactly.
pub fn compose_with_enumeration(x: &EPSequence, a: &OmegaSet) -> Result<EPSequence> {
    if !a.is_infinite() {
        return Err(Error::precondition(format!(
            "selector {a:?} is finite and has no increasing enumeration of ω"
        )));
    }
    let start = x.prefix().len().max(a.prefix.len());
    let period = lcm(x.cycle().len(), a.cycle.len());
    let prefix = (0..start).filter(|&n| a.contains(n)).map(|n| x.get(n)).collect();
    let cycle = (start..start + period)
        .filter(|&n| a.contains(n))
        .map(|n| x.get(n))
        .collect();
    EPSequence::new(x.algebra(), prefix, cycle)
}
