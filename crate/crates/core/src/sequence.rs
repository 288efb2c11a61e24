//! Eventually periodic sequences over a finite algebra.
//!
//! Every value past the prefix recurs infinitely often, so once a sequence is
//! canonical its *tail support* (the set of cycle values) is exactly the set
//! of values occurring infinitely often. liminf and limsup are its meet and
//! join, and the tail supports reachable by subsequences are exactly its
//! nonempty subsets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, ElementSet};
use crate::error::{Error, Result};
use crate::omega::{compose_with_enumeration, OmegaSet};
use crate::periodic::{at, canonicalize, lcm};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SequenceRepr", into = "SequenceRepr")]
pub struct EPSequence {
    algebra: Algebra,
    prefix: Vec<Element>,
    cycle: Vec<Element>,
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    algebra: Algebra,
    prefix: Vec<u64>,
    cycle: Vec<u64>,
}

impl TryFrom<SequenceRepr> for EPSequence {
    type Error = Error;
    fn try_from(r: SequenceRepr) -> Result<Self> {
        EPSequence::from_words(r.algebra, &r.prefix, &r.cycle)
    }
}

impl From<EPSequence> for SequenceRepr {
    fn from(s: EPSequence) -> Self {
        SequenceRepr {
            algebra: s.algebra,
            prefix: s.prefix.iter().map(|e| e.word()).collect(),
            cycle: s.cycle.iter().map(|e| e.word()).collect(),
        }
    }
}

impl fmt::Display for EPSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Element]| v.iter().map(|e| e.word().to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}]|[{}]", join(&self.prefix), join(&self.cycle))
    }
}

impl fmt::Debug for EPSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over P({})", self.algebra.atoms())
    }
}

/// Shorter sequences first, then prefix and cycle words lexicographically.
impl Ord for EPSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = |s: &EPSequence| s.prefix.len() + s.cycle.len();
        self.algebra
            .cmp(&other.algebra)
            .then(len(self).cmp(&len(other)))
            .then_with(|| self.prefix.len().cmp(&other.prefix.len()))
            .then_with(|| self.prefix.cmp(&other.prefix))
            .then_with(|| self.cycle.cmp(&other.cycle))
    }
}

impl PartialOrd for EPSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl EPSequence {
    pub fn new(algebra: Algebra, mut prefix: Vec<Element>, mut cycle: Vec<Element>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::structural("sequence cycle must be nonempty"));
        }
        for e in prefix.iter().chain(&cycle) {
            algebra.same(e.algebra())?;
        }
        canonicalize(&mut prefix, &mut cycle);
        Ok(EPSequence {
            algebra,
            prefix,
            cycle,
        })
    }

    pub fn from_words(algebra: Algebra, prefix: &[u64], cycle: &[u64]) -> Result<Self> {
        let conv = |v: &[u64]| v.iter().map(|&w| algebra.element(w)).collect::<Result<Vec<_>>>();
        EPSequence::new(algebra, conv(prefix)?, conv(cycle)?)
    }

    /// The constant sequence `⟨a⟩`.
    pub fn constant(a: Element) -> Self {
        EPSequence {
            algebra: a.algebra(),
            prefix: vec![],
            cycle: vec![a],
        }
    }

    /// A prefix-free sequence whose tail support is exactly `support`.
    pub fn cycling(support: ElementSet) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::precondition("a sequence needs a nonempty tail support"));
        }
        EPSequence::new(support.algebra(), vec![], support.iter().collect())
    }

    /// Parses the literal form `[p1,p2]|[c1,c2]`.
    pub fn parse(algebra: Algebra, text: &str) -> Result<Self> {
        let (p, c) = text
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::parse(format!("expected `[..]|[..]`, got `{text}`")))?;
        let words = |part: &str| -> Result<Vec<u64>> {
            let inner = part
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::parse(format!("expected a bracketed list, got `{part}`")))?;
            inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|e| Error::parse(format!("bad element `{s}`: {e}")))
                })
                .collect()
        };
        EPSequence::from_words(algebra, &words(p)?, &words(c)?)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn prefix(&self) -> &[Element] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Element] {
        &self.cycle
    }

    /// `prefix + cycle` length of the canonical form.
    pub fn description_len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn get(&self, n: usize) -> Element {
        *at(&self.prefix, &self.cycle, n)
    }

    pub fn tail_support(&self) -> ElementSet {
        self.algebra
            .set(self.cycle.iter().fold(0u64, |acc, e| acc | 1 << e.word()))
    }

    /// Every value the sequence takes, `{x_n : n ∈ ω}`.
    pub fn range(&self) -> ElementSet {
        let bits = self
            .prefix
            .iter()
            .chain(&self.cycle)
            .fold(0u64, |acc, e| acc | 1 << e.word());
        self.algebra.set(bits)
    }

    pub fn liminf(&self) -> Element {
        self.tail_support().big_meet()
    }

    pub fn limsup(&self) -> Element {
        self.tail_support().big_join()
    }

    pub fn lim_inf_sup(&self) -> (Element, Element) {
        let ts = self.tail_support();
        (ts.big_meet(), ts.big_join())
    }

    /// The selector picking, past the prefix, exactly the positions whose
    /// value lies in `target`.
    pub fn selector_for(&self, target: ElementSet) -> Result<OmegaSet> {
        self.algebra.same(target.algebra())?;
        let ts = self.tail_support();
        if target.is_empty() || !target.is_subset(ts)? {
            return Err(Error::precondition(format!(
                "target {target:?} must be a nonempty subset of the tail support {ts:?}"
            )));
        }
        OmegaSet::new(
            vec![false; self.prefix.len()],
            self.cycle.iter().map(|&e| target.contains(e)).collect(),
        )
    }

    /// An explicit subsequence whose tail support is `target`.
    pub fn witness_subsequence(&self, target: ElementSet) -> Result<EPSequence> {
        let selector = self.selector_for(target)?;
        compose_with_enumeration(self, &selector)
    }

    /// Whether every subsequence has the same limsup.
    ///
    /// Computed over all nonempty subsets of the tail support and checked
    /// against the equivalent finite criterion `|tail support| = 1`.
    pub fn is_limsup_stable(&self) -> bool {
        let ts = self.tail_support();
        let top = ts.big_join();
        let by_subsets = ts.nonempty_subsets().all(|t| t.big_join() == top);
        let by_size = ts.len() == 1;
        assert_eq!(by_subsets, by_size, "limsup stability criteria disagree on {self}");
        by_subsets
    }

    pub fn is_liminf_stable(&self) -> bool {
        let ts = self.tail_support();
        let bottom = ts.big_meet();
        ts.nonempty_subsets().all(|t| t.big_meet() == bottom)
    }

    pub fn map(&self, f: impl Fn(Element) -> Element) -> Result<EPSequence> {
        EPSequence::new(
            self.algebra,
            self.prefix.iter().map(|&e| f(e)).collect(),
            self.cycle.iter().map(|&e| f(e)).collect(),
        )
    }

    /// Pointwise combination over the joint period.
    pub fn zip_with(
        &self,
        other: &EPSequence,
        f: impl Fn(Element, Element) -> Element,
    ) -> Result<EPSequence> {
        self.algebra.same(other.algebra)?;
        let start = self.prefix.len().max(other.prefix.len());
        let period = lcm(self.cycle.len(), other.cycle.len());
        let g = |n| f(self.get(n), other.get(n));
        EPSequence::new(
            self.algebra,
            (0..start).map(g).collect(),
            (start..start + period).map(g).collect(),
        )
    }

    /// `z` with `z_{2k} = self_k` and `z_{2k+1} = other_k`; `self` is the
    /// subsequence of `z` along the even positions.
    pub fn interleave(&self, other: &EPSequence) -> Result<EPSequence> {
        self.algebra.same(other.algebra)?;
        let start = self.prefix.len().max(other.prefix.len());
        let period = lcm(self.cycle.len(), other.cycle.len());
        let term = |k: usize| [self.get(k), other.get(k)];
        EPSequence::new(
            self.algebra,
            (0..start).flat_map(term).collect(),
            (start..start + period).flat_map(term).collect(),
        )
    }
}
