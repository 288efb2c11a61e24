//! Convergences on `P(n)` and their order-theoretic checks.
//!
//! Every convergence here is evaluated on explicit [`EPSequence`]s. Values
//! depend only on the tail support, which lets the quantifiers over all
//! subsequences run over the nonempty subsets of that support; the
//! [`SupportTable`] evaluates the same convergences directly on supports and
//! serves as the second route for every check.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Caps, Element, ElementSet};
use crate::error::{Error, Result};
use crate::forcing::b_values;
use crate::kernel::{self, Compressor};
use crate::sequence::EPSequence;
use crate::topology::FiniteTopology;
use crate::verdict::{scan, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Convergence {
    /// `{x}` when liminf = limsup = x, otherwise empty.
    LambdaS,
    /// `(limsup x)↑`
    LambdaLS,
    /// `(liminf x)↓`
    LambdaLI,
    /// `{b_4(x)}` when `b_i(x) = b_4(x)`, otherwise empty; `i` in `0..=4`.
    LambdaI(u8),
    /// Closure under (L3).
    Star(Box<Convergence>),
    /// Closure under (L2): the union of the values on all supersequences.
    Bar(Box<Convergence>),
    /// Pointwise intersection.
    Meet(Box<Convergence>, Box<Convergence>),
    /// Limits in a stored topology.
    LimOf(Arc<FiniteTopology>),
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convergence::LambdaS => write!(f, "s"),
            Convergence::LambdaLS => write!(f, "ls"),
            Convergence::LambdaLI => write!(f, "li"),
            Convergence::LambdaI(i) => write!(f, "l{i}"),
            Convergence::Star(c) => write!(f, "star:{c}"),
            Convergence::Bar(c) => write!(f, "bar:{c}"),
            Convergence::Meet(a, b) => write!(f, "meet:{a},{b}"),
            Convergence::LimOf(t) => write!(f, "lim:{}", t.label()),
        }
    }
}

impl Convergence {
    pub fn lambda(i: u8) -> Result<Self> {
        if i > 4 {
            return Err(Error::structural(format!("lambda index must be 0..=4, got {i}")));
        }
        Ok(Convergence::LambdaI(i))
    }

    pub fn star(inner: Convergence) -> Self {
        Convergence::Star(Box::new(inner))
    }

    /// Star closure after confirming (L1) and (L2) for `inner` on `corpus`.
    pub fn star_checked(inner: Convergence, algebra: Algebra, corpus: &[EPSequence]) -> Result<Self> {
        let report = check_axioms(&inner, algebra, corpus)?;
        if !(report.l1.holds && report.l2.holds) {
            return Err(Error::precondition(format!(
                "star closure needs (L1) and (L2); {inner} fails {}",
                if report.l1.holds { "(L2)" } else { "(L1)" }
            )));
        }
        Ok(Convergence::star(inner))
    }

    pub fn bar(inner: Convergence) -> Self {
        Convergence::Bar(Box::new(inner))
    }

    pub fn meet(left: Convergence, right: Convergence) -> Self {
        Convergence::Meet(Box::new(left), Box::new(right))
    }

    pub fn lim_of(t: FiniteTopology) -> Self {
        Convergence::LimOf(Arc::new(t))
    }

    /// Parses the CLI names `s | ls | li | l0..l4 | star:<c> | bar:<c> |
    /// meet:<c>,<c> | lim:<path>`; `load` resolves topology paths.
    pub fn parse(text: &str, load: &mut dyn FnMut(&str) -> Result<FiniteTopology>) -> Result<Self> {
        let (c, rest) = parse_prefix(text.trim(), load)?;
        if !rest.is_empty() {
            return Err(Error::parse(format!("trailing input `{rest}` in convergence `{text}`")));
        }
        Ok(c)
    }

    /// Value on one sequence.
    pub fn eval(&self, x: &EPSequence) -> Result<ElementSet> {
        let algebra = x.algebra();
        match self {
            Convergence::LambdaS => {
                let (inf, sup) = x.lim_inf_sup();
                Ok(if inf == sup {
                    algebra.singleton(sup)?
                } else {
                    algebra.empty_set()
                })
            }
            Convergence::LambdaLS => Ok(x.limsup().up()),
            Convergence::LambdaLI => Ok(x.liminf().down()),
            Convergence::LambdaI(i) => {
                let b = b_values(x);
                let i = *i as usize;
                if i > 4 {
                    return Err(Error::structural(format!("lambda index {i} out of range")));
                }
                Ok(if b[i] == b[4] {
                    algebra.singleton(b[4])?
                } else {
                    algebra.empty_set()
                })
            }
            Convergence::Meet(a, b) => a.eval(x)?.intersection(b.eval(x)?),
            Convergence::LimOf(t) => t.lim(x),
            Convergence::Star(inner) => star_eval(inner, x),
            Convergence::Bar(inner) => bar_eval(inner, x),
        }
    }

    /// Value on the canonical prefix-free sequence with the given support.
    pub fn eval_support(&self, support: ElementSet) -> Result<ElementSet> {
        self.eval(&EPSequence::cycling(support)?)
    }
}

fn parse_prefix<'a>(
    s: &'a str,
    load: &mut dyn FnMut(&str) -> Result<FiniteTopology>,
) -> Result<(Convergence, &'a str)> {
    if let Some(rest) = s.strip_prefix("star:") {
        let (c, rest) = parse_prefix(rest, load)?;
        return Ok((Convergence::star(c), rest));
    }
    if let Some(rest) = s.strip_prefix("bar:") {
        let (c, rest) = parse_prefix(rest, load)?;
        return Ok((Convergence::bar(c), rest));
    }
    if let Some(rest) = s.strip_prefix("meet:") {
        let (a, rest) = parse_prefix(rest, load)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::parse("meet needs two comma-separated operands"))?;
        let (b, rest) = parse_prefix(rest, load)?;
        return Ok((Convergence::meet(a, b), rest));
    }
    if let Some(rest) = s.strip_prefix("lim:") {
        let end = rest.find(',').unwrap_or(rest.len());
        let path = &rest[..end];
        if path.is_empty() {
            return Err(Error::parse("lim needs a topology file"));
        }
        return Ok((Convergence::lim_of(load(path)?), &rest[end..]));
    }
    let end = s.find(',').unwrap_or(s.len());
    let (name, rest) = (&s[..end], &s[end..]);
    let c = match name {
        "s" => Convergence::LambdaS,
        "ls" => Convergence::LambdaLS,
        "li" => Convergence::LambdaLI,
        "l0" | "l1" | "l2" | "l3" | "l4" => Convergence::LambdaI(name.as_bytes()[1] - b'0'),
        other => return Err(Error::parse(format!("unknown convergence `{other}`"))),
    };
    Ok((c, rest))
}

/// Inner values on the witness subsequences of every nonempty subset of the
/// tail support, densely indexed.
fn sub_support_values(inner: &Convergence, x: &EPSequence) -> Result<(Compressor, Vec<u64>)> {
    let ts = x.tail_support();
    let comp = Compressor::new(ts.bits());
    let algebra = x.algebra();
    let mut values = vec![0u64; 1 << comp.width()];
    for (dense, slot) in values.iter_mut().enumerate().skip(1) {
        let target = algebra.set_from_bits(comp.expand(dense))?;
        *slot = inner.eval(&x.witness_subsequence(target)?)?.bits();
    }
    Ok((comp, values))
}

/// `⋂_{∅≠T⊆ts(x)} ⋃_{∅≠U⊆T} λ(witness(x, U))`
fn star_eval(inner: &Convergence, x: &EPSequence) -> Result<ElementSet> {
    let algebra = x.algebra();
    let (_, values) = sub_support_values(inner, x)?;
    let star = kernel::star_transform(&values, algebra.carrier_bits());
    algebra.set_from_bits(*star.last().expect("nonempty table"))
}

/// `⋃ λ(z)` over supersequences `z` of `x`; one per superset of the support,
/// built by interleaving `x` with the missing values.
fn bar_eval(inner: &Convergence, x: &EPSequence) -> Result<ElementSet> {
    let algebra = x.algebra();
    let ts = x.tail_support();
    let missing = ts.set_complement();
    let mut acc = inner.eval(x)?;
    for extra in missing.nonempty_subsets() {
        let z = x.interleave(&EPSequence::cycling(extra)?)?;
        acc = acc.union(inner.eval(&z)?)?;
    }
    debug_assert_eq!(acc.algebra(), algebra);
    Ok(acc)
}

/// A convergence evaluated on every nonempty subset of the carrier, indexed
/// by the characteristic word of the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTable {
    algebra: Algebra,
    values: Vec<u64>,
}

impl SupportTable {
    /// Builds the table from support-level formulas, without sequences.
    pub fn build(c: &Convergence, algebra: Algebra, caps: &Caps) -> Result<Self> {
        caps.check_working(algebra, "support table")?;
        let len = 1usize << algebra.size();
        let full = algebra.carrier_bits();
        let bits_of = |s: usize| s as u64;
        let by_support = |f: &dyn Fn(ElementSet) -> u64| -> Vec<u64> {
            (0..len)
                .map(|s| if s == 0 { 0 } else { f(algebra.set(bits_of(s))) })
                .collect()
        };
        let values = match c {
            Convergence::LambdaS => by_support(&|t| {
                let (i, s) = (t.big_meet(), t.big_join());
                if i == s {
                    1 << s.word()
                } else {
                    0
                }
            }),
            Convergence::LambdaLS => by_support(&|t| t.big_join().up().bits()),
            Convergence::LambdaLI => by_support(&|t| t.big_meet().down().bits()),
            Convergence::LambdaI(i) => {
                let i = *i;
                if i > 4 {
                    return Err(Error::structural(format!("lambda index {i} out of range")));
                }
                // b_0 = meet, b_1..b_4 = join over an atomic algebra
                by_support(&move |t| {
                    let b4 = t.big_join();
                    let bi = if i == 0 { t.big_meet() } else { b4 };
                    if bi == b4 {
                        1 << b4.word()
                    } else {
                        0
                    }
                })
            }
            Convergence::Meet(a, b) => {
                let ta = SupportTable::build(a, algebra, caps)?;
                let tb = SupportTable::build(b, algebra, caps)?;
                ta.values.iter().zip(&tb.values).map(|(x, y)| x & y).collect()
            }
            Convergence::Star(inner) => {
                let t = SupportTable::build(inner, algebra, caps)?;
                kernel::star_transform(&t.values, full)
            }
            Convergence::Bar(inner) => {
                let t = SupportTable::build(inner, algebra, caps)?;
                kernel::superset_union(&t.values)
            }
            Convergence::LimOf(topology) => {
                algebra.same(topology.algebra())?;
                by_support(&|t| topology.lim_support(t).bits())
            }
        };
        let mut values = values;
        values[0] = 0;
        Ok(SupportTable { algebra, values })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn get(&self, support: ElementSet) -> ElementSet {
        self.algebra.set(self.values[support.bits() as usize])
    }

    pub fn raw(&self) -> &[u64] {
        &self.values
    }

    /// `u_λ(A)` for every `A ⊆ X`: the union of values over nonempty supports inside `A`.
    pub fn closure_table(&self) -> Vec<u64> {
        kernel::subset_union(&self.values)
    }

    /// (L1): `a ∈ λ(⟨a⟩)` for every point.
    pub fn l1(&self) -> Verdict {
        let bad = self
            .algebra
            .elements()
            .find(|a| self.values[1usize << a.word()] & (1 << a.word()) == 0);
        Verdict::from_option(
            self.algebra.size(),
            bad.map(|a| Witness::sequence(&EPSequence::constant(a), "a ∉ λ(⟨a⟩)").with_elements(vec![a.word()])),
        )
    }

    /// (L2): `λ(T) ⊆ λ(U)` whenever `∅ ≠ U ⊆ T`.
    pub fn l2(&self) -> Verdict {
        let below = kernel::subset_intersection(&self.values, self.algebra.carrier_bits());
        self.first_support(|s| self.values[s] & !below[s] != 0, "λ shrinks on a sub-support")
    }

    /// (L3): `λ* ≤ λ`.
    pub fn l3(&self) -> Verdict {
        let star = kernel::star_transform(&self.values, self.algebra.carrier_bits());
        self.first_support(|s| star[s] & !self.values[s] != 0, "λ* exceeds λ")
    }

    pub fn hausdorff(&self) -> Verdict {
        self.first_support(|s| self.values[s].count_ones() > 1, "more than one limit")
    }

    fn first_support(&self, bad: impl Fn(usize) -> bool, note: &str) -> Verdict {
        let n = self.values.len();
        let hit = (1..n).find(|&s| bad(s));
        Verdict::from_option(
            n - 1,
            hit.map(|s| {
                let support = self.algebra.set(s as u64);
                Witness::sequence(&EPSequence::cycling(support).expect("nonempty"), note)
            }),
        )
    }
}

/// `c1 ≤ c2` on the corpus.
pub fn convergence_le(c1: &Convergence, c2: &Convergence, corpus: &[EPSequence]) -> Result<Verdict> {
    scan(corpus, |x| {
        let (a, b) = (c1.eval(x)?, c2.eval(x)?);
        Ok((!a.is_subset(b)?).then(|| {
            let extra = a.intersection(b.set_complement()).expect("same algebra");
            Witness::sequence(x, format!("{c1} has limits outside {c2}")).with_elements(extra.to_words())
        }))
    })
}

/// Pointwise equality on the corpus.
pub fn convergence_eq(c1: &Convergence, c2: &Convergence, corpus: &[EPSequence]) -> Result<Verdict> {
    scan(corpus, |x| {
        let (a, b) = (c1.eval(x)?, c2.eval(x)?);
        Ok((a != b).then(|| {
            Witness::sequence(x, format!("{c1} gives {a:?}, {c2} gives {b:?}"))
        }))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AxiomReport {
    pub l1: Verdict,
    pub l2: Verdict,
    pub l3: Verdict,
    pub hausdorff: Verdict,
}

/// (L1) over all points; (L2), (L3) and the Hausdorff property over the corpus.
pub fn check_axioms(c: &Convergence, algebra: Algebra, corpus: &[EPSequence]) -> Result<AxiomReport> {
    let points: Vec<Element> = algebra.elements().collect();
    let l1 = scan(&points, |&a| {
        let x = EPSequence::constant(a);
        Ok((!c.eval(&x)?.contains(a)).then(|| Witness::sequence(&x, "a ∉ λ(⟨a⟩)").with_elements(vec![a.word()])))
    })?;
    let l2 = scan(corpus, |x| {
        let here = c.eval(x)?;
        for t in x.tail_support().nonempty_subsets() {
            let y = x.witness_subsequence(t)?;
            let there = c.eval(&y)?;
            if !here.is_subset(there)? {
                let lost = here.intersection(there.set_complement())?;
                return Ok(Some(
                    Witness::sequence(x, format!("limits lost on subsequence {y}")).with_elements(lost.to_words()),
                ));
            }
        }
        Ok(None)
    })?;
    // (L3) in contrapositive form: a point of λ*(x) outside λ(x)
    let l3 = scan(corpus, |x| {
        let star = star_eval(c, x)?;
        let here = c.eval(x)?;
        let extra = star.intersection(here.set_complement())?;
        Ok((!extra.is_empty()).then(|| Witness::sequence(x, "λ*(x) ⊄ λ(x)").with_elements(extra.to_words())))
    })?;
    let hausdorff = scan(corpus, |x| {
        let v = c.eval(x)?;
        Ok((v.len() > 1).then(|| Witness::sequence(x, "more than one limit").with_elements(v.to_words())))
    })?;
    Ok(AxiomReport {
        l1,
        l2,
        l3,
        hausdorff,
    })
}
