//! Boolean values of statements about the name `τ_x` over `P(n)`.
//!
//! Below an atom `a` the generic filter is the principal ultrafilter at `a`,
//! so `τ_x` evaluates to the *trace* `{n : a <= x_n}` and the value of a
//! statement `φ(τ_x)` is the join of the atoms whose trace satisfies `φ`.
//! Forcing with `P(n)` adds no sets: every trace lies in the ground model,
//! hence "old" quantifiers are satisfied by the trace itself and no ground
//! set is split by a new real. With that reading `b_1 = b_2 = b_3 = b_4`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::omega::{compose_with_enumeration, OmegaSet};
use crate::periodic::lcm;
use crate::sequence::EPSequence;

/// `{n : atom <= x_n}`.
pub fn atom_trace(x: &EPSequence, atom: Element) -> Result<OmegaSet> {
    x.algebra().same(atom.algebra())?;
    if !atom.is_atom() {
        return Err(Error::precondition(format!("{atom} is not an atom")));
    }
    let below = |e: &Element| e.word() & atom.word() != 0;
    OmegaSet::new(
        x.prefix().iter().map(below).collect(),
        x.cycle().iter().map(below).collect(),
    )
}

pub fn traces(x: &EPSequence) -> Vec<(Element, OmegaSet)> {
    x.algebra()
        .atom_elements()
        .map(|a| (a, atom_trace(x, a).expect("atom of the same algebra")))
        .collect()
}

/// Join of the atoms whose trace satisfies `holds`.
pub fn value_of(x: &EPSequence, holds: impl Fn(&OmegaSet) -> bool) -> Element {
    let algebra = x.algebra();
    let word = traces(x)
        .into_iter()
        .filter(|(_, t)| holds(t))
        .fold(0, |acc, (a, _)| acc | a.word());
    algebra.element(word).expect("join of atoms")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statement {
    /// `|τ_x| = ω`
    Infinite,
    /// `ω ⊂* τ_x`
    Cofinite,
}

pub fn boolean_value(x: &EPSequence, statement: Statement) -> Element {
    match statement {
        Statement::Infinite => value_of(x, OmegaSet::is_infinite),
        Statement::Cofinite => value_of(x, OmegaSet::is_cofinite),
    }
}

/// A trace always belongs to the ground model under atomic forcing.
fn is_ground_set(_trace: &OmegaSet) -> bool {
    true
}

/// No ground-model set is split by a real that is itself in the ground model
/// of an atomic extension; "non-splitting" is not given a general meaning here.
fn is_non_splitting(_trace: &OmegaSet) -> bool {
    true
}

/// `(b_0, …, b_4)`, each computed atom by atom from its own predicate.
pub fn b_values(x: &EPSequence) -> [Element; 5] {
    [
        // cofinite
        value_of(x, OmegaSet::is_cofinite),
        // old infinite
        value_of(x, |t| t.is_infinite() && is_ground_set(t)),
        // contains an old infinite subset: the trace itself, when infinite
        value_of(x, |t| t.is_infinite() && is_ground_set(t)),
        // infinite and non-splitting
        value_of(x, |t| t.is_infinite() && is_non_splitting(t)),
        // infinite
        value_of(x, OmegaSet::is_infinite),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxBx {
    pub a_x: u64,
    pub b_x: u64,
    /// `b_x` through the subsequence display `⋁_{y≺x} ⋀_{z≺y} ⋁_m z_m`.
    pub b_x_by_subsequences: u64,
}

/// `a_x` and `b_x` with the quantifiers over infinite `A`, `B ⊆ A`
/// (and over `y ≺ x`, `z ≺ y`) ranging over explicit witness subsequences,
/// one per nonempty subset of the tail support.
pub fn ax_bx(x: &EPSequence) -> Result<AxBx> {
    let algebra = x.algebra();
    let ts = x.tail_support();
    let top = algebra.top().word();
    let mut a_x = top;
    let mut b_x = 0u64;
    let mut b_alt = 0u64;
    for t in ts.nonempty_subsets() {
        // A ↦ the positions realizing t
        let y = x.witness_subsequence(t)?;
        let mut inner_join_of_meets = 0u64;
        let mut inner_meet_of_joins = top;
        let mut inner_meet_of_sups = top;
        for u in t.nonempty_subsets() {
            // B ⊆ A ↦ the positions of y realizing u
            let z = y.witness_subsequence(u)?;
            let range = z.range();
            inner_join_of_meets |= range.big_meet().word();
            inner_meet_of_joins &= range.big_join().word();
            inner_meet_of_sups &= (0..z.description_len())
                .map(|m| z.get(m).word())
                .fold(0, |acc, w| acc | w);
        }
        a_x &= inner_join_of_meets;
        b_x |= inner_meet_of_joins;
        b_alt |= inner_meet_of_sups;
    }
    Ok(AxBx {
        a_x,
        b_x,
        b_x_by_subsequences: b_alt,
    })
}

/// `‖|τ_x ∩ Ǎ| = ω‖` as `limsup x ∘ f_A`.
pub fn intersection_infinite_value(x: &EPSequence, a: &OmegaSet) -> Result<Element> {
    Ok(compose_with_enumeration(x, a)?.limsup())
}

/// `‖|τ_x ∩ Ǎ| = ω‖` as the join of atoms whose trace meets `A` infinitely.
pub fn intersection_infinite_value_by_atoms(x: &EPSequence, a: &OmegaSet) -> Result<Element> {
    if !a.is_infinite() {
        return Err(Error::precondition(format!("{a:?} is finite")));
    }
    Ok(value_of(x, |t| t.intersection(a).is_infinite()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroLimsupForms {
    /// `∀y≺x ∃z≺y limsup z = 0`
    pub subsequence_form: bool,
    /// `∀A ∃B ⊆ A ‖|τ_x ∩ B̌| = ω‖ = 0` over the examined sets.
    pub name_form: bool,
    pub sets_examined: usize,
}

impl ZeroLimsupForms {
    pub fn agree(&self) -> bool {
        self.subsequence_form == self.name_form
    }
}

/// Largest number of `A`-positions in one joint period whose subsets are all
/// tried as `B`; past it only single residues are tried.
const MAX_RESIDUES: usize = 12;

/// Evaluates both sides of the zero-limsup equivalence.
///
/// The name form ranges over the infinite sets among `samples`, plus the
/// selectors of every single tail value of `x` (each `∀A` must also survive
/// those). For each `A`, `B` ranges over the subsets of `A` obtained by
/// keeping a nonempty set of residues of `A` in the joint period of `A` and
/// `x`.
pub fn zero_limsup_forms(x: &EPSequence, samples: &[OmegaSet]) -> Result<ZeroLimsupForms> {
    let algebra = x.algebra();
    let ts = x.tail_support();
    let subsequence_form = ts
        .nonempty_subsets()
        .map(|t| -> Result<bool> {
            let y = x.witness_subsequence(t)?;
            for u in t.nonempty_subsets() {
                if y.witness_subsequence(u)?.limsup().is_bottom() {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    let mut sets: Vec<OmegaSet> = samples.iter().filter(|a| a.is_infinite()).cloned().collect();
    for v in ts.iter() {
        sets.push(x.selector_for(algebra.singleton(v)?)?);
    }
    let mut name_form = true;
    for a in &sets {
        if !exists_null_subset(x, a) {
            name_form = false;
            break;
        }
    }
    Ok(ZeroLimsupForms {
        subsequence_form,
        name_form,
        sets_examined: sets.len(),
    })
}

fn exists_null_subset(x: &EPSequence, a: &OmegaSet) -> bool {
    let start = x.prefix().len().max(a.prefix().len());
    let period = lcm(x.cycle().len(), a.cycle().len());
    let offsets: Vec<usize> = (0..period).filter(|&j| a.contains(start + j)).collect();
    let candidate = |chosen: &[usize]| {
        let mut cycle = vec![false; period];
        for &j in chosen {
            cycle[j] = true;
        }
        OmegaSet::new(vec![false; start], cycle).expect("nonempty cycle")
    };
    let null = |b: &OmegaSet| value_of(x, |t| t.intersection(b).is_infinite()).is_bottom();
    if offsets.len() > MAX_RESIDUES {
        return offsets.iter().any(|&j| null(&candidate(&[j])));
    }
    (1u64..1 << offsets.len()).any(|mask| {
        let chosen: Vec<usize> = offsets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &j)| j)
            .collect();
        null(&candidate(&chosen))
    })
}

/// Per-sequence report of the forcing values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingReport {
    pub b: [u64; 5],
    pub ax: u64,
    pub bx: u64,
    pub liminf: u64,
    pub limsup: u64,
    /// Keyed by atom word.
    pub traces: BTreeMap<String, OmegaSet>,
}

pub fn forcing_report(x: &EPSequence) -> Result<ForcingReport> {
    let ab = ax_bx(x)?;
    Ok(ForcingReport {
        b: b_values(x).map(Element::word),
        ax: ab.a_x,
        bx: ab.b_x,
        liminf: x.liminf().word(),
        limsup: x.limsup().word(),
        traces: traces(x)
            .into_iter()
            .map(|(a, t)| (a.word().to_string(), t))
            .collect(),
    })
}

/// Atoms whose trace is infinite, as a set; used by the cube checks.
pub fn infinite_atoms(x: &EPSequence) -> ElementSet {
    x.algebra().set(
        traces(x)
            .into_iter()
            .filter(|(_, t)| t.is_infinite())
            .fold(0, |acc, (a, _)| acc | 1 << a.word()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    const A: u64 = 0b01;
    const B: u64 = 0b10;

    fn seq(pre: &[u64], cyc: &[u64]) -> EPSequence {
        EPSequence::from_words(Algebra::new(2).unwrap(), pre, cyc).unwrap()
    }

    fn atom(w: u64) -> Element {
        Algebra::new(2).unwrap().element(w).unwrap()
    }

    #[test]
    fn trace_examples() {
        assert_eq!(atom_trace(&seq(&[], &[A, B]), atom(A)).unwrap(), OmegaSet::evens());
        assert_eq!(atom_trace(&seq(&[], &[3]), atom(B)).unwrap(), OmegaSet::all());
        assert_eq!(atom_trace(&seq(&[], &[0]), atom(A)).unwrap(), OmegaSet::empty());
        assert!(atom_trace(&seq(&[], &[0]), atom(3)).is_err());
    }

    #[test]
    fn boolean_value_examples() {
        let x = seq(&[], &[A, B]);
        assert_eq!(boolean_value(&x, Statement::Infinite).word(), 3);
        assert_eq!(boolean_value(&x, Statement::Cofinite).word(), 0);
        let c = seq(&[], &[A]);
        assert_eq!(boolean_value(&c, Statement::Infinite).word(), A);
        assert_eq!(boolean_value(&c, Statement::Cofinite).word(), A);
        assert!(boolean_value(&seq(&[], &[0]), Statement::Infinite).is_bottom());
    }

    #[test]
    fn b_value_examples() {
        let w = |x: &EPSequence| b_values(x).map(Element::word);
        assert_eq!(w(&seq(&[], &[A, B])), [0, 3, 3, 3, 3]);
        assert_eq!(w(&seq(&[], &[A])), [A; 5]);
        assert_eq!(w(&seq(&[], &[3])), [3; 5]);
    }

    #[test]
    fn ax_bx_examples() {
        let r = ax_bx(&seq(&[], &[A, B])).unwrap();
        assert_eq!((r.a_x, r.b_x, r.b_x_by_subsequences), (0, 3, 3));
        let r = ax_bx(&seq(&[], &[A])).unwrap();
        assert_eq!((r.a_x, r.b_x), (A, A));
        let r = ax_bx(&seq(&[3], &[B])).unwrap();
        assert_eq!((r.a_x, r.b_x, r.b_x_by_subsequences), (B, B, B));
    }

    #[test]
    fn intersection_value_examples() {
        let x = seq(&[], &[A, B]);
        for (set, want) in [(OmegaSet::evens(), A), (OmegaSet::odds(), B)] {
            assert_eq!(intersection_infinite_value(&x, &set).unwrap().word(), want);
            assert_eq!(intersection_infinite_value_by_atoms(&x, &set).unwrap().word(), want);
        }
        let t = seq(&[], &[3]);
        assert!(intersection_infinite_value(&t, &OmegaSet::odds()).unwrap().is_top());
        assert!(intersection_infinite_value(&x, &OmegaSet::empty()).is_err());
        assert!(intersection_infinite_value_by_atoms(&x, &OmegaSet::empty()).is_err());
    }

    #[test]
    fn zero_limsup_forms_examples() {
        let samples = [OmegaSet::evens(), OmegaSet::all()];
        let r = zero_limsup_forms(&seq(&[], &[0]), &samples).unwrap();
        assert!(r.subsequence_form && r.name_form);
        let r = zero_limsup_forms(&seq(&[], &[A, B]), &samples).unwrap();
        assert!(!r.subsequence_form && !r.name_form);
        let r = zero_limsup_forms(&seq(&[A], &[0]), &samples).unwrap();
        assert!(r.subsequence_form && r.name_form);
        // ⊥ recurs but so does a: the selector of a defeats the name form
        let r = zero_limsup_forms(&seq(&[], &[0, A]), &[OmegaSet::all()]).unwrap();
        assert!(!r.subsequence_form && !r.name_form && r.agree());
    }

    #[test]
    fn report_json_shape() {
        let r = forcing_report(&seq(&[], &[A, B])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["b"], serde_json::json!([0, 3, 3, 3, 3]));
        assert_eq!(v["traces"]["1"], serde_json::json!({"prefix": [], "cycle": [1, 0]}));
        assert_eq!(v["traces"]["2"], serde_json::json!({"prefix": [], "cycle": [0, 1]}));
    }
}
