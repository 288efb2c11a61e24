//! Finite topologies on the carrier of `P(n)` and the sequential topology
//! `O_λ` generated by a convergence.
//!
//! Every topology on a finite set is Alexandrov: it is determined by the
//! point closures `cl{b}`, and `a` is a limit of `x` iff the minimal open
//! neighbourhood of `a` contains the tail support of `x`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, BitIter, Caps, ElementSet, SubsetIter};
use crate::convergence::{check_axioms, Convergence, SupportTable};
use crate::error::{Error, Result};
use crate::sequence::EPSequence;
use crate::verdict::{scan, Verdict, Witness};

/// Carriers above this many atoms are not enumerated.
pub const TOPOLOGY_MAX_ATOMS: u8 = 4;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TopologyRepr", into = "TopologyRepr")]
pub struct FiniteTopology {
    algebra: Algebra,
    label: String,
    /// Closed sets by characteristic word, ascending.
    closed: Vec<u64>,
    /// `cl{b}` per point.
    point_closure: Vec<u64>,
    /// `{b : a ∈ cl{b}}`, the least open set containing `a`.
    min_open: Vec<u64>,
}

impl PartialEq for FiniteTopology {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.closed == other.closed
    }
}

impl Eq for FiniteTopology {}

#[derive(Serialize, Deserialize)]
struct TopologyRepr {
    algebra: Algebra,
    closed_sets: Vec<Vec<u64>>,
}

impl TryFrom<TopologyRepr> for FiniteTopology {
    type Error = Error;
    fn try_from(r: TopologyRepr) -> Result<Self> {
        let sets = r
            .closed_sets
            .into_iter()
            .map(|words| r.algebra.set_from_words(words))
            .collect::<Result<Vec<_>>>()?;
        FiniteTopology::from_closed_sets(r.algebra, sets)
    }
}

impl From<FiniteTopology> for TopologyRepr {
    fn from(t: FiniteTopology) -> Self {
        TopologyRepr {
            algebra: t.algebra,
            closed_sets: t.closed.iter().map(|&b| BitIter(b).collect()).collect(),
        }
    }
}

fn check_size(algebra: Algebra) -> Result<()> {
    if algebra.atoms() > TOPOLOGY_MAX_ATOMS {
        return Err(Error::ResourceCap {
            what: "finite topology",
            cap: TOPOLOGY_MAX_ATOMS,
            requested: algebra.atoms(),
        });
    }
    Ok(())
}

impl FiniteTopology {
    /// Validates that `sets` is closed under finite unions and intersections
    /// and contains `∅` and the carrier.
    pub fn from_closed_sets<I: IntoIterator<Item = ElementSet>>(algebra: Algebra, sets: I) -> Result<Self> {
        check_size(algebra)?;
        let mut closed = Vec::new();
        for s in sets {
            algebra.same(s.algebra())?;
            closed.push(s.bits());
        }
        closed.sort_unstable();
        closed.dedup();
        let full = algebra.carrier_bits();
        let point_closure: Vec<u64> = (0..algebra.size())
            .map(|b| {
                closed
                    .iter()
                    .filter(|&&f| f & (1 << b) != 0)
                    .fold(full, |acc, &f| acc & f)
            })
            .collect();
        let t = FiniteTopology::from_point_closures(algebra, point_closure)?;
        if t.closed != closed {
            let missing = t
                .closed
                .iter()
                .find(|f| closed.binary_search(f).is_err())
                .or_else(|| closed.iter().find(|f| t.closed.binary_search(f).is_err()))
                .copied()
                .unwrap_or(0);
            return Err(Error::structural(format!(
                "family is not closed under finite unions and intersections (see {:?})",
                algebra.set(missing)
            )));
        }
        Ok(t)
    }

    /// The sets that contain `cl{b}` for each of their points.
    fn from_point_closures(algebra: Algebra, point_closure: Vec<u64>) -> Result<Self> {
        let n = algebra.size();
        for (b, &c) in point_closure.iter().enumerate() {
            if c & (1 << b) == 0 {
                return Err(Error::structural(format!("point closure of {b} misses {b}")));
            }
        }
        let closed: Vec<u64> = (0..=algebra.carrier_bits())
            .filter(|&a| BitIter(a).all(|b| point_closure[b as usize] & !a == 0))
            .collect();
        let min_open = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| point_closure[b] & (1 << a) != 0)
                    .fold(0u64, |acc, b| acc | 1 << b)
            })
            .collect();
        Ok(FiniteTopology {
            algebra,
            label: "topology".into(),
            closed,
            point_closure,
            min_open,
        })
    }

    /// The topology whose open sets are exactly `opens` (validated).
    pub fn from_open_sets<I: IntoIterator<Item = ElementSet>>(algebra: Algebra, opens: I) -> Result<Self> {
        let opens: Vec<ElementSet> = opens.into_iter().collect();
        FiniteTopology::from_closed_sets(algebra, opens.into_iter().map(ElementSet::set_complement))
    }

    pub fn discrete(algebra: Algebra) -> Result<Self> {
        check_size(algebra)?;
        let pc = (0..algebra.size()).map(|b| 1u64 << b).collect();
        Ok(FiniteTopology::from_point_closures(algebra, pc)?.with_label("discrete"))
    }

    pub fn indiscrete(algebra: Algebra) -> Result<Self> {
        check_size(algebra)?;
        let pc = vec![algebra.carrier_bits(); algebra.size()];
        Ok(FiniteTopology::from_point_closures(algebra, pc)?.with_label("indiscrete"))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    /// Number of closed (equivalently, open) sets.
    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn closed_sets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.closed.iter().map(|&b| self.algebra.set(b))
    }

    pub fn open_sets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.closed_sets().map(ElementSet::set_complement)
    }

    pub fn is_closed(&self, a: ElementSet) -> bool {
        a.algebra() == self.algebra && self.closed.binary_search(&a.bits()).is_ok()
    }

    pub fn is_open(&self, a: ElementSet) -> bool {
        self.is_closed(a.set_complement())
    }

    /// Least closed superset.
    pub fn closure(&self, a: ElementSet) -> Result<ElementSet> {
        self.algebra.same(a.algebra())?;
        let bits = BitIter(a.bits()).fold(0, |acc, b| acc | self.point_closure[b as usize]);
        Ok(self.algebra.set(bits))
    }

    /// Least open set containing the point with word `a`.
    pub fn min_open(&self, a: u64) -> ElementSet {
        self.algebra.set(self.min_open[a as usize])
    }

    pub fn point_closure(&self, b: u64) -> ElementSet {
        self.algebra.set(self.point_closure[b as usize])
    }

    /// Limits of any sequence with this tail support.
    pub fn lim_support(&self, support: ElementSet) -> ElementSet {
        let t = support.bits();
        let bits = (0..self.algebra.size())
            .filter(|&a| t & !self.min_open[a] == 0)
            .fold(0u64, |acc, a| acc | 1 << a);
        self.algebra.set(bits)
    }

    /// `lim_O(x)`: points every neighbourhood of which holds a tail of `x`.
    pub fn lim(&self, x: &EPSequence) -> Result<ElementSet> {
        self.algebra.same(x.algebra())?;
        Ok(self.lim_support(x.tail_support()))
    }

    /// Whether every open set of `self` is open in `other`.
    pub fn opens_within(&self, other: &FiniteTopology) -> bool {
        self.algebra == other.algebra && self.closed.iter().all(|f| other.closed.binary_search(f).is_ok())
    }

    /// Specialization preorder without loops: `a → b` iff `a ∈ cl{b}`.
    pub fn specialization_edges(&self) -> Vec<(u64, u64)> {
        let n = self.algebra.size() as u64;
        let mut edges = Vec::new();
        for b in 0..n {
            for a in BitIter(self.point_closure[b as usize]) {
                if a != b {
                    edges.push((a, b));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph specialization {{");
        let width = self.algebra.atoms() as usize;
        for e in 0..self.algebra.size() {
            let _ = writeln!(out, "  n{e} [label=\"{e:0width$b}\"];");
        }
        for (a, b) in self.specialization_edges() {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// `u_λ(A)` as the union of `λ` over explicit sequences with values in `A`,
/// one per nonempty support inside `A`.
pub fn sequential_closure_step(c: &Convergence, a: ElementSet) -> Result<ElementSet> {
    let mut acc = a.algebra().empty_set();
    for t in a.nonempty_subsets() {
        acc = acc.union(c.eval(&EPSequence::cycling(t)?)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fixpoint {
    pub closure: ElementSet,
    /// Applications of `u_λ` until the value repeated.
    pub rounds: usize,
}

/// Iterates `u_λ` from `A ∪ u_λ(A)` until it stabilizes.
pub fn closure_fixpoint(c: &Convergence, a: ElementSet) -> Result<Fixpoint> {
    let limit = a.algebra().size() + 1;
    let mut cur = a;
    for round in 1..=limit + 1 {
        let next = sequential_closure_step(c, cur)?.union(cur)?;
        if next == cur {
            return Ok(Fixpoint { closure: cur, rounds: round });
        }
        cur = next;
    }
    Err(Error::structural(format!("u_λ failed to stabilize within {limit} rounds")))
}

/// Closed route: the closed sets of `O_λ` are the fixed points of `u_λ`.
/// Requires (L1) and (L2), checked on the support table.
pub fn generate_sequential_topology(c: &Convergence, algebra: Algebra, caps: &Caps) -> Result<FiniteTopology> {
    caps.check_working(algebra, "sequential topology")?;
    let table = SupportTable::build(c, algebra, caps)?;
    let (l1, l2) = (table.l1(), table.l2());
    if !(l1.holds && l2.holds) {
        return Err(Error::precondition(format!(
            "closed-set generation needs (L1) and (L2); {c} fails {}",
            if l1.holds { "(L2)" } else { "(L1)" }
        )));
    }
    let u = table.closure_table();
    let closed = (0..u.len()).filter(|&s| u[s] == s as u64).map(|s| algebra.set(s as u64));
    Ok(FiniteTopology::from_closed_sets(algebra, closed)?.with_label(format!("O({c})")))
}

/// Open route: `O` is open iff every support whose limits meet `O` lies in `O`.
/// Valid for every convergence.
pub fn generate_open_form(c: &Convergence, algebra: Algebra, caps: &Caps) -> Result<FiniteTopology> {
    caps.check_working(algebra, "sequential topology")?;
    let table = SupportTable::build(c, algebra, caps)?;
    let n = algebra.size();
    // reach[a] = union of supports having a as a limit
    let mut reach = vec![0u64; n];
    for (s, &v) in table.raw().iter().enumerate().skip(1) {
        for a in BitIter(v) {
            reach[a as usize] |= s as u64;
        }
    }
    let opens = (0..=algebra.carrier_bits())
        .filter(|&o| BitIter(o).all(|a| reach[a as usize] & !o == 0))
        .map(|o| algebra.set(o));
    Ok(FiniteTopology::from_open_sets(algebra, opens)?.with_label(format!("O({c})")))
}

/// Closed-set generation through explicit sequences (`n <= 3`).
pub fn generate_by_sequences(c: &Convergence, algebra: Algebra) -> Result<FiniteTopology> {
    if algebra.atoms() > 3 {
        return Err(Error::ResourceCap {
            what: "sequence-level topology generation",
            cap: 3,
            requested: algebra.atoms(),
        });
    }
    let mut closed = Vec::new();
    for bits in 0..=algebra.carrier_bits() {
        let a = algebra.set(bits);
        if sequential_closure_step(c, a)? == a {
            closed.push(a);
        }
    }
    Ok(FiniteTopology::from_closed_sets(algebra, closed)?.with_label(format!("O({c})")))
}

/// `O_λ` by whichever route applies.
pub fn sequential_topology(c: &Convergence, algebra: Algebra, caps: &Caps) -> Result<FiniteTopology> {
    match generate_sequential_topology(c, algebra, caps) {
        Err(Error::Precondition(_)) => generate_open_form(c, algebra, caps),
        other => other,
    }
}

/// `λ = lim_{O_λ}` on the corpus.
pub fn is_topological_convergence(
    c: &Convergence,
    algebra: Algebra,
    corpus: &[EPSequence],
    caps: &Caps,
) -> Result<Verdict> {
    let t = sequential_topology(c, algebra, caps)?;
    scan(corpus, |x| {
        let (v, l) = (c.eval(x)?, t.lim(x)?);
        Ok((v != l).then(|| Witness::sequence(x, format!("λ = {v:?}, lim O_λ = {l:?}"))))
    })
}

/// `λ* = lim_{O_λ}` on the corpus; requires (L1), (L2).
pub fn is_weakly_topological(
    c: &Convergence,
    algebra: Algebra,
    corpus: &[EPSequence],
    caps: &Caps,
) -> Result<Verdict> {
    let axioms = check_axioms(c, algebra, corpus)?;
    if !axioms.l1.holds {
        return Ok(axioms.l1);
    }
    if !axioms.l2.holds {
        return Ok(axioms.l2);
    }
    let t = generate_sequential_topology(c, algebra, caps)?;
    let star = Convergence::star(c.clone());
    scan(corpus, |x| {
        let (v, l) = (star.eval(x)?, t.lim(x)?);
        Ok((v != l).then(|| Witness::sequence(x, format!("λ* = {v:?}, lim O_λ = {l:?}"))))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Ls,
    Li,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Characterization {
    pub verdict: Verdict,
    /// Size of the family described by the order-theoretic conditions.
    pub family_size: usize,
}

/// A limit value of a set of elements, as a word.
type Limit = fn(ElementSet) -> u64;

/// Nonempty chains of `P(n)`, as sets.
fn chains(algebra: Algebra) -> Vec<u64> {
    let n = algebra.atoms() as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = std::collections::BTreeSet::new();
    loop {
        // the maximal chain ⊥ < π0 < π0π1 < ...
        let mut word = 0u64;
        let mut chain = vec![0u64];
        for &i in &perm {
            word |= 1 << i;
            chain.push(word);
        }
        for mask in SubsetIter::new((1u64 << chain.len()) - 1) {
            out.insert(
                BitIter(mask).fold(0u64, |acc, i| acc | 1 << chain[i as usize]),
            );
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.into_iter().collect()
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Compares the closed family of `t` with the two order-theoretic
/// descriptions of `F_λls` (or, dually, `F_λli`):
/// upward closed and closed under limsup of sequences (joins of nonempty
/// supports), and upward closed and closed under infima of decreasing
/// sequences (meets of nonempty chains).
pub fn check_closed_set_characterization(t: &FiniteTopology, flavor: Flavor) -> Result<Characterization> {
    let algebra = t.algebra();
    let chains = chains(algebra);
    let mut by_limits = Vec::new();
    let mut by_chains = Vec::new();
    for bits in 0..=algebra.carrier_bits() {
        let f = algebra.set(bits);
        let (monotone, lim_of, chain_lim): (bool, Limit, Limit) = match flavor {
            Flavor::Ls => (f.is_up_closed(), |s| s.big_join().word(), |s| s.big_meet().word()),
            Flavor::Li => (f.is_down_closed(), |s| s.big_meet().word(), |s| s.big_join().word()),
        };
        if !monotone {
            continue;
        }
        if f.nonempty_subsets().all(|s| bits & (1 << lim_of(s)) != 0) {
            by_limits.push(bits);
        }
        let inside = chains.iter().filter(|&&c| c & !bits == 0);
        if inside.clone().all(|&c| bits & (1 << chain_lim(algebra.set(c))) != 0) {
            by_chains.push(bits);
        }
    }
    let family_size = by_limits.len();
    let first_diff = |a: &[u64], b: &[u64]| -> Option<u64> {
        a.iter()
            .find(|x| b.binary_search(x).is_err())
            .or_else(|| b.iter().find(|x| a.binary_search(x).is_err()))
            .copied()
    };
    let verdict = if let Some(d) = first_diff(&by_limits, &by_chains) {
        Verdict::fail(family_size, Witness::set(BitIter(d).collect(), "limit and chain descriptions differ"))
    } else if let Some(d) = first_diff(&by_limits, &t.closed) {
        let side = if t.closed.binary_search(&d).is_ok() {
            "closed in the topology but not in the described family"
        } else {
            "in the described family but not closed"
        };
        Verdict::fail(family_size, Witness::set(BitIter(d).collect(), side))
    } else {
        Verdict::pass(family_size)
    };
    Ok(Characterization { verdict, family_size })
}

/// Elementwise complement carries `F_λls` onto `F_λli` and back.
pub fn dual_homeomorphism_check(algebra: Algebra, caps: &Caps) -> Result<Verdict> {
    let ls = generate_sequential_topology(&Convergence::LambdaLS, algebra, caps)?;
    let li = generate_sequential_topology(&Convergence::LambdaLI, algebra, caps)?;
    let forward = ls.closed_sets().find(|f| !li.is_closed(f.complement_each()));
    let backward = li.closed_sets().find(|f| !ls.is_closed(f.complement_each()));
    let checked = ls.len() + li.len();
    Ok(match (forward, backward) {
        (Some(f), _) => Verdict::fail(checked, Witness::set(f.to_words(), "image of an ls-closed set is not li-closed")),
        (_, Some(f)) => Verdict::fail(checked, Witness::set(f.to_words(), "image of an li-closed set is not ls-closed")),
        // complement is an involution, so both inclusions give a bijection
        (None, None) if ls.len() == li.len() => Verdict::pass(checked),
        (None, None) => Verdict::fail(checked, Witness::note("closed families differ in size")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HbarReport {
    pub holds: bool,
    pub supports_checked: usize,
    /// Largest witness `T` the search needed.
    pub largest_witness: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<u64>>,
}

/// `(ħ)` over all supports: each nonempty `S` has a nonempty `T ⊆ S` with
/// every nonempty `U ⊆ T` sharing the join of `T`.
pub fn condition_hbar(algebra: Algebra, caps: &Caps) -> Result<HbarReport> {
    caps.check_working(algebra, "condition (ħ)")?;
    let mut largest = 0;
    let mut checked = 0;
    for s in algebra.carrier().nonempty_subsets() {
        checked += 1;
        let witness = s.nonempty_subsets().find(|t| {
            let top = t.big_join();
            t.nonempty_subsets().all(|u| u.big_join() == top)
        });
        match witness {
            Some(t) => largest = largest.max(t.len()),
            None => {
                return Ok(HbarReport {
                    holds: false,
                    supports_checked: checked,
                    largest_witness: largest,
                    counterexample: Some(s.to_words()),
                })
            }
        }
    }
    Ok(HbarReport {
        holds: true,
        supports_checked: checked,
        largest_witness: largest,
        counterexample: None,
    })
}

/// `(ħ)` on explicit sequences: each `x` has a limsup-stable witness subsequence.
pub fn condition_hbar_on(corpus: &[EPSequence]) -> Result<Verdict> {
    scan(corpus, |x| {
        for t in x.tail_support().nonempty_subsets() {
            if x.witness_subsequence(t)?.is_limsup_stable() {
                return Ok(None);
            }
        }
        Ok(Some(Witness::sequence(x, "no limsup-stable subsequence")))
    })
}

/// Every topology on the carrier, by filtering all families of subsets.
pub fn all_topologies(algebra: Algebra, caps: &Caps) -> Result<Vec<FiniteTopology>> {
    caps.check_brute_force(algebra, "topology enumeration")?;
    let subsets = 1usize << algebra.size();
    let full = subsets - 1;
    let mut out = Vec::new();
    for family in 0u64..1 << subsets {
        if family & 1 == 0 || family & (1 << full) == 0 {
            continue;
        }
        let members: Vec<usize> = BitIter(family).map(|i| i as usize).collect();
        let closed = members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| family & (1 << (a | b)) != 0 && family & (1 << (a & b)) != 0)
        });
        if closed {
            let sets = members.iter().map(|&m| algebra.set(m as u64));
            out.push(FiniteTopology::from_closed_sets(algebra, sets)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub holds: bool,
    pub topologies_examined: usize,
    /// Topologies `t` with `λ <= lim_t` on the corpus.
    pub dominating: usize,
    pub generated_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Confirms that `O_λ` satisfies `λ <= lim_{O_λ}` and contains every
/// topology that does.
pub fn maximality_brute_force(
    c: &Convergence,
    algebra: Algebra,
    corpus: &[EPSequence],
    caps: &Caps,
) -> Result<MaximalityReport> {
    let all = all_topologies(algebra, caps)?;
    let generated = sequential_topology(c, algebra, caps)?;
    let values: Vec<(ElementSet, ElementSet)> = corpus
        .iter()
        .map(|x| Ok((x.tail_support(), c.eval(x)?)))
        .collect::<Result<_>>()?;
    let dominates = |t: &FiniteTopology| {
        values
            .iter()
            .all(|&(ts, v)| v.bits() & !t.lim_support(ts).bits() == 0)
    };
    let mut witness = None;
    if !dominates(&generated) {
        witness = Some(Witness::note(format!("{c} is not below lim of its own topology")));
    }
    let mut dominating = 0;
    for t in &all {
        if dominates(t) {
            dominating += 1;
            if witness.is_none() && !t.opens_within(&generated) {
                let extra = t
                    .open_sets()
                    .find(|o| !generated.is_open(*o))
                    .map(|o| o.to_words())
                    .unwrap_or_default();
                witness = Some(Witness::set(extra, "open set of a dominating topology missing from O_λ"));
            }
        }
    }
    Ok(MaximalityReport {
        holds: witness.is_none(),
        topologies_examined: all.len(),
        dominating,
        generated_size: generated.len(),
        witness,
    })
}
