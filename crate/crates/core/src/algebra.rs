//! Finite atomic Boolean algebras `P(n)`.
//!
//! An element is an atom-flag word `0 .. 2^n`; bit `i` set means atom `i`
//! lies below the element. A set of elements is a characteristic word over
//! the carrier, so the carrier may hold at most 64 points and `n <= 6`.
//! Every binary operation checks that both operands come from the same
//! algebra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration ceilings. These are configuration, not hard limits of the
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest atom count for which all subsets of the carrier are scanned
    /// (topology generation, support tables).
    pub working: u8,
    /// Largest atom count for which every topology on the carrier is
    /// enumerated.
    pub brute_force: u8,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            working: 4,
            brute_force: 2,
        }
    }
}

impl Caps {
    pub fn check_working(&self, algebra: Algebra, what: &'static str) -> Result<()> {
        if algebra.atoms() > self.working {
            return Err(Error::ResourceCap {
                what,
                cap: self.working,
                requested: algebra.atoms(),
            });
        }
        Ok(())
    }

    pub fn check_brute_force(&self, algebra: Algebra, what: &'static str) -> Result<()> {
        if algebra.atoms() > self.brute_force {
            return Err(Error::ResourceCap {
                what,
                cap: self.brute_force,
                requested: algebra.atoms(),
            });
        }
        Ok(())
    }
}

/// The power-set algebra on `atoms` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AlgebraRepr", into = "AlgebraRepr")]
pub struct Algebra {
    atoms: u8,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    atoms: usize,
}

impl TryFrom<AlgebraRepr> for Algebra {
    type Error = Error;
    fn try_from(r: AlgebraRepr) -> Result<Self> {
        Algebra::new(r.atoms)
    }
}

impl From<Algebra> for AlgebraRepr {
    fn from(a: Algebra) -> Self {
        AlgebraRepr {
            atoms: a.atoms as usize,
        }
    }
}

impl Algebra {
    /// Largest atom count whose carrier fits in a 64-bit set word.
    pub const MAX_ATOMS: u8 = 6;

    pub fn new(atoms: usize) -> Result<Self> {
        if atoms == 0 || atoms > Self::MAX_ATOMS as usize {
            return Err(Error::AtomCount {
                requested: atoms,
                max: Self::MAX_ATOMS,
            });
        }
        Ok(Algebra { atoms: atoms as u8 })
    }

    pub fn atoms(self) -> u8 {
        self.atoms
    }

    /// Number of carrier points, `2^n`.
    pub fn size(self) -> usize {
        1usize << self.atoms
    }

    pub(crate) fn top_word(self) -> u64 {
        (self.size() - 1) as u64
    }

    /// Characteristic word of the whole carrier.
    pub(crate) fn carrier_bits(self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    pub fn bottom(self) -> Element {
        Element {
            algebra: self,
            word: 0,
        }
    }

    pub fn top(self) -> Element {
        Element {
            algebra: self,
            word: self.top_word(),
        }
    }

    pub fn element(self, word: u64) -> Result<Element> {
        if word > self.top_word() {
            return Err(Error::ElementOutOfRange {
                word,
                atoms: self.atoms,
            });
        }
        Ok(Element {
            algebra: self,
            word,
        })
    }

    pub(crate) fn elem(self, word: u64) -> Element {
        debug_assert!(word <= self.top_word());
        Element {
            algebra: self,
            word,
        }
    }

    /// Elements in ascending word order.
    pub fn elements(self) -> impl Iterator<Item = Element> {
        (0..=self.top_word()).map(move |w| self.elem(w))
    }

    /// The atoms `{i}` in ascending order.
    pub fn atom_elements(self) -> impl Iterator<Item = Element> {
        (0..self.atoms).map(move |i| self.elem(1 << i))
    }

    pub fn carrier(self) -> ElementSet {
        ElementSet {
            algebra: self,
            bits: self.carrier_bits(),
        }
    }

    pub fn empty_set(self) -> ElementSet {
        ElementSet {
            algebra: self,
            bits: 0,
        }
    }

    pub fn set_from_bits(self, bits: u64) -> Result<ElementSet> {
        if bits & !self.carrier_bits() != 0 {
            return Err(Error::structural(format!(
                "set word {bits:#x} leaves the carrier of P({})",
                self.atoms
            )));
        }
        Ok(ElementSet {
            algebra: self,
            bits,
        })
    }

    pub(crate) fn set(self, bits: u64) -> ElementSet {
        debug_assert!(bits & !self.carrier_bits() == 0);
        ElementSet {
            algebra: self,
            bits,
        }
    }

    pub fn set_from_words<I: IntoIterator<Item = u64>>(self, words: I) -> Result<ElementSet> {
        let mut bits = 0u64;
        for w in words {
            bits |= 1 << self.element(w)?.word;
        }
        Ok(self.set(bits))
    }

    pub fn singleton(self, e: Element) -> Result<ElementSet> {
        self.same(e.algebra)?;
        Ok(self.set(1 << e.word))
    }

    pub(crate) fn same(self, other: Algebra) -> Result<()> {
        if self != other {
            return Err(Error::AlgebraMismatch {
                left: self.atoms,
                right: other.atoms,
            });
        }
        Ok(())
    }

    pub fn meet(self, a: Element, b: Element) -> Result<Element> {
        self.same(a.algebra)?;
        a.meet(b)
    }

    pub fn join(self, a: Element, b: Element) -> Result<Element> {
        self.same(a.algebra)?;
        a.join(b)
    }

    pub fn complement(self, a: Element) -> Result<Element> {
        self.same(a.algebra)?;
        Ok(a.complement())
    }

    pub fn le(self, a: Element, b: Element) -> Result<bool> {
        self.same(a.algebra)?;
        a.le(b)
    }

    /// Meet of a set; the empty meet is the top.
    pub fn big_meet(self, s: ElementSet) -> Result<Element> {
        self.same(s.algebra)?;
        Ok(s.big_meet())
    }

    /// Join of a set; the empty join is the bottom.
    pub fn big_join(self, s: ElementSet) -> Result<Element> {
        self.same(s.algebra)?;
        Ok(s.big_join())
    }

    pub fn atoms_below(self, a: Element) -> Result<ElementSet> {
        self.same(a.algebra)?;
        Ok(a.atoms_below())
    }
}

/// An element of `P(n)`, carried together with its algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    algebra: Algebra,
    word: u64,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.word, width = self.algebra.atoms as usize)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

impl Element {
    pub fn algebra(self) -> Algebra {
        self.algebra
    }

    pub fn word(self) -> u64 {
        self.word
    }

    pub fn is_atom(self) -> bool {
        self.word.count_ones() == 1
    }

    pub fn is_bottom(self) -> bool {
        self.word == 0
    }

    pub fn is_top(self) -> bool {
        self.word == self.algebra.top_word()
    }

    pub fn meet(self, other: Element) -> Result<Element> {
        self.algebra.same(other.algebra)?;
        Ok(self.algebra.elem(self.word & other.word))
    }

    pub fn join(self, other: Element) -> Result<Element> {
        self.algebra.same(other.algebra)?;
        Ok(self.algebra.elem(self.word | other.word))
    }

    pub fn complement(self) -> Element {
        self.algebra.elem(!self.word & self.algebra.top_word())
    }

    pub fn le(self, other: Element) -> Result<bool> {
        self.algebra.same(other.algebra)?;
        Ok(self.word & other.word == self.word)
    }

    pub fn atoms_below(self) -> ElementSet {
        let mut bits = 0u64;
        for i in 0..self.algebra.atoms {
            if self.word & (1 << i) != 0 {
                bits |= 1 << (1u64 << i);
            }
        }
        self.algebra.set(bits)
    }

    /// `{b : self <= b}`
    pub fn up(self) -> ElementSet {
        self.algebra.set(up_bits(self.algebra, 1 << self.word))
    }

    /// `{b : b <= self}`
    pub fn down(self) -> ElementSet {
        self.algebra.set(down_bits(self.algebra, 1 << self.word))
    }
}

/// A subset of the carrier of one algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    algebra: Algebra,
    bits: u64,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.word)).finish()
    }
}

/// Serialized as the ascending list of member words.
impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|e| e.word))
    }
}

impl ElementSet {
    pub fn algebra(self) -> Algebra {
        self.algebra
    }

    /// Characteristic word: bit `w` set iff element `w` is a member.
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, e: Element) -> bool {
        e.algebra == self.algebra && self.bits & (1 << e.word) != 0
    }

    pub fn with(self, e: Element) -> Result<ElementSet> {
        self.algebra.same(e.algebra)?;
        Ok(self.algebra.set(self.bits | (1 << e.word)))
    }

    pub fn iter(self) -> impl Iterator<Item = Element> {
        let algebra = self.algebra;
        BitIter(self.bits).map(move |w| algebra.elem(w))
    }

    /// Sorted member words, the JSON form of a set.
    pub fn to_words(self) -> Vec<u64> {
        BitIter(self.bits).collect()
    }

    pub fn union(self, other: ElementSet) -> Result<ElementSet> {
        self.algebra.same(other.algebra)?;
        Ok(self.algebra.set(self.bits | other.bits))
    }

    pub fn intersection(self, other: ElementSet) -> Result<ElementSet> {
        self.algebra.same(other.algebra)?;
        Ok(self.algebra.set(self.bits & other.bits))
    }

    /// Complement relative to the carrier.
    pub fn set_complement(self) -> ElementSet {
        self.algebra.set(!self.bits & self.algebra.carrier_bits())
    }

    pub fn is_subset(self, other: ElementSet) -> Result<bool> {
        self.algebra.same(other.algebra)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn big_meet(self) -> Element {
        self.algebra.elem(meet_word(self.algebra, self.bits))
    }

    pub fn big_join(self) -> Element {
        self.algebra.elem(join_word(self.bits))
    }

    /// Image under elementwise complement.
    pub fn complement_each(self) -> ElementSet {
        let top = self.algebra.top_word();
        let bits = BitIter(self.bits).fold(0u64, |acc, w| acc | 1 << (!w & top));
        self.algebra.set(bits)
    }

    pub fn up_closure(self) -> ElementSet {
        self.algebra.set(up_bits(self.algebra, self.bits))
    }

    pub fn down_closure(self) -> ElementSet {
        self.algebra.set(down_bits(self.algebra, self.bits))
    }

    pub fn is_up_closed(self) -> bool {
        self.up_closure() == self
    }

    pub fn is_down_closed(self) -> bool {
        self.down_closure() == self
    }

    /// Nonempty subsets in ascending word order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ElementSet> {
        let algebra = self.algebra;
        SubsetIter::new(self.bits).map(move |b| algebra.set(b))
    }
}

/// Iterates the positions of set bits, lowest first.
#[derive(Clone)]
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as u64;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Nonempty submasks of a mask in ascending numeric order.
pub(crate) struct SubsetIter {
    mask: u64,
    next: Option<u64>,
}

impl SubsetIter {
    pub(crate) fn new(mask: u64) -> Self {
        // the lowest nonempty submask is the lowest set bit
        let next = if mask == 0 { None } else { Some(mask & mask.wrapping_neg()) };
        SubsetIter { mask, next }
    }
}

impl Iterator for SubsetIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing order
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(cur)
    }
}

pub(crate) fn join_word(bits: u64) -> u64 {
    BitIter(bits).fold(0, |acc, w| acc | w)
}

pub(crate) fn meet_word(algebra: Algebra, bits: u64) -> u64 {
    BitIter(bits).fold(algebra.top_word(), |acc, w| acc & w)
}

pub(crate) fn up_bits(algebra: Algebra, mut bits: u64) -> u64 {
    let size = algebra.size() as u64;
    for i in 0..algebra.atoms {
        let atom = 1u64 << i;
        for e in 0..size {
            if e & atom == 0 && bits & (1 << e) != 0 {
                bits |= 1 << (e | atom);
            }
        }
    }
    bits
}

pub(crate) fn down_bits(algebra: Algebra, mut bits: u64) -> u64 {
    let size = algebra.size() as u64;
    for i in 0..algebra.atoms {
        let atom = 1u64 << i;
        for e in 0..size {
            if e & atom != 0 && bits & (1 << e) != 0 {
                bits |= 1 << (e & !atom);
            }
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Algebra {
        Algebra::new(n).unwrap()
    }

    #[test]
    fn lattice_ops_on_two_atoms() {
        let b = p(2);
        let a10 = b.element(0b10).unwrap();
        let a01 = b.element(0b01).unwrap();
        assert_eq!(b.meet(a10, a01).unwrap(), b.bottom());
        assert_eq!(b.complement(a10).unwrap(), a01);
        let s = b.set_from_words([0b10, 0b01]).unwrap();
        assert_eq!(b.big_join(s).unwrap(), b.top());
        assert_eq!(b.big_meet(b.empty_set()).unwrap(), b.top());
        assert_eq!(b.big_join(b.empty_set()).unwrap(), b.bottom());
        assert_eq!(b.atoms_below(b.top()).unwrap().to_words(), vec![1, 2]);
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let x = p(2).top();
        let y = p(3).top();
        assert!(matches!(x.meet(y), Err(Error::AlgebraMismatch { .. })));
        assert!(matches!(x.le(y), Err(Error::AlgebraMismatch { .. })));
        assert!(p(2).carrier().union(p(3).carrier()).is_err());
    }

    #[test]
    fn construction_bounds() {
        assert!(Algebra::new(0).is_err());
        assert!(Algebra::new(7).is_err());
        assert!(p(2).element(4).is_err());
        assert!(p(1).set_from_bits(0b100).is_err());
        assert_eq!(p(6).carrier().len(), 64);
    }

    #[test]
    fn up_and_down_closures() {
        let b = p(2);
        let s = |w: &[u64]| b.set_from_words(w.iter().copied()).unwrap();
        assert_eq!(s(&[0b10]).up_closure(), s(&[0b10, 0b11]));
        assert_eq!(b.empty_set().up_closure(), b.empty_set());
        assert_eq!(s(&[0]).up_closure(), b.carrier());
        assert_eq!(s(&[0b10]).down_closure(), s(&[0, 0b10]));
        assert_eq!(b.empty_set().down_closure(), b.empty_set());
        assert_eq!(s(&[0b11]).down_closure(), b.carrier());
    }

    #[test]
    fn de_morgan_exhaustive() {
        for n in 1..=4 {
            let b = p(n);
            let all = 1u64 << b.size();
            for bits in 0..all.min(1 << 16) {
                let s = b.set(bits);
                assert_eq!(s.big_join().complement(), s.complement_each().big_meet());
            }
        }
    }

    #[test]
    fn closures_are_closure_operators() {
        for n in 1..=3 {
            let b = p(n);
            let all = 1u64 << b.size();
            for bits in 0..all {
                let s = b.set(bits);
                for close in [ElementSet::up_closure, ElementSet::down_closure] {
                    let c = close(s);
                    assert!(s.is_subset(c).unwrap());
                    assert_eq!(close(c), c);
                }
            }
            // monotone: check against all supersets of a few sets
            for bits in 0..all {
                let s = b.set(bits);
                for sup in SubsetIter::new(b.carrier_bits()).filter(|t| t & bits == bits).take(8) {
                    let t = b.set(sup);
                    assert!(s.up_closure().is_subset(t.up_closure()).unwrap());
                    assert!(s.down_closure().is_subset(t.down_closure()).unwrap());
                }
            }
        }
    }

    #[test]
    fn complement_reverses_order() {
        let b = p(3);
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(x.le(y).unwrap(), y.complement().le(x.complement()).unwrap());
            }
        }
    }

    #[test]
    fn subset_iter_is_ascending_and_complete() {
        let v: Vec<u64> = SubsetIter::new(0b1011).collect();
        assert_eq!(v, vec![0b1, 0b10, 0b11, 0b1000, 0b1001, 0b1010, 0b1011]);
        assert_eq!(SubsetIter::new(0).count(), 0);
        assert_eq!(SubsetIter::new(u64::MAX).take(3).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn algebra_json() {
        let b: Algebra = serde_json::from_str(r#"{"atoms":3}"#).unwrap();
        assert_eq!(b.atoms(), 3);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"atoms":3}"#);
        assert!(serde_json::from_str::<Algebra>(r#"{"atoms":0}"#).is_err());
    }
}
