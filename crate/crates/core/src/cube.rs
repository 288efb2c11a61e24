//! `P(κ)` for finite `κ` viewed as the cube `2^κ`: the Cantor and
//! Aleksandrov product topologies and their coordinatewise limits.
//!
//! An element word `X` is the point whose coordinate `α` is `1` iff atom `α`
//! lies below `X`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Caps, ElementSet};
use crate::error::Result;
use crate::forcing::traces;
use crate::omega::OmegaClass;
use crate::sequence::EPSequence;
use crate::topology::FiniteTopology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cube {
    /// Product of discrete two-point spaces.
    Cantor,
    /// Product of the space on `{0, 1}` with opens `∅, {0}, {0, 1}`.
    Aleksandrov,
}

impl Cube {
    /// Open sets of the factor, as masks over `{0, 1}` (bit `v` = value `v`).
    fn factor_opens(self) -> &'static [u8] {
        match self {
            Cube::Cantor => &[0b01, 0b10, 0b11],
            Cube::Aleksandrov => &[0b01, 0b11],
        }
    }

    /// Basic open boxes `Π_α U_α` with every `U_α` a nonempty factor open.
    pub fn basis(self, algebra: Algebra) -> Vec<ElementSet> {
        let n = algebra.atoms() as usize;
        let opens = self.factor_opens();
        let mut choice = vec![0usize; n];
        let mut out = Vec::new();
        loop {
            let bits = (0..algebra.size() as u64)
                .filter(|&x| (0..n).all(|a| opens[choice[a]] & (1 << ((x >> a) & 1)) != 0))
                .fold(0u64, |acc, x| acc | 1 << x);
            out.push(algebra.set(bits));
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < opens.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// The product topology: sets that are unions of the basic boxes inside them.
    pub fn topology(self, algebra: Algebra, caps: &Caps) -> Result<FiniteTopology> {
        caps.check_working(algebra, "cube topology")?;
        let basis: Vec<u64> = self.basis(algebra).into_iter().map(ElementSet::bits).collect();
        let opens = (0..=algebra.carrier_bits())
            .filter(|&o| basis.iter().filter(|&&b| b & !o == 0).fold(0, |acc, &b| acc | b) == o)
            .map(|o| algebra.set(o));
        let name = match self {
            Cube::Cantor => "cantor cube",
            Cube::Aleksandrov => "aleksandrov cube",
        };
        Ok(FiniteTopology::from_open_sets(algebra, opens)?.with_label(name))
    }

    /// Limits computed coordinate by coordinate from the atom traces.
    ///
    /// Cantor: coordinate `α` of the sequence is eventually constant with the
    /// value it has in `X`. Aleksandrov: every coordinate that is `0` in `X`
    /// is eventually `0`.
    pub fn coordinate_lim(self, x: &EPSequence) -> ElementSet {
        let algebra = x.algebra();
        let classes: Vec<(u64, OmegaClass)> = traces(x)
            .into_iter()
            .map(|(a, t)| (a.word(), t.classify()))
            .collect();
        let bits = (0..algebra.size() as u64)
            .filter(|&point| {
                classes.iter().all(|&(atom, class)| {
                    let inside = point & atom != 0;
                    match (self, class) {
                        (Cube::Cantor, OmegaClass::Finite) => !inside,
                        (Cube::Cantor, OmegaClass::Cofinite) => inside,
                        (Cube::Cantor, OmegaClass::InfiniteCoinfinite) => false,
                        (Cube::Aleksandrov, OmegaClass::Finite) => true,
                        (Cube::Aleksandrov, _) => inside,
                    }
                })
            })
            .fold(0u64, |acc, p| acc | 1 << p);
        algebra.set(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::Convergence;
    use crate::corpus::{exhaustive, Bounds};

    #[test]
    fn basis_sizes() {
        let b = Algebra::new(2).unwrap();
        assert_eq!(Cube::Cantor.basis(b).len(), 9);
        assert_eq!(Cube::Aleksandrov.basis(b).len(), 4);
    }

    #[test]
    fn cantor_cube_is_discrete() {
        for n in 1..=3 {
            let b = Algebra::new(n).unwrap();
            let t = Cube::Cantor.topology(b, &Caps::default()).unwrap();
            assert_eq!(t, FiniteTopology::discrete(b).unwrap());
        }
    }

    #[test]
    fn aleksandrov_opens_are_down_sets() {
        let b = Algebra::new(2).unwrap();
        let t = Cube::Aleksandrov.topology(b, &Caps::default()).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.open_sets().all(|o| o.is_down_closed()));
    }

    #[test]
    fn coordinate_limits_match_topology_and_convergences() {
        let b = Algebra::new(2).unwrap();
        let caps = Caps::default();
        let cantor = Cube::Cantor.topology(b, &caps).unwrap();
        let alek = Cube::Aleksandrov.topology(b, &caps).unwrap();
        for x in exhaustive(b, Bounds::new(2, 3)).unwrap() {
            let c = Cube::Cantor.coordinate_lim(&x);
            assert_eq!(c, cantor.lim(&x).unwrap(), "{x}");
            assert_eq!(c, Convergence::LambdaS.eval(&x).unwrap(), "{x}");
            let a = Cube::Aleksandrov.coordinate_lim(&x);
            assert_eq!(a, alek.lim(&x).unwrap(), "{x}");
            assert_eq!(a, Convergence::LambdaLS.eval(&x).unwrap(), "{x}");
        }
    }
}
