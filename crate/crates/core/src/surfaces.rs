//! Compact oriented surfaces with one boundary component: `pi_1` is free on
//! `a_1, b_1, ..., a_g, b_g` (indices `1..2g`) with boundary word `nu = [a_1,b_1]...[a_g,b_g]`.

use num_traits::One;

use crate::automorphism::{twist, Automorphism};
use crate::error::{Error, Result};
use crate::pairing::{NablaElement, TruncatedPairing};
use crate::scalar::Rational;
use crate::series::Series;
use crate::word::{Alphabet, GroupWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalTwist {
    /// The curve `a_1`: `b_1 -> b_1 a_1^{-1}`.
    NonseparatingA1,
    /// The curve `[a_1, b_1]`, cutting off the first handle.
    SeparatingGenusOne,
}

impl SurfaceSpec {
    pub fn new(genus: usize, cap: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { genus, what: "a surface preset" });
        }
        Ok(SurfaceSpec { genus, cap })
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// Generator index of `a_i` (1-based handle index).
    pub fn a(&self, i: usize) -> GroupWord {
        GroupWord::generator(self.rank(), 2 * i - 1)
    }

    pub fn b(&self, i: usize) -> GroupWord {
        GroupWord::generator(self.rank(), 2 * i)
    }

    /// Names `a1 b1 a2 b2 ...`; genus one uses `a b`.
    pub fn alphabet(&self) -> Alphabet {
        let names = if self.genus == 1 {
            vec!["a".to_string(), "b".to_string()]
        } else {
            (1..=self.genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
        };
        Alphabet::from_names(names)
    }

    /// Parses a curve word; genus one also accepts `a1`, `b1`.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        match self.alphabet().parse_word(text) {
            Ok(w) => Ok(w),
            Err(e) if self.genus == 1 => {
                Alphabet::from_names(vec!["a1".into(), "b1".into()]).parse_word(text).map_err(|_| e)
            }
            Err(e) => Err(e),
        }
    }

    pub fn boundary_word(&self) -> GroupWord {
        let mut nu = GroupWord::identity(self.rank());
        for i in 1..=self.genus {
            nu = nu.mul(&self.a(i).commutator(&self.b(i)));
        }
        nu
    }

    /// `iota(nu) - 1` at cap `M + 2`.
    pub fn nabla(&self) -> NablaElement {
        NablaElement::from_word(&self.boundary_word(), self.cap + 2)
    }

    /// The pairing with `nabla = nu - 1`, known modulo degree `M` on generator pairs.
    pub fn pairing(&self) -> TruncatedPairing {
        let rho = self.nabla().pairing().expect("surface boundary words are non-degenerate");
        assert_eq!(rho.homological_form()[0][1], -Rational::one(), "preset orientation: a1 . b1 must be -1");
        rho
    }

    pub fn generalized_dehn_twist(&self, curve: &GroupWord, k: &Rational) -> Result<Automorphism> {
        twist(&self.pairing(), k, curve)
    }

    pub fn classical_dehn_twist(&self, preset: ClassicalTwist) -> Result<Automorphism> {
        let mut images: Vec<GroupWord> = (1..=self.rank()).map(|i| GroupWord::generator(self.rank(), i)).collect();
        let (a1, b1) = (self.a(1), self.b(1));
        match preset {
            ClassicalTwist::NonseparatingA1 => {
                images[1] = b1.mul(&a1.inverse());
            }
            ClassicalTwist::SeparatingGenusOne => {
                if self.genus < 2 {
                    return Err(Error::GenusTooSmall { genus: self.genus, what: "a separating twist" });
                }
                let c = a1.commutator(&b1);
                images[0] = c.mul(&a1).mul(&c.inverse());
                images[1] = c.mul(&b1).mul(&c.inverse());
            }
        }
        Automorphism::from_words(&images, self.cap)
    }

    /// The classical curve word of a preset.
    pub fn classical_curve(&self, preset: ClassicalTwist) -> GroupWord {
        match preset {
            ClassicalTwist::NonseparatingA1 => self.a(1),
            ClassicalTwist::SeparatingGenusOne => self.a(1).commutator(&self.b(1)),
        }
    }
}

/// Includes a series over the first `rank(u)` generators into a larger rank.
pub fn include_series(u: &Series, target_rank: usize) -> Series {
    let images: Vec<Series> = (1..=u.rank()).map(|i| Series::var(target_rank, u.cap(), i)).collect();
    u.substitute(&images).expect("variables have zero constant term")
}

/// Includes a word over the first `rank(w)` generators into a larger rank.
pub fn include_word(w: &GroupWord, target_rank: usize) -> GroupWord {
    GroupWord::from_letters(target_rank, w.letters()).expect("target rank is at least the source rank")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn genus_one_pairing() {
        let s = SurfaceSpec::new(1, 4).unwrap();
        let rho = s.pairing();
        assert_eq!(rho.homological_form(), vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        assert_eq!(rho.weak_skew_witness(), Some(Series::constant(2, 2, int(-1))));
        assert!(rho.is_nondegenerate());
        let (a, b) = (s.a(1), s.b(1));
        assert_eq!(s.parse_word("a b^-1").unwrap(), a.mul(&b.inverse()));
        assert_eq!(s.parse_word("a1").unwrap(), a);
    }

    #[test]
    fn classical_twists_preserve_the_boundary() {
        let s = SurfaceSpec::new(2, 4).unwrap();
        let nu = Series::embed_word(&s.boundary_word(), 4);
        for preset in [ClassicalTwist::NonseparatingA1, ClassicalTwist::SeparatingGenusOne] {
            assert!(s.classical_dehn_twist(preset).unwrap().fixes(&nu).unwrap());
        }
        let t = SurfaceSpec::new(1, 4).unwrap().classical_dehn_twist(ClassicalTwist::NonseparatingA1).unwrap();
        assert_eq!(t.homology_matrix(), vec![vec![int(1), int(-1)], vec![int(0), int(1)]]);
        assert!(matches!(
            SurfaceSpec::new(1, 4).unwrap().classical_dehn_twist(ClassicalTwist::SeparatingGenusOne),
            Err(Error::GenusTooSmall { .. })
        ));
    }

    #[test]
    fn generalized_twists_match_classical_ones() {
        let s = SurfaceSpec::new(1, 5).unwrap();
        let t = s.generalized_dehn_twist(&s.a(1), &rat(1, 2)).unwrap();
        assert_eq!(t, s.classical_dehn_twist(ClassicalTwist::NonseparatingA1).unwrap());
        let conj = s.b(1).mul(&s.a(1)).mul(&s.b(1).inverse());
        assert_eq!(s.generalized_dehn_twist(&conj, &rat(1, 2)).unwrap(), t);
    }
}
