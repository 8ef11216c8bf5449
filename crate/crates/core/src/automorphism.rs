//! Derivations and filtered automorphisms of the truncated completion, stored by the images of
//! the generators, and the twists `t_{k,alpha} = exp(sigma(k log^2 alpha, -))`.

use num_traits::Zero;

use crate::derived::derived_form_truncated;
use crate::error::{check_rank, Error, Result};
use crate::hopf::is_group_like;
use crate::linalg::{self, RationalMatrix};
use crate::pairing::{intersection_number, TruncatedPairing};
use crate::scalar::{factorial_inverse, Rational};
use crate::series::Series;
use crate::word::GroupWord;

/// A derivation, given by its values on `X_1..X_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    rank: usize,
    cap: usize,
    images: Vec<Series>,
}

impl Derivation {
    /// Images must have zero constant term so that the derivation preserves the filtration.
    pub fn new(images: Vec<Series>) -> Result<Self> {
        let rank = images.len();
        let cap = images.iter().map(Series::cap).min().unwrap_or(1);
        for image in &images {
            check_rank(rank, image.rank())?;
            if !image.constant_term().is_zero() {
                return Err(Error::Domain("derivation images need zero constant term".into()));
            }
        }
        Ok(Derivation { rank, cap, images: images.into_iter().map(|s| s.truncate(cap)).collect() })
    }

    pub fn zero(rank: usize, cap: usize) -> Self {
        Derivation { rank, cap, images: vec![Series::zero(rank, cap); rank] }
    }

    /// The inner derivation `[p, -]`.
    pub fn inner(p: &Series) -> Result<Self> {
        let rank = p.rank();
        Self::new((1..=rank).map(|i| p.commutator(&Series::var(rank, p.cap(), i))).collect())
    }

    /// `d(X_j) = sigma(u, iota x_j)`.
    pub fn derived(rho: &TruncatedPairing, u: &Series) -> Result<Self> {
        let rank = rho.rank();
        let images = (1..=rank)
            .map(|j| derived_form_truncated(rho, u, &Series::embed_word(&GroupWord::generator(rank, j), u.cap())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn images(&self) -> &[Series] {
        &self.images
    }

    /// Leibniz extension to arbitrary series.
    pub fn apply(&self, u: &Series) -> Series {
        let cap = self.cap.min(u.cap());
        let mut out = Series::zero(self.rank, cap);
        for (m, k) in u.terms() {
            let letters = m.letters();
            for s in 0..letters.len() {
                let image = &self.images[letters[s] as usize - 1];
                let mut terms = Vec::new();
                for (mid, c) in image.terms() {
                    if letters.len() - 1 + mid.len() >= cap {
                        break;
                    }
                    let mut w = letters[..s].to_vec();
                    w.extend_from_slice(mid.letters());
                    w.extend_from_slice(&letters[s + 1..]);
                    terms.push((w, k * c));
                }
                out = &out + &Series::from_terms(self.rank, cap, terms).expect("letters in range");
            }
        }
        out
    }

    /// `e^d(u) = sum d^k(u) / k!`, stopping once `d^k(u)` vanishes at the cap.
    pub fn exp_apply(&self, u: &Series) -> Result<Series> {
        let limit = (self.cap + 1) * (self.cap + 1);
        let mut term = u.truncate(self.cap);
        let mut out = term.clone();
        for k in 1..=limit {
            term = self.apply(&term);
            if term.is_zero() {
                return Ok(out);
            }
            out = &out + &term.scale(&factorial_inverse(k));
        }
        Err(Error::NilpotencyCapExceeded(limit))
    }

    /// The automorphism `e^d`.
    pub fn exp(&self) -> Result<Automorphism> {
        let images = (1..=self.rank)
            .map(|i| {
                let x = Series::var(self.rank, self.cap, i);
                Ok(&Series::one(self.rank, self.cap) + &self.exp_apply(&x)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Automorphism::new(images)
    }

    pub fn commutes_with(&self, other: &Derivation) -> bool {
        (1..=self.rank).all(|i| {
            let x = Series::var(self.rank, self.cap.min(other.cap), i);
            self.apply(&other.apply(&x)) == other.apply(&self.apply(&x))
        })
    }
}

/// A filtered algebra automorphism given by the images of `iota(x_1)..iota(x_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    rank: usize,
    cap: usize,
    images: Vec<Series>,
}

impl Automorphism {
    /// Images must have constant term 1.
    pub fn new(images: Vec<Series>) -> Result<Self> {
        let rank = images.len();
        let cap = images.iter().map(Series::cap).min().unwrap_or(1);
        for image in &images {
            check_rank(rank, image.rank())?;
            if image.constant_term() != Rational::from_integer(1.into()) {
                return Err(Error::Domain("generator images need constant term 1".into()));
            }
        }
        Ok(Automorphism { rank, cap, images: images.into_iter().map(|s| s.truncate(cap)).collect() })
    }

    pub fn identity(rank: usize, cap: usize) -> Self {
        let images = (1..=rank).map(|i| Series::embed_word(&GroupWord::generator(rank, i), cap)).collect();
        Automorphism { rank, cap, images }
    }

    /// The automorphism induced by an endomorphism of the free group.
    pub fn from_words(words: &[GroupWord], cap: usize) -> Result<Self> {
        Self::new(words.iter().map(|w| Series::embed_word(w, cap)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn images(&self) -> &[Series] {
        &self.images
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Automorphism {
            rank: self.rank,
            cap: cap.min(self.cap),
            images: self.images.iter().map(|s| s.truncate(cap)).collect(),
        }
    }

    fn variable_images(&self) -> Vec<Series> {
        self.images.iter().map(Series::without_constant).collect()
    }

    pub fn apply(&self, u: &Series) -> Result<Series> {
        u.substitute(&self.variable_images())
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let images = other.images.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    /// Matrix of the induced map on `H_1`: column `j` is the image of the `j`-th basis vector.
    pub fn homology_matrix(&self) -> RationalMatrix {
        (1..=self.rank).map(|r| (0..self.rank).map(|j| self.images[j].coefficient(&[r as u8])).collect()).collect()
    }

    /// Solves `U(T(X_i)) = X_i` by fixed-point iteration on the nonlinear part.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.rank;
        let cap = self.cap;
        let linear = self.homology_matrix();
        let linear_inverse =
            linalg::invert(&linear).ok_or_else(|| Error::NotInvertible("homology matrix is singular".into()))?;
        let higher: Vec<Series> = self
            .variable_images()
            .iter()
            .map(|s| {
                let mut h = s.clone();
                for r in 1..=n {
                    h = &h - &Series::var(n, cap, r).scale(&s.coefficient(&[r as u8]));
                }
                h
            })
            .collect();
        let combine = |vectors: &[Series]| -> Vec<Series> {
            (0..n)
                .map(|j| {
                    let mut acc = Series::zero(n, cap);
                    for (i, v) in vectors.iter().enumerate() {
                        acc = &acc + &v.scale(&linear_inverse[i][j]);
                    }
                    acc
                })
                .collect()
        };
        let vars: Vec<Series> = (1..=n).map(|i| Series::var(n, cap, i)).collect();
        let mut current = combine(&vars);
        for _ in 0..cap {
            let residual =
                higher.iter().zip(&vars).map(|(h, x)| Ok(x - &h.substitute(&current)?)).collect::<Result<Vec<_>>>()?;
            let next = combine(&residual);
            if next == current {
                break;
            }
            current = next;
        }
        Self::new(current.iter().map(|s| &Series::one(n, cap) + s).collect())
    }

    pub fn pow(&self, exponent: i64) -> Result<Self> {
        let base = if exponent < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::identity(self.rank, self.cap);
        for _ in 0..exponent.unsigned_abs() {
            out = out.compose(&base)?;
        }
        Ok(out)
    }

    /// `Delta T(x_i) = (T (x) T) Delta(x_i)`, i.e. every generator image is group-like.
    pub fn is_hopf(&self) -> bool {
        self.images.iter().all(is_group_like)
    }

    pub fn maps_to_group_like(&self, u: &Series) -> Result<bool> {
        Ok(is_group_like(&self.apply(u)?))
    }

    /// `rho(T x_i, T x_j) = T(rho(x_i, x_j))` for all generator pairs, compared modulo degree
    /// `min(cap - 1, cap(rho))`.
    pub fn preserves_pairing(&self, rho: &TruncatedPairing) -> Result<bool> {
        self.pairing_defect(rho).map(|d| d.is_none())
    }

    /// First generator pair `(i, j)` where the pairing is not preserved.
    pub fn pairing_defect(&self, rho: &TruncatedPairing) -> Result<Option<(usize, usize)>> {
        check_rank(self.rank, rho.rank())?;
        for i in 1..=self.rank {
            for j in 1..=self.rank {
                let lhs = rho.eval(&self.images[i - 1], &self.images[j - 1])?;
                let rhs = self.apply(rho.entry(i, j))?;
                if !lhs.agrees_with(&rhs) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn fixes(&self, u: &Series) -> Result<bool> {
        Ok(self.apply(u)?.agrees_with(u))
    }
}

/// `t_{k,alpha}` for a group word `alpha`, at the cap of `rho`.
pub fn twist(rho: &TruncatedPairing, k: &Rational, alpha: &GroupWord) -> Result<Automorphism> {
    check_rank(rho.rank(), alpha.rank())?;
    let h = alpha.abelianization();
    let self_intersection = intersection_number(&rho.homological_form(), &h, &h);
    if !self_intersection.is_zero() {
        return Err(Error::Isotropy(self_intersection.to_string()));
    }
    twist_generator(rho, k, &Series::embed_word(alpha, rho.cap() + 1))?.exp()
}

/// The derivation `sigma(k log^2 alpha, -)` for a group-like `alpha`, at `min(cap alpha - 1, cap rho)`.
pub fn twist_generator(rho: &TruncatedPairing, k: &Rational, alpha: &Series) -> Result<Derivation> {
    let u = alpha.log()?.pow(2).scale(k);
    Derivation::derived(rho, &u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::NablaElement;
    use crate::random::Sampler;
    use crate::scalar::{int, rat};

    fn genus_one(cap: usize) -> TruncatedPairing {
        let (a, b) = (GroupWord::generator(2, 1), GroupWord::generator(2, 2));
        NablaElement::from_word(&a.commutator(&b), cap + 2).pairing().unwrap()
    }

    #[test]
    fn exponentials_of_derivations() {
        let zero = Derivation::zero(2, 5);
        assert_eq!(zero.exp().unwrap(), Automorphism::identity(2, 5));
        let mut sampler = Sampler::new(51, 2);
        let p = Series::embed_word(&sampler.word(4), 5).log().unwrap();
        let d = Derivation::inner(&p).unwrap();
        let (ep, em) = (p.exp().unwrap(), p.scale(&int(-1)).exp().unwrap());
        for _ in 0..5 {
            let v = sampler.series(5, 5, 0);
            assert_eq!(d.exp_apply(&v).unwrap(), &(&ep * &v) * &em);
            let w = sampler.series(5, 5, 0);
            let lhs = d.exp_apply(&(&v * &w)).unwrap();
            assert_eq!(lhs, &d.exp_apply(&v).unwrap() * &d.exp_apply(&w).unwrap());
        }
        let mut neg = d.clone();
        neg.images = neg.images.iter().map(|s| s.scale(&int(-1))).collect();
        let id = d.exp().unwrap().compose(&neg.exp().unwrap()).unwrap();
        assert_eq!(id, Automorphism::identity(2, 5));
    }

    #[test]
    fn non_nilpotent_derivation_is_detected() {
        // d(X_1) = X_1 has no nilpotent behaviour.
        let d = Derivation::new(vec![Series::var(2, 4, 1), Series::zero(2, 4)]).unwrap();
        assert!(matches!(d.exp_apply(&Series::var(2, 4, 1)), Err(Error::NilpotencyCapExceeded(_))));
        assert!(Derivation::new(vec![Series::one(1, 3)]).is_err());
    }

    #[test]
    fn inverse_and_powers() {
        let rho = genus_one(4);
        let t = twist(&rho, &rat(1, 3), &GroupWord::generator(2, 1)).unwrap();
        let inv = t.inverse().unwrap();
        assert_eq!(t.compose(&inv).unwrap(), Automorphism::identity(2, 4));
        assert_eq!(inv.compose(&t).unwrap(), Automorphism::identity(2, 4));
        assert_eq!(t.pow(-1).unwrap(), twist(&rho, &rat(-1, 3), &GroupWord::generator(2, 1)).unwrap());
    }

    #[test]
    fn genus_one_twist_along_a() {
        let rho = genus_one(5);
        let (a, b) = (GroupWord::generator(2, 1), GroupWord::generator(2, 2));
        let t = twist(&rho, &rat(1, 2), &a).unwrap();
        assert_eq!(t.images()[0], Series::embed_word(&a, 5));
        assert_eq!(t.images()[1], Series::embed_word(&b.mul(&a.inverse()), 5));
        assert_eq!(twist(&rho, &int(0), &a).unwrap(), Automorphism::identity(2, 5));
    }

    #[test]
    fn isotropy_is_enforced() {
        let identity_form =
            NablaElement::new(&Series::monomial(2, 6, &[1, 1], int(1)) + &Series::monomial(2, 6, &[2, 2], int(1)))
                .unwrap()
                .pairing()
                .unwrap();
        assert!(matches!(twist(&identity_form, &int(1), &GroupWord::generator(2, 1)), Err(Error::Isotropy(_))));
    }
}
