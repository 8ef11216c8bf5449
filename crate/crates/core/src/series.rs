//! Truncated completion `A^/A^_M`: non-commutative polynomials in `X_i = x_i - 1` modulo
//! monomials of total degree `>= M`.
//!
//! Arithmetic operators combine series of different caps by truncating to the smaller cap,
//! which is the precision at which the result is determined. The `checked_*` forms require
//! equal caps.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_rank, Error, Result};
use crate::group_algebra::{GroupAlgebraElement, Side};
use crate::scalar::{factorial_inverse, int, Rational};
use crate::word::GroupWord;

/// A word in the variables `X_1..X_n`, stored as 1-based indices. Ordered by length, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    rank: usize,
    cap: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Series {
    pub fn zero(rank: usize, cap: usize) -> Self {
        Series { rank, cap, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, cap: usize) -> Self {
        Self::constant(rank, cap, Rational::one())
    }

    pub fn constant(rank: usize, cap: usize, k: Rational) -> Self {
        Self::monomial(rank, cap, &[], k)
    }

    /// The variable `X_i` (1-based).
    pub fn var(rank: usize, cap: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "variable index {i} out of range 1..={rank}");
        Self::monomial(rank, cap, &[i as u8], Rational::one())
    }

    pub fn monomial(rank: usize, cap: usize, letters: &[u8], k: Rational) -> Self {
        let mut out = Self::zero(rank, cap);
        if letters.len() < cap {
            accumulate(&mut out.terms, Monomial(letters.to_vec()), k);
        }
        out
    }

    pub fn from_terms(rank: usize, cap: usize, terms: impl IntoIterator<Item = (Vec<u8>, Rational)>) -> Result<Self> {
        let mut out = Self::zero(rank, cap);
        for (letters, k) in terms {
            if letters.iter().any(|&l| l == 0 || l as usize > rank) {
                return Err(Error::Parse(format!("monomial {letters:?} out of range for rank {rank}")));
            }
            if letters.len() < cap {
                accumulate(&mut out.terms, Monomial(letters), k);
            }
        }
        Ok(out)
    }

    /// `iota(x)` for a group word: `x_i -> 1 + X_i`, `x_i^{-1} -> 1 - X_i + X_i^2 - ...`.
    pub fn embed_word(word: &GroupWord, cap: usize) -> Self {
        let rank = word.rank();
        let mut out = Self::one(rank, cap);
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize;
            let factor = if l > 0 {
                &Self::one(rank, cap) + &Self::var(rank, cap, i)
            } else {
                let mut f = Self::zero(rank, cap);
                for k in 0..cap {
                    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                    f = &f + &Self::monomial(rank, cap, &vec![i as u8; k], sign);
                }
                f
            };
            out = &out * &factor;
        }
        out
    }

    /// The completion map `iota: A -> A^/A^_M`.
    pub fn embed(a: &GroupAlgebraElement, cap: usize) -> Self {
        let mut out = Self::zero(a.rank(), cap);
        for (w, k) in a.terms() {
            out = &out + &Self::embed_word(w, cap).scale(k);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, letters: &[u8]) -> Rational {
        self.terms.get(&Monomial(letters.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops monomials of length `>= cap`. A cap above the current one is clamped.
    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        Series {
            rank: self.rank,
            cap,
            terms: self.terms.iter().filter(|(m, _)| m.len() < cap).map(|(m, k)| (m.clone(), k.clone())).collect(),
        }
    }

    /// Reinterprets the series at a higher cap, treating it as an exact polynomial.
    pub fn with_cap(&self, cap: usize) -> Self {
        if cap <= self.cap {
            return self.truncate(cap);
        }
        Series { rank: self.rank, cap, terms: self.terms.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank, self.cap);
        }
        Series { rank: self.rank, cap: self.cap, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        check_rank(self.rank, other.rank)?;
        if self.cap != other.cap {
            return Err(Error::CapMismatch { left: self.cap, right: other.cap });
        }
        Ok(())
    }

    /// Least length of a monomial with nonzero coefficient, or the cap for zero.
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().next().map_or(self.cap, Monomial::len)
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        Series {
            rank: self.rank,
            cap: self.cap,
            terms: self.terms.iter().filter(|(m, _)| m.len() == degree).map(|(m, k)| (m.clone(), k.clone())).collect(),
        }
    }

    /// `self - constant_term`.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Monomial(Vec::new()));
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(self.rank, self.cap);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Two-sided inverse by the Neumann series `c^{-1} sum_i (1 - c^{-1} u)^i`.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible("constant term is zero".into()));
        }
        let c_inv = c.recip();
        let defect = &Self::one(self.rank, self.cap) - &self.scale(&c_inv);
        let mut power = Self::one(self.rank, self.cap);
        let mut sum = Self::zero(self.rank, self.cap);
        for _ in 0..self.cap.max(1) {
            sum = &sum + &power;
            power = &power * &defect;
        }
        Ok(sum.scale(&c_inv))
    }

    /// `sum_{k>=1} (-1)^{k+1} (u - 1)^k / k`; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain("log requires constant term 1".into()));
        }
        let x = self.without_constant();
        let mut power = x.clone();
        let mut out = Self::zero(self.rank, self.cap);
        for k in 1..self.cap.max(1) {
            let coeff = Rational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
            out = &out + &power.scale(&coeff);
            power = &power * &x;
        }
        Ok(out)
    }

    /// `sum_k u^k / k!`; requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain("exp requires constant term 0".into()));
        }
        let mut power = Self::one(self.rank, self.cap);
        let mut out = Self::zero(self.rank, self.cap);
        for k in 0..self.cap.max(1) {
            out = &out + &power.scale(&factorial_inverse(k));
            power = &power * self;
        }
        Ok(out)
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Left derivative strips a trailing `X_i`, right derivative a leading `X_i`. The result
    /// is determined modulo degree `cap - 1`.
    pub fn fox_derivative(&self, side: Side, i: usize) -> Self {
        let gen = i as u8;
        let cap = self.cap.saturating_sub(1);
        let mut out = Self::zero(self.rank, cap);
        for (m, k) in &self.terms {
            let letters = m.letters();
            let stripped = match side {
                Side::Left if letters.last() == Some(&gen) => &letters[..letters.len() - 1],
                Side::Right if letters.first() == Some(&gen) => &letters[1..],
                _ => continue,
            };
            if stripped.len() < cap {
                out.terms.insert(Monomial(stripped.to_vec()), k.clone());
            }
        }
        out
    }

    /// The algebra map `X_i -> images[i-1]`. Images must have no constant term; the output
    /// rank is the images' rank and the cap is the smallest cap involved.
    pub fn substitute(&self, images: &[Series]) -> Result<Self> {
        check_rank(self.rank, images.len())?;
        let target_rank = images.first().map_or(self.rank, |s| s.rank);
        let mut cap = self.cap;
        for image in images {
            check_rank(target_rank, image.rank)?;
            if !image.constant_term().is_zero() {
                return Err(Error::Domain("substituted images must lie in the augmentation ideal".into()));
            }
            cap = cap.min(image.cap);
        }
        let mut memo: HashMap<Vec<u8>, Series> = HashMap::new();
        memo.insert(Vec::new(), Series::one(target_rank, cap));
        let mut out = Series::zero(target_rank, cap);
        for (m, k) in &self.terms {
            if m.len() >= cap {
                continue;
            }
            let value = substitute_monomial(m.letters(), images, cap, &mut memo);
            out = &out + &value.scale(k);
        }
        Ok(out)
    }

    /// Number of stored monomials in each degree.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut counts = vec![0; self.cap];
        for m in self.terms.keys() {
            counts[m.len()] += 1;
        }
        counts
    }

    /// First monomial on which `self` and `other` differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, Rational, Rational)> {
        let diff = self - other;
        diff.terms.keys().next().map(|m| {
            let l = m.letters();
            (m.clone(), self.coefficient(l), other.coefficient(l))
        })
    }

    /// Equality after truncating both sides to the smaller cap.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.rank == other.rank && (self - other).is_zero()
    }

    pub fn format_with(&self, names: &dyn Fn(u8) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, k)) in self.terms.iter().enumerate() {
            let negative = *k < Rational::zero();
            let magnitude = if negative { -k.clone() } else { k.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let vars: Vec<String> = m.letters().iter().map(|&l| names(l)).collect();
            if vars.is_empty() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&vars.join(" "));
            } else {
                out.push_str(&format!("{magnitude} {}", vars.join(" ")));
            }
        }
        out
    }
}

fn substitute_monomial(letters: &[u8], images: &[Series], cap: usize, memo: &mut HashMap<Vec<u8>, Series>) -> Series {
    if let Some(v) = memo.get(letters) {
        return v.clone();
    }
    let (prefix, last) = letters.split_at(letters.len() - 1);
    let head = substitute_monomial(prefix, images, cap, memo);
    let value = (&head * &images[last[0] as usize - 1]).truncate(cap);
    memo.insert(letters.to_vec(), value.clone());
    value
}

impl Add for &Series {
    type Output = Series;
    fn add(self, other: &Series) -> Series {
        assert_eq!(self.rank, other.rank, "series rank mismatch");
        let cap = self.cap.min(other.cap);
        let mut out = self.truncate(cap);
        for (m, k) in &other.terms {
            if m.len() < cap {
                accumulate(&mut out.terms, m.clone(), k.clone());
            }
        }
        out
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, other: &Series) -> Series {
        self + &(-other)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { rank: self.rank, cap: self.cap, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, other: &Series) -> Series {
        assert_eq!(self.rank, other.rank, "series rank mismatch");
        let cap = self.cap.min(other.cap);
        let mut out = Series::zero(self.rank, cap);
        for (m1, k1) in &self.terms {
            if m1.len() >= cap {
                break;
            }
            for (m2, k2) in &other.terms {
                if m1.len() + m2.len() >= cap {
                    break;
                }
                accumulate(&mut out.terms, m1.concat(m2), k1 * k2);
            }
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&|l| format!("X{l}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::scalar::rat;

    fn x(i: usize, cap: usize) -> Series {
        Series::var(2, cap, i)
    }

    fn word(letters: &[i32]) -> GroupWord {
        GroupWord::from_letters(2, letters).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let one = Series::one(2, 3);
        assert_eq!(Series::embed_word(&word(&[1]), 3), &one + &x(1, 3));
        let expected = &(&one - &x(1, 3)) + &Series::monomial(2, 3, &[1, 1], int(1));
        assert_eq!(Series::embed_word(&word(&[-1]), 3), expected);
        let a = &GroupAlgebraElement::word(&word(&[1, 2])) - &GroupAlgebraElement::word(&word(&[2, 1]));
        assert_eq!(Series::embed(&a, 3), x(1, 3).commutator(&x(2, 3)));
    }

    #[test]
    fn arithmetic_examples() {
        let one = Series::one(2, 3);
        let expected = &(&one + &x(1, 3)) + &Series::monomial(2, 3, &[1, 1], int(1));
        assert_eq!((&one - &x(1, 3)).inverse().unwrap(), expected);
        assert!((&x(1, 2) * &x(2, 2)).is_zero());
        let s = &Series::monomial(2, 4, &[1, 2], int(1)) + &Series::monomial(2, 4, &[1, 2, 1], int(1));
        assert_eq!(s.filtration_degree(), 2);
        assert_eq!(Series::zero(2, 4).filtration_degree(), 4);
        assert!(matches!(x(1, 3).inverse(), Err(Error::NotInvertible(_))));
        assert!(matches!(x(1, 3).checked_add(&x(1, 4)), Err(Error::CapMismatch { .. })));
    }

    #[test]
    fn log_exp_examples() {
        let one = Series::one(2, 4);
        let log = (&one + &x(1, 4)).log().unwrap();
        let expected =
            Series::from_terms(2, 4, vec![(vec![1], int(1)), (vec![1, 1], rat(-1, 2)), (vec![1, 1, 1], rat(1, 3))])
                .unwrap();
        assert_eq!(log, expected);
        assert_eq!(Series::zero(2, 4).exp().unwrap(), one);
        assert!(x(1, 4).log().is_err());
        assert!(one.exp().is_err());
    }

    #[test]
    fn bch_through_degree_three() {
        let cap = 4;
        let (a, b) = (x(1, cap), x(2, cap));
        let z = (&a.exp().unwrap() * &b.exp().unwrap()).log().unwrap();
        let ab = a.commutator(&b);
        let expected = &(&(&(&a + &b) + &ab.scale(&rat(1, 2))) + &a.commutator(&ab).scale(&rat(1, 12)))
            + &b.commutator(&b.commutator(&a)).scale(&rat(1, 12));
        assert_eq!(z, expected);
    }

    #[test]
    fn fox_examples() {
        let x2x1 = Series::monomial(2, 4, &[2, 1], int(1));
        assert_eq!(x2x1.fox_derivative(Side::Left, 1), x(2, 3));
        assert_eq!(x2x1.fox_derivative(Side::Right, 2), x(1, 3));
        assert!(x2x1.fox_derivative(Side::Left, 2).is_zero());
    }

    #[test]
    fn embedding_is_compatible_with_the_exact_layer() {
        let mut sampler = Sampler::new(3, 3);
        for _ in 0..30 {
            let a = sampler.element(3, 4);
            let b = sampler.element(3, 4);
            let cap = 5;
            assert_eq!(Series::embed(&(&a * &b), cap), &Series::embed(&a, cap) * &Series::embed(&b, cap));
            assert_eq!(Series::embed(&a, cap).constant_term(), a.augment());
            for side in [Side::Left, Side::Right] {
                for i in 1..=3 {
                    let exact = Series::embed(&a.fox_derivative(side, i), cap - 1);
                    assert_eq!(Series::embed(&a, cap).fox_derivative(side, i), exact);
                }
            }
        }
    }

    #[test]
    fn log_exp_are_inverse_and_power_law_holds() {
        let mut sampler = Sampler::new(5, 2);
        for _ in 0..10 {
            let u = sampler.series(5, 4, 1);
            assert_eq!(u.exp().unwrap().log().unwrap(), u);
            let one_plus = &Series::one(2, 5) + &u;
            assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
            for m in -2i64..=3 {
                let power =
                    if m >= 0 { one_plus.pow(m as usize) } else { one_plus.inverse().unwrap().pow((-m) as usize) };
                assert_eq!(power.log().unwrap(), one_plus.log().unwrap().scale(&int(m)));
            }
        }
    }

    #[test]
    fn substitution_is_multiplicative() {
        let mut sampler = Sampler::new(9, 2);
        let images = vec![sampler.series(5, 3, 1), sampler.series(5, 3, 1)];
        let u = sampler.series(5, 4, 0);
        let v = sampler.series(5, 4, 0);
        let lhs = (&u * &v).substitute(&images).unwrap();
        let rhs = &u.substitute(&images).unwrap() * &v.substitute(&images).unwrap();
        assert_eq!(lhs, rhs);
        assert!(u.substitute(&[Series::one(2, 5), x(1, 5)]).is_err());
    }
}
