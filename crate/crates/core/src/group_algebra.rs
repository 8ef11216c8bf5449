//! The group algebra `Q[pi]` of a free group, with augmentation, bar involution, Fox
//! derivatives and the conjugation sum `v^u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_rank, Result};
use crate::scalar::Rational;
use crate::word::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    rank: usize,
    terms: BTreeMap<GroupWord, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn accumulate(terms: &mut BTreeMap<GroupWord, Rational>, word: GroupWord, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(word) {
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

impl GroupAlgebraElement {
    pub fn zero(rank: usize) -> Self {
        GroupAlgebraElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::scalar(rank, Rational::one())
    }

    pub fn scalar(rank: usize, k: Rational) -> Self {
        Self::monomial(GroupWord::identity(rank), k)
    }

    pub fn word(word: &GroupWord) -> Self {
        Self::monomial(word.clone(), Rational::one())
    }

    pub fn monomial(word: GroupWord, k: Rational) -> Self {
        let mut out = Self::zero(word.rank());
        accumulate(&mut out.terms, word, k);
        out
    }

    /// `x_i - 1`.
    pub fn generator_minus_one(rank: usize, i: usize) -> Self {
        &Self::word(&GroupWord::generator(rank, i)) - &Self::one(rank)
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (GroupWord, Rational)>) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (w, k) in terms {
            check_rank(rank, w.rank())?;
            accumulate(&mut out.terms, w, k);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &GroupWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        GroupAlgebraElement { rank: self.rank, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    pub fn augment(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Reverses and inverts every word.
    pub fn bar(&self) -> Self {
        GroupAlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(self * other)
    }

    /// Left (`a = aug(a) + sum a_i (x_i - 1)`) or right (`a = aug(a) + sum (x_i - 1) a^i`)
    /// Fox derivative with respect to generator `i` (1-based).
    pub fn fox_derivative(&self, side: Side, i: usize) -> Self {
        let gen = i as i32;
        let mut out = Self::zero(self.rank);
        for (word, k) in &self.terms {
            let letters = word.letters();
            for (s, &l) in letters.iter().enumerate() {
                if l.abs() != gen {
                    continue;
                }
                let (piece, sign) = match (side, l > 0) {
                    (Side::Left, true) => (&letters[..s], 1),
                    (Side::Left, false) => (&letters[..=s], -1),
                    (Side::Right, true) => (&letters[s + 1..], 1),
                    (Side::Right, false) => (&letters[s..], -1),
                };
                let w = GroupWord::from_letters(self.rank, piece).expect("subword of a reduced word");
                let coeff = if sign > 0 { k.clone() } else { -k.clone() };
                accumulate(&mut out.terms, w, coeff);
            }
        }
        out
    }

    /// `v^u = sum_x k_x x^{-1} v x` for `u = sum_x k_x x`.
    pub fn conj_sum(&self, u: &Self) -> Self {
        assert_eq!(self.rank, u.rank, "group algebra rank mismatch");
        let mut out = Self::zero(self.rank);
        for (x, kx) in &u.terms {
            let x_inv = x.inverse();
            for (w, kw) in &self.terms {
                accumulate(&mut out.terms, x_inv.mul(w).mul(x), kx * kw);
            }
        }
        out
    }

    /// Projection to `Q[conjugacy classes]` via cyclic normal forms.
    pub fn cyclic_projection(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, k) in &self.terms {
            accumulate(&mut out.terms, w.cyclic_normal_form(), k.clone());
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Maximal word length among the terms.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(GroupWord::len).max().unwrap_or(0)
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.rank, other.rank, "group algebra rank mismatch");
        let mut out = self.clone();
        for (w, k) in &other.terms {
            accumulate(&mut out.terms, w.clone(), k.clone());
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        self + &(-other)
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        GroupAlgebraElement { rank: self.rank, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.rank, other.rank, "group algebra rank mismatch");
        let mut out = GroupAlgebraElement::zero(self.rank);
        for (w1, k1) in &self.terms {
            for (w2, k2) in &other.terms {
                accumulate(&mut out.terms, w1.mul(w2), k1 * k2);
            }
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, k)| format!("({k}) {w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::scalar::int;

    fn word(letters: &[i32]) -> GroupAlgebraElement {
        GroupAlgebraElement::word(&GroupWord::from_letters(2, letters).unwrap())
    }

    #[test]
    fn arithmetic_examples() {
        let x = &word(&[1]).scale(&int(3)) - &word(&[2, 1]).scale(&int(2));
        assert_eq!(x.augment(), int(1));
        assert_eq!(word(&[1, 2]).scale(&int(2)).bar(), word(&[-2, -1]).scale(&int(2)));
        let lhs = &GroupAlgebraElement::generator_minus_one(2, 1) * &word(&[-1]);
        assert_eq!(lhs, &GroupAlgebraElement::one(2) - &word(&[-1]));
    }

    #[test]
    fn fox_examples() {
        let x1x2 = word(&[1, 2]);
        assert_eq!(x1x2.fox_derivative(Side::Left, 1), GroupAlgebraElement::one(2));
        assert_eq!(x1x2.fox_derivative(Side::Left, 2), word(&[1]));
        assert_eq!(word(&[-1]).fox_derivative(Side::Left, 1), -&word(&[-1]));
        assert_eq!(x1x2.fox_derivative(Side::Right, 1), word(&[2]));
        assert_eq!(word(&[-1]).fox_derivative(Side::Right, 1), -&word(&[-1]));
    }

    #[test]
    fn conj_sum_examples() {
        let v = &word(&[2]) + &word(&[1, 2]);
        assert_eq!(v.conj_sum(&GroupAlgebraElement::one(2)), v);
        let a = word(&[1]);
        let a_minus_one = &a - &GroupAlgebraElement::one(2);
        assert_eq!(v.conj_sum(&a_minus_one), &(&word(&[-1]) * &(&v * &a)) - &v);
        let twice = &a + &a;
        assert_eq!(word(&[2]).conj_sum(&twice), word(&[-1, 2, 1]).scale(&int(2)));
    }

    #[test]
    fn randomized_laws() {
        let mut sampler = Sampler::new(7, 3);
        for _ in 0..100 {
            let x = sampler.element(3, 4);
            let y = sampler.element(3, 4);
            assert_eq!((&x * &y).augment(), x.augment() * y.augment());
            for i in 1..=3 {
                // left: d(xy) = d(x) aug(y) + x d(y); right: d(xy) = d(x) y + aug(x) d(y)
                let left =
                    &x.fox_derivative(Side::Left, i).scale(&y.augment()) + &(&x * &y.fox_derivative(Side::Left, i));
                assert_eq!((&x * &y).fox_derivative(Side::Left, i), left);
                let right =
                    &(&x.fox_derivative(Side::Right, i) * &y) + &y.fox_derivative(Side::Right, i).scale(&x.augment());
                assert_eq!((&x * &y).fox_derivative(Side::Right, i), right);
            }
            let mut rebuilt = GroupAlgebraElement::scalar(3, x.augment());
            let mut rebuilt_right = rebuilt.clone();
            for i in 1..=3 {
                let frame = GroupAlgebraElement::generator_minus_one(3, i);
                rebuilt = &rebuilt + &(&x.fox_derivative(Side::Left, i) * &frame);
                rebuilt_right = &rebuilt_right + &(&frame * &x.fox_derivative(Side::Right, i));
            }
            assert_eq!(rebuilt, x);
            assert_eq!(rebuilt_right, x);
        }
    }

    #[test]
    fn conjugation_identities() {
        let mut sampler = Sampler::new(11, 3);
        for _ in 0..50 {
            let a_word = sampler.word(4);
            let a = GroupAlgebraElement::word(&a_word);
            let u = sampler.element(2, 3);
            let v = sampler.element(2, 3);
            assert_eq!(&a * &v.conj_sum(&(&u * &a)), &v.conj_sum(&u) * &a);
            assert_eq!((&a * &v).conj_sum(&(&a * &u)), (&v * &a).conj_sum(&u));
        }
    }
}
