//! Complete Hopf algebra structure on the truncated completion: coproduct, antipode, counit,
//! and the group-like / primitive predicates. Tensors live in `A^^{(x)r}` modulo total degree.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::One;

use crate::scalar::Rational;
use crate::series::{accumulate, Monomial, Series};

/// An element of the `arity`-fold completed tensor power, modulo total degree `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    cap: usize,
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Rational>,
}

impl Tensor {
    pub fn zero(rank: usize, cap: usize, arity: usize) -> Self {
        Tensor { rank, cap, arity, terms: BTreeMap::new() }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, legs: Vec<Monomial>, k: Rational) {
        assert_eq!(legs.len(), self.arity);
        if legs.iter().map(Monomial::len).sum::<usize>() < self.cap {
            accumulate(&mut self.terms, legs, k);
        }
    }

    /// `s_1 (x) ... (x) s_r`, truncated at the smallest cap.
    pub fn product(factors: &[&Series]) -> Self {
        let rank = factors[0].rank();
        let cap = factors.iter().map(|s| s.cap()).min().unwrap();
        let mut out = Tensor::zero(rank, cap, factors.len());
        let mut partial: Vec<(Vec<Monomial>, usize, Rational)> = vec![(Vec::new(), 0, Rational::one())];
        for factor in factors {
            let mut next = Vec::new();
            for (legs, degree, k) in &partial {
                for (m, c) in factor.terms() {
                    if degree + m.len() >= cap {
                        break;
                    }
                    let mut legs = legs.clone();
                    legs.push(m.clone());
                    next.push((legs, degree + m.len(), k * c));
                }
            }
            partial = next;
        }
        for (legs, _, k) in partial {
            accumulate(&mut out.terms, legs, k);
        }
        out
    }

    /// Multiplies tensors legwise.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.arity, other.arity);
        let cap = self.cap.min(other.cap);
        let mut out = Tensor::zero(self.rank, cap, self.arity);
        for (l1, k1) in &self.terms {
            let d1: usize = l1.iter().map(Monomial::len).sum();
            for (l2, k2) in &other.terms {
                let d2: usize = l2.iter().map(Monomial::len).sum();
                if d1 + d2 >= cap {
                    continue;
                }
                let legs = l1.iter().zip(l2).map(|(a, b)| a.concat(b)).collect();
                accumulate(&mut out.terms, legs, k1 * k2);
            }
        }
        out
    }

    /// Applies a linear map on one leg; `f` sends a monomial (at the given remaining cap) to a
    /// series.
    pub fn map_leg(&self, leg: usize, f: &dyn Fn(&Monomial, usize) -> Series) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.cap, self.arity);
        for (legs, k) in &self.terms {
            let others: usize = legs.iter().enumerate().filter(|(i, _)| *i != leg).map(|(_, m)| m.len()).sum();
            let image = f(&legs[leg], self.cap - others);
            for (m, c) in image.terms() {
                let mut new_legs = legs.clone();
                new_legs[leg] = m.clone();
                out.insert(new_legs, k * c);
            }
        }
        out
    }

    /// Multiplies all legs together in the given order into a single series.
    pub fn multiply_legs(&self, order: &[usize]) -> Series {
        let mut out = Series::zero(self.rank, self.cap);
        for (legs, k) in &self.terms {
            let mut letters = Vec::new();
            for &i in order {
                letters.extend_from_slice(legs[i].letters());
            }
            out = &out + &Series::monomial(self.rank, self.cap, &letters, k.clone());
        }
        out
    }

    /// Total degree of the lowest nonzero term, or the cap.
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(|legs| legs.iter().map(Monomial::len).sum()).min().unwrap_or(self.cap)
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, other: &Tensor) -> Tensor {
        assert_eq!(self.arity, other.arity);
        let cap = self.cap.min(other.cap);
        let mut out = Tensor::zero(self.rank, cap, self.arity);
        for (legs, k) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(legs.clone(), k.clone());
        }
        out
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, other: &Tensor) -> Tensor {
        let mut negated = other.clone();
        for v in negated.terms.values_mut() {
            *v = -v.clone();
        }
        self + &negated
    }
}

/// `Delta(X_i) = X_i (x) 1 + 1 (x) X_i + X_i (x) X_i`, extended multiplicatively: each letter of a
/// monomial goes to the left leg, the right leg, or both.
pub fn coproduct(u: &Series) -> Tensor {
    let mut out = Tensor::zero(u.rank(), u.cap(), 2);
    for (m, k) in u.terms() {
        let mut partial: Vec<(Vec<u8>, Vec<u8>)> = vec![(Vec::new(), Vec::new())];
        for &l in m.letters() {
            let mut next = Vec::with_capacity(partial.len() * 3);
            for (left, right) in partial {
                if left.len() + right.len() + 1 < u.cap() {
                    let mut a = left.clone();
                    a.push(l);
                    next.push((a, right.clone()));
                    let mut b = right.clone();
                    b.push(l);
                    next.push((left.clone(), b));
                }
                if left.len() + right.len() + 2 < u.cap() {
                    let mut a = left;
                    a.push(l);
                    let mut b = right;
                    b.push(l);
                    next.push((a, b));
                }
            }
            partial = next;
        }
        for (left, right) in partial {
            out.insert(vec![Monomial(left), Monomial(right)], k.clone());
        }
    }
    out
}

/// The anti-automorphism with `S(X_i) = (1 + X_i)^{-1} - 1`.
pub fn antipode(u: &Series) -> Series {
    let rank = u.rank();
    let cap = u.cap();
    let images: Vec<Series> = (1..=rank)
        .map(|i| {
            let mut s = Series::zero(rank, cap);
            for k in 1..cap {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                s = &s + &Series::monomial(rank, cap, &vec![i as u8; k], Rational::from_integer(sign.into()));
            }
            s
        })
        .collect();
    let mut reversed = Series::zero(rank, cap);
    for (m, k) in u.terms() {
        let letters: Vec<u8> = m.letters().iter().rev().copied().collect();
        reversed = &reversed + &Series::monomial(rank, cap, &letters, k.clone());
    }
    reversed.substitute(&images).expect("antipode images lie in the augmentation ideal")
}

pub fn counit(u: &Series) -> Rational {
    u.constant_term()
}

pub fn is_group_like(u: &Series) -> bool {
    !u.is_zero() && coproduct(u) == Tensor::product(&[u, u])
}

pub fn is_primitive(u: &Series) -> bool {
    let one = Series::one(u.rank(), u.cap());
    coproduct(u) == &Tensor::product(&[u, &one]) + &Tensor::product(&[&one, u])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::GroupAlgebraElement;
    use crate::random::Sampler;
    use crate::scalar::int;

    #[test]
    fn coproduct_of_a_generator() {
        let x1 = Series::var(2, 3, 1);
        let one = Series::one(2, 3);
        let expected =
            &(&Tensor::product(&[&x1, &one]) + &Tensor::product(&[&one, &x1])) + &Tensor::product(&[&x1, &x1]);
        assert_eq!(coproduct(&x1), expected);
    }

    #[test]
    fn group_likes_and_primitives() {
        let mut sampler = Sampler::new(1, 2);
        for _ in 0..10 {
            let w = Series::embed_word(&sampler.word(5), 5);
            assert!(is_group_like(&w));
            assert!(is_primitive(&w.log().unwrap()));
        }
        let x1 = Series::embed_word(&crate::word::GroupWord::generator(2, 1), 5);
        assert!(is_primitive(&x1.log().unwrap()));
        assert!(!is_primitive(&Series::var(2, 5, 1)));
        assert!(!is_group_like(&Series::var(2, 5, 1).scale(&int(2))));
    }

    #[test]
    fn hopf_axioms() {
        let mut sampler = Sampler::new(2, 2);
        for cap in 2..=6 {
            for _ in 0..4 {
                let a = sampler.element(3, 3);
                let b = sampler.element(3, 3);
                let u = Series::embed(&a, cap);
                let v = Series::embed(&b, cap);
                let du = coproduct(&u);
                let counit_left = du.map_leg(0, &|m, c| {
                    if m.is_empty() {
                        Series::one(2, c)
                    } else {
                        Series::zero(2, c)
                    }
                });
                assert_eq!(counit_left.multiply_legs(&[0, 1]), u);
                assert_eq!(coproduct(&(&u * &v)), du.mul(&coproduct(&v)));
                assert_eq!(antipode(&(&u * &v)), &antipode(&v) * &antipode(&u));
                let convolution = du.map_leg(0, &|m, c| antipode(&Series::monomial(2, c, m.letters(), int(1))));
                assert_eq!(convolution.multiply_legs(&[0, 1]), Series::constant(2, cap, a.augment()));
                assert_eq!(Series::embed(&a.bar(), cap), antipode(&u));
            }
        }
    }

    #[test]
    fn lie_correspondence_in_low_degree() {
        let mut sampler = Sampler::new(4, 3);
        for _ in 0..10 {
            let w = sampler.word(4);
            let u = Series::embed_word(&w, 5);
            assert_eq!(u.without_constant().constant_term(), int(0));
            let trivial_in_homology = w.abelianization().iter().all(|&e| e == 0);
            assert_eq!(trivial_in_homology, u.log().unwrap().filtration_degree() >= 2);
        }
        let commutator = GroupAlgebraElement::word(
            &crate::word::GroupWord::generator(3, 1).commutator(&crate::word::GroupWord::generator(3, 2)),
        );
        assert!(Series::embed(&commutator, 5).log().unwrap().filtration_degree() >= 2);
    }
}
