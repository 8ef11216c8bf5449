//! Derived forms `sigma(a, b) = b a^{eta(a,b)}`: exact, and on the completion through the
//! coproduct (so that `v^u` is never needed for non-group-like arguments).

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{check_rank, Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::hopf::{antipode, coproduct, is_group_like};
use crate::pairing::{ExactPairing, TruncatedPairing};
use crate::scalar::{int, Rational};
use crate::series::{Monomial, Series};
use crate::word::GroupWord;

type GA = GroupAlgebraElement;

/// Right derived form `sigma^eta`, extended bilinearly from group elements.
pub fn derived_form_exact(eta: &ExactPairing, a: &GA, b: &GA) -> Result<GA> {
    check_rank(eta.rank(), a.rank())?;
    check_rank(eta.rank(), b.rank())?;
    let mut out = GA::zero(eta.rank());
    for (x, kx) in a.terms() {
        let xe = GA::word(x);
        for (y, ky) in b.terms() {
            let ye = GA::word(y);
            let r = eta.eval(&xe, &ye)?;
            out = &out + &(&ye * &xe.conj_sum(&r)).scale(&(kx * ky));
        }
    }
    Ok(out)
}

/// Left derived form: `(a, b) -> b^{bar(eta(a, b))} a` on group elements.
pub fn left_derived_form_exact(eta: &ExactPairing, a: &GA, b: &GA) -> Result<GA> {
    check_rank(eta.rank(), a.rank())?;
    check_rank(eta.rank(), b.rank())?;
    let mut out = GA::zero(eta.rank());
    for (x, kx) in a.terms() {
        let xe = GA::word(x);
        for (y, ky) in b.terms() {
            let ye = GA::word(y);
            let r = eta.eval(&xe, &ye)?.bar();
            out = &out + &(&ye.conj_sum(&r) * &xe).scale(&(kx * ky));
        }
    }
    Ok(out)
}

fn monomial_series(rank: usize, cap: usize, m: &Monomial) -> Series {
    Series::monomial(rank, cap, m.letters(), Rational::one())
}

/// `w^r = sum S(r') w r''`, which is `x^{-1} w x` for group-like `r = x`.
pub fn conj_sum(w: &Series, r: &Series) -> Series {
    let cap = w.cap().min(r.cap());
    let rank = w.rank();
    let mut antipodes: HashMap<Monomial, Series> = HashMap::new();
    let mut out = Series::zero(rank, cap);
    for (legs, k) in coproduct(&r.truncate(cap)).terms() {
        let s = antipodes.entry(legs[0].clone()).or_insert_with(|| antipode(&monomial_series(rank, cap, &legs[0])));
        let term = &(&*s * w) * &monomial_series(rank, cap, &legs[1]);
        out = &out + &term.scale(k);
    }
    out
}

/// The element of `Q[pi]` mapping to `X_{i_1} ... X_{i_k}`: `prod (x_{i_j} - 1)`.
pub fn monomial_preimage(rank: usize, m: &Monomial) -> GA {
    let mut out = GA::one(rank);
    for &l in m.letters() {
        out = &out * &GA::generator_minus_one(rank, l as usize);
    }
    out
}

/// A preimage in `Q[pi]` of a truncated series.
pub fn series_preimage(u: &Series) -> GA {
    let mut out = GA::zero(u.rank());
    for (m, k) in u.terms() {
        out = &out + &monomial_preimage(u.rank(), m).scale(k);
    }
    out
}

/// `w^u` computed through a preimage of `u` in `Q[pi]`, by exact conjugation and embedding.
pub fn conj_sum_by_words(w: &Series, u: &GA) -> Series {
    let cap = w.cap();
    let mut out = Series::zero(w.rank(), cap);
    for (x, k) in u.terms() {
        let conj = &(&Series::embed_word(&x.inverse(), cap) * w) * &Series::embed_word(x, cap);
        out = &out + &conj.scale(k);
    }
    out
}

/// `sigma^rho(u, v) = sum v'' S(r') u' r''` with `r = rho(u'', v')`, determined modulo degree
/// `min(cap(u) - 1, cap(v) - 1, cap(rho))`.
pub fn derived_form_truncated(rho: &TruncatedPairing, u: &Series, v: &Series) -> Result<Series> {
    check_rank(rho.rank(), u.rank())?;
    check_rank(rho.rank(), v.rank())?;
    let rank = rho.rank();
    let cap = rho.cap().min(u.cap().saturating_sub(1)).min(v.cap().saturating_sub(1));
    // u' grouped by u'', and v'' grouped by v'.
    let mut u_legs: BTreeMap<Monomial, Series> = BTreeMap::new();
    for (legs, k) in coproduct(u).terms() {
        if legs[1].is_empty() || legs[0].len() >= cap {
            continue;
        }
        let entry = u_legs.entry(legs[1].clone()).or_insert_with(|| Series::zero(rank, cap));
        *entry = &*entry + &monomial_series(rank, cap, &legs[0]).scale(k);
    }
    let mut v_legs: BTreeMap<Monomial, Series> = BTreeMap::new();
    for (legs, k) in coproduct(v).terms() {
        if legs[0].is_empty() || legs[1].len() >= cap {
            continue;
        }
        let entry = v_legs.entry(legs[0].clone()).or_insert_with(|| Series::zero(rank, cap));
        *entry = &*entry + &monomial_series(rank, cap, &legs[1]).scale(k);
    }
    let mut out = Series::zero(rank, cap);
    for (u2, u1) in &u_legs {
        for (v1, v2) in &v_legs {
            if u2.len() + v1.len() - 2 >= cap {
                continue;
            }
            let r = eval_on_monomials(rho, u2, v1, cap);
            if r.is_zero() {
                continue;
            }
            out = &out + &(v2 * &conj_sum(u1, &r));
        }
    }
    Ok(out)
}

/// `rho(p X_i, X_j q) = p rho_ij q`.
fn eval_on_monomials(rho: &TruncatedPairing, a: &Monomial, b: &Monomial, cap: usize) -> Series {
    let rank = rho.rank();
    let (p, i) = a.letters().split_at(a.len() - 1);
    let (j, q) = b.letters().split_at(1);
    let entry = rho.entry(i[0] as usize, j[0] as usize);
    let p = Series::monomial(rank, cap, p, Rational::one());
    let q = Series::monomial(rank, cap, q, Rational::one());
    &(&p * entry) * &q
}

/// `sigma(k log^2 a, b) = 2k b (log a)^{rho(a, b)}` for group-like `a`, `b`, with `rho(a, b)`
/// supplied directly. The result is determined modulo degree `min(cap a, cap b, cap rho_ab + 1)`.
pub fn sigma_log_squared(k: &Rational, a: &Series, b: &Series, rho_ab: &Series) -> Result<Series> {
    check_rank(a.rank(), b.rank())?;
    check_rank(a.rank(), rho_ab.rank())?;
    if !is_group_like(a) || !is_group_like(b) {
        return Err(Error::Domain("sigma_log_squared needs group-like arguments".into()));
    }
    let cap = a.cap().min(b.cap()).min(rho_ab.cap() + 1);
    if k.is_zero() {
        return Ok(Series::zero(a.rank(), cap));
    }
    let log_a = a.truncate(cap).log()?;
    let conjugated = conj_sum_by_words(&log_a, &series_preimage(rho_ab));
    Ok((b * &conjugated).scale(&(k * int(2))))
}

/// `x^{-1} w x` for a group word `x`.
pub fn conjugate_series(w: &Series, x: &GroupWord) -> Series {
    let cap = w.cap();
    &(&Series::embed_word(&x.inverse(), cap) * w) * &Series::embed_word(x, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    fn random_exact(sampler: &mut Sampler) -> ExactPairing {
        let n = sampler.rank();
        let matrix = (0..n).map(|_| (0..n).map(|_| sampler.element(2, 2)).collect()).collect();
        ExactPairing::new(matrix).unwrap()
    }

    #[test]
    fn exact_derived_form_basics() {
        let mut sampler = Sampler::new(41, 2);
        for _ in 0..20 {
            let eta = random_exact(&mut sampler);
            let (a, b) = (sampler.word(3), sampler.word(3));
            let (ae, be) = (GA::word(&a), GA::word(&b));
            let sigma = derived_form_exact(&eta, &ae, &be).unwrap();
            assert_eq!(sigma.augment(), eta.eval(&ae, &be).unwrap().augment());
            assert!(derived_form_exact(&eta, &GA::one(2), &be).unwrap().is_zero());
            assert!(derived_form_exact(&eta, &ae, &GA::one(2)).unwrap().is_zero());
            let c = sampler.element(2, 3);
            let x1x2 = GA::word(&GroupWord::from_letters(2, &[1, 2]).unwrap());
            let x2x1 = GA::word(&GroupWord::from_letters(2, &[2, 1]).unwrap());
            assert_eq!(derived_form_exact(&eta, &x1x2, &c).unwrap(), derived_form_exact(&eta, &x2x1, &c).unwrap());
        }
    }

    #[test]
    fn left_form_is_right_form_of_transpose() {
        let mut sampler = Sampler::new(42, 2);
        for _ in 0..10 {
            let eta = random_exact(&mut sampler);
            let (a, b) = (sampler.element(2, 3), sampler.element(2, 3));
            assert_eq!(
                left_derived_form_exact(&eta, &a, &b).unwrap(),
                derived_form_exact(&eta.transpose(), &b, &a).unwrap()
            );
        }
    }

    #[test]
    fn inner_pairings_have_zero_derived_form() {
        let mut sampler = Sampler::new(43, 2);
        let e = sampler.element(2, 2);
        let eta = ExactPairing::inner(&e);
        for _ in 0..10 {
            let (a, b) = (sampler.element(2, 3), sampler.element(2, 3));
            assert!(derived_form_exact(&eta, &a, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn hopf_conjugation_matches_word_conjugation() {
        let mut sampler = Sampler::new(44, 2);
        for _ in 0..10 {
            let w = sampler.series(5, 4, 0);
            let u = sampler.element(3, 3);
            assert_eq!(conj_sum(&w, &Series::embed(&u, 5)), conj_sum_by_words(&w, &u));
        }
    }

    #[test]
    fn truncated_form_matches_exact_layer() {
        let mut sampler = Sampler::new(45, 2);
        for _ in 0..10 {
            let eta = random_exact(&mut sampler);
            let rho = eta.completion(4);
            let (a, b) = (sampler.element(2, 3), sampler.element(2, 3));
            let exact = Series::embed(&derived_form_exact(&eta, &a, &b).unwrap(), 4);
            let truncated = derived_form_truncated(&rho, &Series::embed(&a, 5), &Series::embed(&b, 5)).unwrap();
            assert_eq!(truncated, exact);
        }
    }

    #[test]
    fn log_squared_routes_agree() {
        let mut sampler = Sampler::new(46, 2);
        for _ in 0..5 {
            let eta = random_exact(&mut sampler);
            let rho = eta.completion(5);
            let (a, b) = (sampler.word(3), sampler.word(3));
            let (a, b) = (Series::embed_word(&a, 6), Series::embed_word(&b, 6));
            let k = sampler.coefficient();
            let log_sq = a.log().unwrap().pow(2).scale(&k);
            let rho_ab = rho.eval(&a, &b).unwrap();
            let direct = sigma_log_squared(&k, &a, &b, &rho_ab).unwrap();
            let condensed = derived_form_truncated(&rho, &log_sq, &b).unwrap();
            assert!(direct.agrees_with(&condensed), "{direct}\n{condensed}");
            assert!(sigma_log_squared(&int(0), &a, &b, &rho_ab).unwrap().is_zero());
        }
        let x = Series::var(2, 4, 1);
        assert!(sigma_log_squared(&int(1), &x, &x, &x).is_err());
    }
}
