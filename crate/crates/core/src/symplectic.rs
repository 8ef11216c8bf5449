//! The completed tensor algebra over `H = H_1(surface)` with its symplectic form: contraction,
//! cyclicization `N`, the derivation pairing, the tensorial pairing with `s(omega)`, and
//! symplectic expansions.
//!
//! Tensor series reuse [`Series`] with variables indexing the basis `a_1, b_1, ..., a_g, b_g`
//! of `H`, but carry the coproduct in which basis vectors are primitive.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::derived::derived_form_truncated;
use crate::error::{Error, Result};
use crate::hopf::Tensor;
use crate::linalg::{self, RationalMatrix};
use crate::pairing::TruncatedPairing;
use crate::random::Sampler;
use crate::report::{Check, Report};
use crate::scalar::{int, rat, Rational};
use crate::series::{Monomial, Series};
use crate::surfaces::SurfaceSpec;
use crate::word::GroupWord;

pub type TensorSeries = Series;

/// `H` with the intersection form of a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    genus: usize,
    intersection: RationalMatrix,
}

impl SymplecticSpace {
    /// Takes the intersection form from the homological form of the surface pairing.
    pub fn new(genus: usize) -> Result<Self> {
        let surface = SurfaceSpec::new(genus, 1)?;
        Ok(SymplecticSpace { genus, intersection: surface.pairing().homological_form() })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dimension(&self) -> usize {
        2 * self.genus
    }

    /// `e_i . e_j` for 1-based basis indices.
    pub fn dot(&self, i: u8, j: u8) -> &Rational {
        &self.intersection[i as usize - 1][j as usize - 1]
    }

    pub fn intersection(&self) -> &RationalMatrix {
        &self.intersection
    }

    /// The `omega` in `H (x) H` with `h ~> omega = -h`, i.e. coefficient matrix `-Q^{-1}`.
    pub fn omega(&self, cap: usize) -> TensorSeries {
        let n = self.dimension();
        let inverse = linalg::invert(&self.intersection).expect("intersection form is non-degenerate");
        let mut out = Series::zero(n, cap);
        for (p, row) in inverse.iter().enumerate() {
            for (q, entry) in row.iter().enumerate() {
                out = &out + &Series::monomial(n, cap, &[p as u8 + 1, q as u8 + 1], -entry.clone());
            }
        }
        out
    }

    /// `(h_1..h_m) ~> (k_1..k_n) = (h_m . k_1) h_1..h_{m-1} k_2..k_n`, modulo degree
    /// `min(cap) - 1`.
    pub fn contraction(&self, u: &TensorSeries, v: &TensorSeries) -> Result<TensorSeries> {
        if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
            return Err(Error::Domain("contraction needs arguments without constant term".into()));
        }
        let cap = u.cap().min(v.cap()).saturating_sub(1);
        let n = self.dimension();
        let mut terms = Vec::new();
        for (h, kh) in u.terms() {
            for (k, kk) in v.terms() {
                if h.len() + k.len() - 2 >= cap {
                    break;
                }
                let dot = self.dot(*h.letters().last().unwrap(), k.letters()[0]);
                if dot.is_zero() {
                    continue;
                }
                let mut w = h.letters()[..h.len() - 1].to_vec();
                w.extend_from_slice(&k.letters()[1..]);
                terms.push((w, kh * kk * dot));
            }
        }
        Series::from_terms(n, cap, terms)
    }

    /// `<u, v>`: each monomial `h_1..h_m` of `u` (with `m >= 1`) acts on `v` by
    /// `k_1..k_n -> -sum_j k_1..k_{j-1} (k_j ~> N(h_1..h_m)) k_{j+1}..k_n`.
    pub fn derivation_pairing(&self, u: &TensorSeries, v: &TensorSeries) -> TensorSeries {
        let cap = u.cap().min(v.cap()).saturating_sub(1);
        let n = self.dimension();
        let mut terms: Vec<(Vec<u8>, Rational)> = Vec::new();
        for (h, kh) in u.terms() {
            let m = h.len();
            if m == 0 {
                continue;
            }
            let letters = h.letters();
            for (k, kk) in v.terms() {
                if k.is_empty() || m + k.len() - 2 >= cap {
                    continue;
                }
                let coeff = -(kh * kk);
                for j in 0..k.len() {
                    for shift in 0..m {
                        // The rotation starting at h_shift, contracted against k_j.
                        let dot = self.dot(k.letters()[j], letters[shift]);
                        if dot.is_zero() {
                            continue;
                        }
                        let mut w = k.letters()[..j].to_vec();
                        w.extend((1..m).map(|t| letters[(shift + t) % m]));
                        w.extend_from_slice(&k.letters()[j + 1..]);
                        terms.push((w, &coeff * dot));
                    }
                }
            }
        }
        Series::from_terms(n, cap, terms).expect("letters in range")
    }

    /// `s(omega) = -1/2 - omega/12 + omega^3/720 - omega^5/30240`, truncated.
    pub fn s_omega(&self, cap: usize) -> TensorSeries {
        let omega = self.omega(cap);
        let n = self.dimension();
        let one = Series::one(n, cap);
        let mut out = Series::zero(n, cap);
        let mut power = one;
        for (num, den) in S_SERIES {
            out = &out + &power.scale(&rat(num, den));
            power = &power * &omega;
        }
        out
    }

    /// `(u - eps u) ~> (v - eps v) + (u - eps u) s(omega) (v - eps v)`.
    pub fn tensorial_rho(&self, u: &TensorSeries, v: &TensorSeries) -> TensorSeries {
        let (u0, v0) = (u.without_constant(), v.without_constant());
        let contracted = self.contraction(&u0, &v0).expect("constant terms removed");
        let s = self.s_omega(u.cap().max(v.cap()));
        &contracted + &(&(&u0 * &s) * &v0)
    }
}

/// Coefficients of `s(z)` in `z^0..z^5`.
pub const S_SERIES: [(i64, i64); 6] = [(-1, 2), (-1, 12), (0, 1), (1, 720), (0, 1), (-1, 30240)];

/// Bernoulli numbers `B_0..B_n` (with `B_1 = -1/2`) from `sum_{k<=n} C(n+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        let mut binom = Rational::one();
        for (k, bk) in b.iter().enumerate() {
            acc += &binom * bk;
            binom = binom * int((m + 1 - k) as i64) / int(k as i64 + 1);
        }
        b.push(-acc / int(m as i64 + 1));
    }
    b
}

/// `N(t)` for homogeneous `t` of degree at least 1: the sum of cyclic rotations.
pub fn cyclicize(t: &TensorSeries) -> Result<TensorSeries> {
    let mut degrees = t.terms().map(|(m, _)| m.len());
    let Some(m) = degrees.next() else {
        return Ok(t.clone());
    };
    if m == 0 || degrees.any(|d| d != m) {
        return Err(Error::NonHomogeneous);
    }
    let mut terms = Vec::new();
    for (w, k) in t.terms() {
        for shift in 0..m {
            let rotated: Vec<u8> = (0..m).map(|i| w.letters()[(shift + i) % m]).collect();
            terms.push((rotated, k.clone()));
        }
    }
    Series::from_terms(t.rank(), t.cap(), terms)
}

/// Shuffle coproduct: every basis vector is primitive.
pub fn tensor_coproduct(u: &TensorSeries) -> Tensor {
    let mut out = Tensor::zero(u.rank(), u.cap(), 2);
    for (m, k) in u.terms() {
        let letters = m.letters();
        for mask in 0u32..(1 << letters.len()) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, &l) in letters.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(l);
                } else {
                    right.push(l);
                }
            }
            out.insert(vec![Monomial(left), Monomial(right)], k.clone());
        }
    }
    out
}

pub fn is_tensor_primitive(u: &TensorSeries) -> bool {
    let one = Series::one(u.rank(), u.cap());
    tensor_coproduct(u) == &Tensor::product(&[u, &one]) + &Tensor::product(&[&one, u])
}

pub fn is_tensor_group_like(u: &TensorSeries) -> bool {
    !u.is_zero() && tensor_coproduct(u) == Tensor::product(&[u, u])
}

/// A group-like expansion `theta(x_i) = exp(l_i)` with `theta(nu) = exp(-omega)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticExpansion {
    genus: usize,
    cap: usize,
    logs: Vec<TensorSeries>,
}

impl SymplecticExpansion {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Lie-series exponents `log theta(x_i)`.
    pub fn logs(&self) -> &[TensorSeries] {
        &self.logs
    }

    pub fn images(&self) -> Vec<TensorSeries> {
        self.logs.iter().map(|l| l.exp().expect("exponents have zero constant term")).collect()
    }

    pub fn from_images(genus: usize, images: Vec<TensorSeries>) -> Result<Self> {
        let cap = images.iter().map(Series::cap).min().unwrap_or(1);
        let logs = images.iter().map(Series::log).collect::<Result<Vec<_>>>()?;
        Ok(SymplecticExpansion { genus, cap, logs })
    }

    /// `theta(w)` for a group word.
    pub fn word_image(&self, w: &GroupWord) -> TensorSeries {
        word_image(&self.logs, w, self.cap)
    }

    /// The induced map on the truncated completion: `X_i -> theta(x_i) - 1`.
    pub fn apply(&self, u: &Series) -> Result<TensorSeries> {
        let images: Vec<Series> = self.images().iter().map(Series::without_constant).collect();
        u.substitute(&images)
    }
}

fn word_image(logs: &[TensorSeries], w: &GroupWord, cap: usize) -> TensorSeries {
    let n = logs.len();
    let mut out = Series::one(n, cap);
    for &l in w.letters() {
        let log = logs[l.unsigned_abs() as usize - 1].truncate(cap);
        let factor = if l > 0 { log.exp() } else { log.scale(&int(-1)).exp() };
        out = &out * &factor.expect("exponents have zero constant term");
    }
    out
}

/// `[e_{w_1}, [e_{w_2}, ... e_{w_r}]]`.
fn left_normed_bracket(n: usize, cap: usize, letters: &[u8]) -> Series {
    let mut out = Series::var(n, cap, *letters.last().unwrap() as usize);
    for &l in letters[..letters.len() - 1].iter().rev() {
        out = Series::var(n, cap, l as usize).commutator(&out);
    }
    out
}

fn all_words(n: usize, len: usize) -> Vec<Vec<u8>> {
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (1..=n as u8).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    words
}

/// Degree-`degree` part of `log theta(nu) + omega`, computed at cap `degree + 1`.
fn symplectic_defect(space: &SymplecticSpace, logs: &[TensorSeries], degree: usize) -> Result<TensorSeries> {
    let cap = degree + 1;
    let nu = SurfaceSpec::new(space.genus(), cap)?.boundary_word();
    let log_nu = word_image(logs, &nu, cap).log()?;
    Ok((&log_nu + &space.omega(cap)).homogeneous_part(degree))
}

/// Corrects the exponents in degree `degree - 1` so that the defect vanishes in `degree`.
/// Returns whether a correction was needed.
fn correct_degree(space: &SymplecticSpace, logs: &mut [TensorSeries], degree: usize) -> Result<bool> {
    let defect = symplectic_defect(space, logs, degree)?;
    if defect.is_zero() {
        return Ok(false);
    }
    if degree < 3 {
        return Err(Error::Solver(format!("nonzero defect in degree {degree}")));
    }
    let n = space.dimension();
    let cap = degree + 1;
    let equations: Vec<Vec<u8>> = all_words(n, degree);
    let row_of: HashMap<&[u8], usize> = equations.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let brackets: Vec<Series> = all_words(n, degree - 1).iter().map(|w| left_normed_bracket(n, cap, w)).collect();
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for generator in 0..n {
        for (b, bracket) in brackets.iter().enumerate() {
            if bracket.is_zero() {
                continue;
            }
            let mut probe: Vec<Series> = logs.to_vec();
            probe[generator] = &probe[generator].truncate(cap) + bracket;
            let change = &symplectic_defect(space, &probe, degree)? - &defect;
            let mut column = vec![Rational::zero(); equations.len()];
            for (m, k) in change.terms() {
                column[row_of[m.letters()]] = k.clone();
            }
            unknowns.push((generator, b));
            columns.push(column);
        }
    }
    let matrix: RationalMatrix = (0..equations.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let rhs: Vec<Rational> = equations.iter().map(|w| -defect.coefficient(w)).collect();
    let solution =
        linalg::solve(&matrix, &rhs).ok_or_else(|| Error::Solver(format!("inconsistent system in degree {degree}")))?;
    for ((generator, b), x) in unknowns.iter().zip(solution) {
        if !x.is_zero() {
            logs[*generator] = &logs[*generator] + &brackets[*b].with_cap(logs[*generator].cap()).scale(&x);
        }
    }
    if !symplectic_defect(space, logs, degree)?.is_zero() {
        return Err(Error::Solver(format!("correction failed in degree {degree}")));
    }
    Ok(true)
}

/// Degree-by-degree construction starting from `theta(x_i) = exp([x_i])`.
pub fn build_symplectic_expansion(genus: usize, cap: usize) -> Result<SymplecticExpansion> {
    let space = SymplecticSpace::new(genus)?;
    let n = space.dimension();
    let mut logs: Vec<TensorSeries> = (1..=n).map(|i| Series::var(n, cap, i)).collect();
    for degree in 2..cap {
        correct_degree(&space, &mut logs, degree)?;
    }
    Ok(SymplecticExpansion { genus, cap, logs })
}

/// Re-runs the corrector on every degree of an expansion; returns whether anything changed.
pub fn recorrect(expansion: &SymplecticExpansion) -> Result<bool> {
    let space = SymplecticSpace::new(expansion.genus)?;
    let mut logs = expansion.logs.clone();
    let mut changed = false;
    for degree in 2..expansion.cap {
        changed |= correct_degree(&space, &mut logs, degree)?;
    }
    Ok(changed || logs != expansion.logs)
}

/// Checks that `theta` is group-like, Magnus and symplectic at its cap.
pub fn check_expansion(expansion: &SymplecticExpansion) -> Result<Report> {
    let mut report = Report::new("symplectic-expansion");
    let space = SymplecticSpace::new(expansion.genus)?;
    let cap = expansion.cap;
    let n = space.dimension();
    let primitive = expansion.logs.iter().all(is_tensor_primitive);
    report.push(Check::new("log theta(x_i) primitive", primitive));
    let group_like = expansion.images().iter().all(is_tensor_group_like);
    report.push(Check::new("theta(x_i) group-like", group_like));
    let magnus = expansion
        .images()
        .iter()
        .enumerate()
        .all(|(i, t)| (&t.truncate(2) - &(&Series::one(n, 2) + &Series::var(n, 2, i + 1))).is_zero());
    report.push(Check::new("theta(x) = 1 + [x] mod degree 2", magnus));
    let nu = SurfaceSpec::new(expansion.genus, cap)?.boundary_word();
    let target = space.omega(cap).scale(&int(-1)).exp()?;
    report.push(Check::series_eq("theta(nu) = exp(-omega)", &expansion.word_image(&nu), &target));
    Ok(report)
}

/// The two diagram checks on generator pairs and random words, exactly modulo degree `cap`:
/// `theta(sigma(u, v)) = <theta u, theta v>` and `theta(eta(u, v)) = rho(theta u, theta v)`.
pub fn verify_section9(
    surface: &SurfaceSpec,
    expansion: &SymplecticExpansion,
    random_words: usize,
    seed: u64,
) -> Result<Report> {
    let mut report = Report::new("section9");
    let cap = surface.cap;
    if expansion.cap < cap + 2 {
        return Err(Error::CapMismatch { left: expansion.cap, right: cap + 2 });
    }
    let space = SymplecticSpace::new(surface.genus)?;
    let rho: TruncatedPairing = surface.pairing();
    let n = surface.rank();
    let mut pairs: Vec<(GroupWord, GroupWord, String)> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            pairs.push((GroupWord::generator(n, i), GroupWord::generator(n, j), format!("x{i},x{j}")));
        }
    }
    let mut sampler = Sampler::new(seed, n);
    for r in 0..random_words {
        pairs.push((sampler.word(4), sampler.word(4), format!("random {r}")));
    }
    let mut sigma_ok = Check::new("theta(sigma(u,v)) = <theta u, theta v>", true);
    let mut eta_ok = Check::new("theta(eta(u,v)) = rho_T(theta u, theta v)", true);
    for (a, b, label) in &pairs {
        let (u, v) = (Series::embed_word(a, cap + 1), Series::embed_word(b, cap + 1));
        let (tu, tv) = (expansion.apply(&u)?, expansion.apply(&v)?);
        let lhs = expansion.apply(&derived_form_truncated(&rho, &u, &v)?)?;
        let rhs = space.derivation_pairing(&tu, &tv);
        if sigma_ok.pass && !lhs.agrees_with(&rhs) {
            sigma_ok = Check::series_eq(sigma_ok.name.clone(), &lhs, &rhs.truncate(lhs.cap()));
            sigma_ok.witness = Some(format!("{label}: {}", sigma_ok.witness.unwrap_or_default()));
        }
        let lhs = expansion.apply(&rho.eval(&u, &v)?)?;
        let rhs = space.tensorial_rho(&tu, &tv);
        if eta_ok.pass && !lhs.agrees_with(&rhs) {
            eta_ok = Check::series_eq(eta_ok.name.clone(), &lhs, &rhs.truncate(lhs.cap()));
            eta_ok.witness = Some(format!("{label}: {}", eta_ok.witness.unwrap_or_default()));
        }
    }
    report.push(sigma_ok);
    report.push(eta_ok);
    Ok(report)
}
