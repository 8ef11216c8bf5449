//! Fox pairings defined by their values on pairs of generators, in the exact group algebra and
//! in the truncated completion, together with the `nabla` calculus of non-degenerate pairings.

use num_traits::Zero;

use crate::error::{check_rank, Error, Result};
use crate::group_algebra::{GroupAlgebraElement, Side};
use crate::hopf::antipode;
use crate::linalg::{self, RationalMatrix};
use crate::matrix;
use crate::scalar::Rational;
use crate::series::Series;
use crate::word::GroupWord;

type GA = GroupAlgebraElement;

fn check_square<T>(matrix: &[Vec<T>], rank: usize) -> Result<()> {
    check_rank(rank, matrix.len())?;
    for row in matrix {
        check_rank(rank, row.len())?;
    }
    Ok(())
}

/// A Fox pairing on `Q[pi]`, determined by `eta(x_i, x_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPairing {
    rank: usize,
    matrix: Vec<Vec<GA>>,
}

impl ExactPairing {
    pub fn new(matrix: Vec<Vec<GA>>) -> Result<Self> {
        let rank = matrix.len();
        check_square(&matrix, rank)?;
        for entry in matrix.iter().flatten() {
            check_rank(rank, entry.rank())?;
        }
        Ok(ExactPairing { rank, matrix })
    }

    pub fn zero(rank: usize) -> Self {
        ExactPairing { rank, matrix: vec![vec![GA::zero(rank); rank]; rank] }
    }

    /// `eta_e(a, b) = (a - aug a) e (b - aug b)`.
    pub fn inner(e: &GA) -> Self {
        let rank = e.rank();
        let matrix = (1..=rank)
            .map(|i| {
                (1..=rank)
                    .map(|j| &(&GA::generator_minus_one(rank, i) * e) * &GA::generator_minus_one(rank, j))
                    .collect()
            })
            .collect();
        ExactPairing { rank, matrix }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `eta(x_i, x_j)` for 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &GA {
        &self.matrix[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<GA>] {
        &self.matrix
    }

    /// `sum_{i,j} d_i(a) eta_ij d^j(b)`.
    pub fn eval(&self, a: &GA, b: &GA) -> Result<GA> {
        check_rank(self.rank, a.rank())?;
        check_rank(self.rank, b.rank())?;
        let left: Vec<GA> = (1..=self.rank).map(|i| a.fox_derivative(Side::Left, i)).collect();
        let right: Vec<GA> = (1..=self.rank).map(|j| b.fox_derivative(Side::Right, j)).collect();
        let mut out = GA::zero(self.rank);
        for (i, l) in left.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (j, r) in right.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                out = &out + &(&(l * &self.matrix[i][j]) * r);
            }
        }
        Ok(out)
    }

    /// `eta^-(x_i, x_j) = x_i bar(eta(x_j, x_i)) x_j`.
    pub fn transpose(&self) -> Self {
        let n = self.rank;
        let matrix = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let xi = GA::word(&GroupWord::generator(n, i));
                        let xj = GA::word(&GroupWord::generator(n, j));
                        &(&xi * &self.entry(j, i).bar()) * &xj
                    })
                    .collect()
            })
            .collect();
        ExactPairing { rank: n, matrix }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(ExactPairing { rank: self.rank, matrix: zip_matrix(&self.matrix, &other.matrix, |a, b| a + b) })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ExactPairing {
            rank: self.rank,
            matrix: self.matrix.iter().map(|row| row.iter().map(|e| e.scale(k)).collect()).collect(),
        }
    }

    /// The associated T-pairing `lambda(a, b) = eta(a, b) b^{-1}` on group elements.
    pub fn t_pairing(&self, a: &GroupWord, b: &GroupWord) -> Result<GA> {
        let value = self.eval(&GA::word(a), &GA::word(b))?;
        Ok(&value * &GA::word(&b.inverse()))
    }

    /// `[aug eta(x_i, x_j)]`.
    pub fn homological_form(&self) -> RationalMatrix {
        self.matrix.iter().map(|row| row.iter().map(GA::augment).collect()).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::invert(&self.homological_form()).is_some()
    }

    /// The `e` with `eta = eta_e`, if the pairing is inner.
    pub fn inner_witness(&self) -> Option<GA> {
        let n = self.rank;
        let mut witness: Option<GA> = None;
        for i in 1..=n {
            for j in 1..=n {
                let e = strip_exact_frame(self.entry(i, j), i, j)?;
                match &witness {
                    None => witness = Some(e),
                    Some(w) if *w == e => {}
                    Some(_) => return None,
                }
            }
        }
        witness.or_else(|| Some(GA::zero(n)))
    }

    /// The `e` with `eta + eta^- = eta_e`, if the pairing is weakly skew-symmetric.
    pub fn weak_skew_witness(&self) -> Option<GA> {
        self.add(&self.transpose()).ok()?.inner_witness()
    }

    /// The `e` with `self - other = eta_e`, if the pairings are equivalent.
    pub fn equivalence_witness(&self, other: &Self) -> Option<GA> {
        self.add(&other.scale(&Rational::from_integer((-1).into()))).ok()?.inner_witness()
    }

    /// The induced pairing on the truncated completion, with matrix entries at `cap`.
    pub fn completion(&self, cap: usize) -> TruncatedPairing {
        TruncatedPairing {
            rank: self.rank,
            cap,
            matrix: self.matrix.iter().map(|row| row.iter().map(|e| Series::embed(e, cap)).collect()).collect(),
        }
    }
}

/// Solves `z = (x_i - 1) e (x_j - 1)` for `e` in the group algebra.
fn strip_exact_frame(z: &GA, i: usize, j: usize) -> Option<GA> {
    let n = z.rank();
    if !z.augment().is_zero() {
        return None;
    }
    if (1..=n).any(|k| k != i && !z.fox_derivative(Side::Right, k).is_zero()) {
        return None;
    }
    let y = z.fox_derivative(Side::Right, i);
    if !y.augment().is_zero() {
        return None;
    }
    if (1..=n).any(|k| k != j && !y.fox_derivative(Side::Left, k).is_zero()) {
        return None;
    }
    Some(y.fox_derivative(Side::Left, j))
}

/// Solves `z = X_i e X_j` for `e` modulo degree `cap(z) - 2`.
fn strip_truncated_frame(z: &Series, i: usize, j: usize) -> Option<Series> {
    let n = z.rank();
    if !z.constant_term().is_zero() {
        return None;
    }
    if (1..=n).any(|k| k != i && !z.fox_derivative(Side::Right, k).is_zero()) {
        return None;
    }
    let y = z.fox_derivative(Side::Right, i);
    if !y.constant_term().is_zero() {
        return None;
    }
    if (1..=n).any(|k| k != j && !y.fox_derivative(Side::Left, k).is_zero()) {
        return None;
    }
    Some(y.fox_derivative(Side::Left, j))
}

fn zip_matrix<T>(a: &[Vec<T>], b: &[Vec<T>], f: impl Fn(&T, &T) -> T) -> Vec<Vec<T>> {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| f(x, y)).collect()).collect()
}

/// A Fox pairing on the completion, known modulo `A^_cap` on generator pairs.
///
/// `eval(u, v)` is determined modulo degree `min(cap(u) - 1, cap(v) - 1, cap)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPairing {
    rank: usize,
    cap: usize,
    matrix: Vec<Vec<Series>>,
}

impl TruncatedPairing {
    pub fn new(matrix: Vec<Vec<Series>>) -> Result<Self> {
        let rank = matrix.len();
        check_square(&matrix, rank)?;
        let cap = matrix.iter().flatten().map(Series::cap).min().unwrap_or(1);
        for entry in matrix.iter().flatten() {
            check_rank(rank, entry.rank())?;
            if entry.cap() != cap {
                return Err(Error::CapMismatch { left: cap, right: entry.cap() });
            }
        }
        Ok(TruncatedPairing { rank, cap, matrix })
    }

    /// `rho_e(a, b) = (a - aug a) e (b - aug b)`, at the cap of `e` plus two.
    pub fn inner(e: &Series) -> Self {
        let rank = e.rank();
        let cap = e.cap() + 2;
        let e = e.with_cap(cap);
        let matrix = (1..=rank)
            .map(|i| (1..=rank).map(|j| &(&Series::var(rank, cap, i) * &e) * &Series::var(rank, cap, j)).collect())
            .collect();
        TruncatedPairing { rank, cap, matrix }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn entry(&self, i: usize, j: usize) -> &Series {
        &self.matrix[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<Series>] {
        &self.matrix
    }

    pub fn truncate(&self, cap: usize) -> Self {
        TruncatedPairing {
            rank: self.rank,
            cap: cap.min(self.cap),
            matrix: self.matrix.iter().map(|row| row.iter().map(|e| e.truncate(cap)).collect()).collect(),
        }
    }

    pub fn eval(&self, u: &Series, v: &Series) -> Result<Series> {
        check_rank(self.rank, u.rank())?;
        check_rank(self.rank, v.rank())?;
        let cap = self.cap.min(u.cap().saturating_sub(1)).min(v.cap().saturating_sub(1));
        let left: Vec<Series> = (1..=self.rank).map(|i| u.fox_derivative(Side::Left, i)).collect();
        let right: Vec<Series> = (1..=self.rank).map(|j| v.fox_derivative(Side::Right, j)).collect();
        let mut out = Series::zero(self.rank, cap);
        for (i, l) in left.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (j, r) in right.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                out = &out + &(&(l * &self.matrix[i][j]) * r);
            }
        }
        Ok(out)
    }

    /// `rho^-(x_i, x_j) = x_i S(rho(x_j, x_i)) x_j`.
    pub fn transpose(&self) -> Self {
        let n = self.rank;
        let generator = |i| Series::embed_word(&GroupWord::generator(n, i), self.cap);
        let matrix = (1..=n)
            .map(|i| (1..=n).map(|j| &(&generator(i) * &antipode(self.entry(j, i))) * &generator(j)).collect())
            .collect();
        TruncatedPairing { rank: n, cap: self.cap, matrix }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(TruncatedPairing {
            rank: self.rank,
            cap: self.cap.min(other.cap),
            matrix: zip_matrix(&self.matrix, &other.matrix, |a, b| a + b),
        })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TruncatedPairing {
            rank: self.rank,
            cap: self.cap,
            matrix: self.matrix.iter().map(|row| row.iter().map(|e| e.scale(k)).collect()).collect(),
        }
    }

    /// `lambda(a, b) = rho(a, b) b^{-1}` on group words.
    pub fn t_pairing(&self, a: &GroupWord, b: &GroupWord) -> Result<Series> {
        let cap = self.cap + 1;
        let b_series = Series::embed_word(b, cap);
        let value = self.eval(&Series::embed_word(a, cap), &b_series)?;
        Ok(&value * &Series::embed_word(&b.inverse(), cap))
    }

    pub fn homological_form(&self) -> RationalMatrix {
        matrix::augmentation(&self.matrix)
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::invert(&self.homological_form()).is_some()
    }

    /// The `e` (modulo degree `cap - 2`) with `rho = rho_e`, if the pairing is inner at the cap.
    pub fn inner_witness(&self) -> Option<Series> {
        let mut witness: Option<Series> = None;
        for i in 1..=self.rank {
            for j in 1..=self.rank {
                let e = strip_truncated_frame(self.entry(i, j), i, j)?;
                match &witness {
                    None => witness = Some(e),
                    Some(w) if *w == e => {}
                    Some(_) => return None,
                }
            }
        }
        witness
    }

    pub fn weak_skew_witness(&self) -> Option<Series> {
        self.add(&self.transpose()).ok()?.inner_witness()
    }

    pub fn equivalence_witness(&self, other: &Self) -> Option<Series> {
        self.add(&other.scale(&Rational::from_integer((-1).into()))).ok()?.inner_witness()
    }

    /// The unique `nabla` with `rho(a, nabla) = a - aug(a)`, at cap `cap + 2`.
    pub fn nabla(&self) -> Result<NablaElement> {
        let n = self.rank;
        let c =
            matrix::invert(&self.matrix).map_err(|_| Error::NotNondegenerate("homological form is singular".into()))?;
        let cap = self.cap + 2;
        let mut out = Series::zero(n, cap);
        for r in 1..=n {
            for s in 1..=n {
                let term = &(&Series::var(n, cap, r) * &c[r - 1][s - 1].with_cap(cap)) * &Series::var(n, cap, s);
                out = &out + &term;
            }
        }
        Ok(NablaElement { series: out })
    }
}

/// An element `nabla` of `A^_1`, the data of a non-degenerate pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NablaElement {
    series: Series,
}

impl NablaElement {
    pub fn new(series: Series) -> Result<Self> {
        if !series.constant_term().is_zero() {
            return Err(Error::Domain("nabla must have zero constant term".into()));
        }
        Ok(NablaElement { series })
    }

    /// `iota(word) - 1`.
    pub fn from_word(word: &GroupWord, cap: usize) -> Self {
        NablaElement { series: Series::embed_word(word, cap).without_constant() }
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    /// Coefficients `c_rs` of `X_r X_s`.
    pub fn degree_two_matrix(&self) -> RationalMatrix {
        let n = self.series.rank();
        (1..=n).map(|r| (1..=n).map(|s| self.series.coefficient(&[r as u8, s as u8])).collect()).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.series.homogeneous_part(1).is_zero() && linalg::invert(&self.degree_two_matrix()).is_some()
    }

    /// The pairing with matrix `B = C^{-1}`, `C = [d^r d_s nabla]`, at cap `cap(nabla) - 2`.
    pub fn pairing(&self) -> Result<TruncatedPairing> {
        if !self.is_nondegenerate() {
            return Err(Error::NotNondegenerate(
                "nabla needs zero linear part and an invertible degree-two matrix".into(),
            ));
        }
        let n = self.series.rank();
        let c: Vec<Vec<Series>> = (1..=n)
            .map(|r| {
                (1..=n).map(|s| self.series.fox_derivative(Side::Left, s).fox_derivative(Side::Right, r)).collect()
            })
            .collect();
        let b = matrix::invert(&c)?;
        TruncatedPairing::new(b)
    }
}

/// Representation-tagged pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoxPairing {
    Exact(ExactPairing),
    Truncated(TruncatedPairing),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Exact(GA),
    Truncated(Series),
}

impl FoxPairing {
    pub fn rank(&self) -> usize {
        match self {
            FoxPairing::Exact(p) => p.rank(),
            FoxPairing::Truncated(p) => p.rank(),
        }
    }

    pub fn eval(&self, a: &Element, b: &Element) -> Result<Element> {
        match (self, a, b) {
            (FoxPairing::Exact(p), Element::Exact(a), Element::Exact(b)) => Ok(Element::Exact(p.eval(a, b)?)),
            (FoxPairing::Truncated(p), Element::Truncated(a), Element::Truncated(b)) => {
                Ok(Element::Truncated(p.eval(a, b)?))
            }
            (FoxPairing::Exact(_), _, _) => Err(Error::RepresentationMismatch { expected: "exact" }),
            (FoxPairing::Truncated(_), _, _) => Err(Error::RepresentationMismatch { expected: "truncated" }),
        }
    }

    pub fn homological_form(&self) -> RationalMatrix {
        match self {
            FoxPairing::Exact(p) => p.homological_form(),
            FoxPairing::Truncated(p) => p.homological_form(),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::invert(&self.homological_form()).is_some()
    }
}

/// `[a] . [b]` for the homological form `q`.
pub fn intersection_number(q: &RationalMatrix, a: &[i64], b: &[i64]) -> Rational {
    let mut out = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if *ai != 0 && *bj != 0 {
                out += &q[i][j] * Rational::from_integer((ai * bj).into());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::scalar::int;

    fn random_exact(sampler: &mut Sampler) -> ExactPairing {
        let n = sampler.rank();
        let matrix = (0..n).map(|_| (0..n).map(|_| sampler.element(2, 2)).collect()).collect();
        ExactPairing::new(matrix).unwrap()
    }

    #[test]
    fn pairing_axioms_on_exact_inputs() {
        let mut sampler = Sampler::new(31, 2);
        for _ in 0..30 {
            let eta = random_exact(&mut sampler);
            let (a1, a2, b) = (sampler.element(2, 3), sampler.element(2, 3), sampler.element(2, 3));
            let lhs = eta.eval(&(&a1 * &a2), &b).unwrap();
            let rhs = &eta.eval(&a1, &b).unwrap().scale(&a2.augment()) + &(&a1 * &eta.eval(&a2, &b).unwrap());
            assert_eq!(lhs, rhs);
            let (b1, b2) = (a1, a2);
            let lhs = eta.eval(&b, &(&b1 * &b2)).unwrap();
            let rhs = &(&eta.eval(&b, &b1).unwrap() * &b2) + &eta.eval(&b, &b2).unwrap().scale(&b1.augment());
            assert_eq!(lhs, rhs);
            assert!(eta.eval(&GA::one(2), &b).unwrap().is_zero());
            assert!(eta.eval(&b, &GA::one(2)).unwrap().is_zero());
        }
    }

    #[test]
    fn filtration_of_exact_pairings() {
        let mut sampler = Sampler::new(32, 2);
        for m in 1..=3 {
            for n in 1..=3 {
                let eta = random_exact(&mut sampler);
                let a = sampler.augmentation_product(m, 2);
                let b = sampler.augmentation_product(n, 2);
                let value = Series::embed(&eta.eval(&a, &b).unwrap(), m + n - 2);
                assert!(value.is_zero(), "eta(I^{m}, I^{n}) not in I^{}", m + n - 2);
            }
        }
    }

    #[test]
    fn inner_pairing_examples() {
        let one = GA::one(2);
        let eta = ExactPairing::inner(&one);
        let mut sampler = Sampler::new(33, 2);
        let a = sampler.element(3, 3);
        let b = sampler.element(3, 3);
        let expected = &(&a - &GA::scalar(2, a.augment())) * &(&b - &GA::scalar(2, b.augment()));
        assert_eq!(eta.eval(&a, &b).unwrap(), expected);
        let e = &GA::word(&GroupWord::generator(2, 1)) - &one;
        assert_eq!(ExactPairing::inner(&e).homological_form(), vec![vec![int(0); 2]; 2]);
        assert_eq!(ExactPairing::inner(&e).equivalence_witness(&ExactPairing::zero(2)), Some(e));
        assert!(!eta.is_nondegenerate());
    }

    #[test]
    fn transposition_is_involutive_and_t_pairing_example() {
        let mut sampler = Sampler::new(34, 2);
        let eta = random_exact(&mut sampler);
        assert_eq!(eta.transpose().transpose(), eta);
        let inner = ExactPairing::inner(&GA::one(2));
        let (x1, x2) = (GroupWord::generator(2, 1), GroupWord::generator(2, 2));
        let expected = &(&GA::generator_minus_one(2, 1) * &GA::generator_minus_one(2, 2)) * &GA::word(&x2.inverse());
        assert_eq!(inner.t_pairing(&x1, &x2).unwrap(), expected);
        let truncated = eta.completion(5);
        assert_eq!(truncated.transpose(), eta.transpose().completion(5));
    }

    #[test]
    fn t_pairing_axioms() {
        let mut sampler = Sampler::new(35, 2);
        let eta = random_exact(&mut sampler);
        for _ in 0..20 {
            let (a, b1, b2) = (sampler.word(3), sampler.word(3), sampler.word(3));
            // lambda(a, b1 b2) = lambda(a, b1) + lambda(a, b2) bar(b1)
            let lhs = eta.t_pairing(&a, &b1.mul(&b2)).unwrap();
            let b1e = GA::word(&b1);
            let rhs = &eta.t_pairing(&a, &b1).unwrap() + &(&eta.t_pairing(&a, &b2).unwrap() * &b1e.bar());
            assert_eq!(lhs, rhs);
            // lambda(a1 a2, b) = lambda(a1, b) + a1 lambda(a2, b)
            let lhs = eta.t_pairing(&b1.mul(&b2), &a).unwrap();
            let rhs = &eta.t_pairing(&b1, &a).unwrap() + &(&b1e * &eta.t_pairing(&b2, &a).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn nabla_examples() {
        let (a, b) = (GroupWord::generator(2, 1), GroupWord::generator(2, 2));
        let nabla = NablaElement::from_word(&a.commutator(&b), 7);
        let rho = nabla.pairing().unwrap();
        assert_eq!(rho.cap(), 5);
        assert_eq!(rho.homological_form(), vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        assert_eq!(rho.nabla().unwrap(), nabla);

        let disk = NablaElement::from_word(&b.mul(&a), 6);
        assert_eq!(disk.degree_two_matrix(), vec![vec![int(0), int(0)], vec![int(1), int(0)]]);
        assert!(matches!(disk.pairing(), Err(Error::NotNondegenerate(_))));

        let squares = &Series::monomial(2, 5, &[1, 1], int(1)) + &Series::monomial(2, 5, &[2, 2], int(1));
        let rho = NablaElement::new(squares).unwrap().pairing().unwrap();
        assert_eq!(rho.homological_form(), linalg::identity(2));
    }

    #[test]
    fn nabla_round_trip_and_defining_identity() {
        let mut sampler = Sampler::new(36, 2);
        let mut tested = 0;
        while tested < 5 {
            let base = sampler.series(6, 3, 2);
            let nabla = NablaElement::new(&base + &sampler.series(6, 6, 3)).unwrap();
            if !nabla.is_nondegenerate() {
                continue;
            }
            tested += 1;
            let rho = nabla.pairing().unwrap();
            assert_eq!(rho.nabla().unwrap(), nabla);
            for _ in 0..5 {
                let w = Series::embed_word(&sampler.word(5), 6);
                let lhs = rho.eval(&w, nabla.series()).unwrap();
                assert_eq!(lhs, (&w - &Series::constant(2, 6, w.constant_term())).truncate(4));
            }
        }
    }

    #[test]
    fn truncated_eval_matches_exact_layer() {
        let mut sampler = Sampler::new(37, 2);
        for _ in 0..10 {
            let eta = random_exact(&mut sampler);
            let rho = eta.completion(4);
            let (a, b) = (sampler.element(3, 3), sampler.element(3, 3));
            let exact = Series::embed(&eta.eval(&a, &b).unwrap(), 4);
            assert_eq!(rho.eval(&Series::embed(&a, 5), &Series::embed(&b, 5)).unwrap(), exact);
        }
    }

    #[test]
    fn representation_mismatch() {
        let p = FoxPairing::Exact(ExactPairing::zero(1));
        let s = Element::Truncated(Series::one(1, 3));
        assert!(matches!(p.eval(&s, &s), Err(Error::RepresentationMismatch { .. })));
    }
}
