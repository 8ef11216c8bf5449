//! Square matrices over the truncated completion.

use crate::error::{Error, Result};
use crate::linalg::{self, RationalMatrix};
use crate::series::Series;

pub type SeriesMatrix = Vec<Vec<Series>>;

pub fn identity(n: usize, rank: usize, cap: usize) -> SeriesMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Series::one(rank, cap) } else { Series::zero(rank, cap) }).collect())
        .collect()
}

pub fn mul(a: &SeriesMatrix, b: &SeriesMatrix) -> SeriesMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = &a[i][0] * &b[0][j];
                    for k in 1..n {
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn scalar_mul(a: &RationalMatrix, b: &SeriesMatrix) -> SeriesMatrix {
    let n = b.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = b[0][j].scale(&a[i][0]);
                    for k in 1..n {
                        acc = &acc + &b[k][j].scale(&a[i][k]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn augmentation(a: &SeriesMatrix) -> RationalMatrix {
    a.iter().map(|row| row.iter().map(Series::constant_term).collect()).collect()
}

/// `B^{-1}` via `r = aug(B)^{-1} B` and `(sum_{i<M} (1 - r)^i) aug(B)^{-1}`.
pub fn invert(b: &SeriesMatrix) -> Result<SeriesMatrix> {
    let n = b.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rank = b[0][0].rank();
    let cap = b.iter().flatten().map(Series::cap).min().unwrap();
    let scalar_inverse = linalg::invert(&augmentation(b))
        .ok_or_else(|| Error::NotInvertible("augmentation matrix is singular".into()))?;
    let r = scalar_mul(&scalar_inverse, b);
    let id = identity(n, rank, cap);
    let defect: SeriesMatrix = (0..n).map(|i| (0..n).map(|j| &id[i][j] - &r[i][j]).collect()).collect();
    let mut power = id.clone();
    let mut sum = identity(n, rank, cap);
    for _ in 1..cap {
        power = mul(&power, &defect);
        sum = (0..n).map(|i| (0..n).map(|j| &sum[i][j] + &power[i][j]).collect()).collect();
    }
    let inverse_scalar_series: SeriesMatrix =
        scalar_inverse.iter().map(|row| row.iter().map(|q| Series::constant(rank, cap, q.clone())).collect()).collect();
    Ok(mul(&sum, &inverse_scalar_series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::scalar::int;

    #[test]
    fn identity_and_scalar_cases() {
        let id = identity(3, 2, 4);
        assert_eq!(invert(&id).unwrap(), id);
        let b = vec![vec![&Series::one(1, 3) + &Series::var(1, 3, 1)]];
        let expected =
            Series::from_terms(1, 3, vec![(vec![], int(1)), (vec![1], int(-1)), (vec![1, 1], int(1))]).unwrap();
        assert_eq!(invert(&b).unwrap(), vec![vec![expected]]);
        let singular = vec![vec![Series::var(1, 3, 1)]];
        assert!(matches!(invert(&singular), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn perturbed_symplectic_block_inverts_on_both_sides() {
        let mut sampler = Sampler::new(21, 2);
        let cap = 5;
        let base = [[0, 1], [-1, 0]];
        let b: SeriesMatrix = (0..2)
            .map(|i| (0..2).map(|j| &Series::constant(2, cap, int(base[i][j])) + &sampler.series(cap, 4, 1)).collect())
            .collect();
        let inv = invert(&b).unwrap();
        assert_eq!(mul(&b, &inv), identity(2, 2, cap));
        assert_eq!(mul(&inv, &b), identity(2, 2, cap));
    }
}
