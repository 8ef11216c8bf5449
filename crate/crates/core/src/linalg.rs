//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type RationalMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> RationalMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn transpose(a: &RationalMatrix) -> RationalMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], columns: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..columns {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v /= &lead;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (v, p) in other.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(a: &RationalMatrix) -> usize {
    let mut m = a.clone();
    let cols = a.first().map_or(0, Vec::len);
    row_reduce(&mut m, cols).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &RationalMatrix) -> Option<RationalMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> =
        a.iter().zip(identity(n)).map(|(row, id)| row.iter().cloned().chain(id).collect()).collect();
    let pivots = row_reduce(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// One solution of `a x = b`, with every free variable set to zero, or `None` if inconsistent.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let unknowns = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect()).collect();
    let pivots = row_reduce(&mut m, unknowns);
    if m.iter().skip(pivots.len()).any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = m[row][unknowns].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn inverse_of_the_symplectic_block() {
        let a = m(&[&[0, 1], &[-1, 0]]);
        let inv = invert(&a).unwrap();
        assert_eq!(inv, m(&[&[0, -1], &[1, 0]]));
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(invert(&m(&[&[0, 0], &[1, 0]])).is_none());
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn solve_prefers_zero_free_variables() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let x = solve(&a, &[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(3), int(0), int(2)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).is_none());
    }
}
