//! Exact linear algebra over the rationals, on dense row-major matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;
pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a).len()
}

/// One solution of `a x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
    }
    det
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .fold(Rational::zero(), |s, x| s + x)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&a), 1);
        assert!(determinant(&a).is_zero());
        let b = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(determinant(&b), q(-2));
        assert_eq!(rank(&b), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let b = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let inv = inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &inv), identity(3));
        assert!(inverse(&mat(&[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn solve_consistency() {
        let a = mat(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = solve(&a, &[q(3), q(1), q(4)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(solve(&a, &[q(3), q(1), q(5)]).is_none());
        let under = mat(&[&[1, 1]]);
        assert_eq!(solve(&under, &[q(5)]).unwrap(), vec![q(5), q(0)]);
    }
}
