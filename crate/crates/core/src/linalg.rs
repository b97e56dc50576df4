//! Small dense exact linear algebra over the rationals.

use crate::rational::Q;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let s = &f * &a[col][j];
                    a[r][j] = &a[r][j] - s;
                    let s = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - s;
                }
            }
        }
    }
    Some(inv)
}

/// Solves `m x = b`; `None` when `m` is singular.
pub fn solve(m: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse(m)?;
    Some(mat_vec(&inv, b))
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// `x^T m y`.
pub fn bilinear(m: &Matrix, x: &[Q], y: &[Q]) -> Q {
    let my = mat_vec(m, y);
    x.iter().zip(&my).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// `L D L^T` factorisation of a symmetric matrix. Returns the unit lower
/// triangular `L` and the pivots `D`, or `None` when a pivot is not positive.
pub fn ldlt_positive(m: &Matrix) -> Option<(Matrix, Vec<Q>)> {
    let n = m.len();
    let mut l = identity(n);
    let mut d = vec![Q::zero(); n];
    for j in 0..n {
        let mut dj = m[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return None;
        }
        for i in (j + 1)..n {
            let mut s = m[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        d[j] = dj;
    }
    Some((l, d))
}

/// Sylvester's criterion on leading principal minors.
pub fn is_positive_definite(m: &Matrix) -> bool {
    (1..=m.len()).all(|k| {
        let sub: Matrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&sub).is_positive()
    })
}

pub fn determinant(m: &Matrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for j in col..n {
                    let s = &f * &a[col][j];
                    a[r][j] = &a[r][j] - s;
                }
            }
        }
    }
    det
}
