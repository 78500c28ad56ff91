//! Small dense helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub type Matrix = DMatrix<f64>;

/// Largest absolute entry.
pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// max |m_ij - m_ji|
pub fn asymmetry(m: &Matrix) -> f64 {
    max_abs(&(m - m.transpose()))
}

/// max |m_ij + m_ji|
pub fn symmetry_of_antisym(m: &Matrix) -> f64 {
    max_abs(&(m + m.transpose()))
}

pub fn sym_part(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

pub fn antisym_part(m: &Matrix) -> Matrix {
    (m - m.transpose()) * 0.5
}

/// Deviation of `m` from the identity in the max norm.
pub fn identity_residual(m: &Matrix) -> f64 {
    max_abs(&(m - Matrix::identity(m.nrows(), m.ncols())))
}

/// Largest off-diagonal entry in absolute value.
pub fn max_off_diagonal(m: &Matrix) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

/// Orthogonality residual of `o`: max |oᵗo − I|.
pub fn orthogonality_residual(o: &Matrix) -> f64 {
    identity_residual(&(o.transpose() * o))
}

/// 2-norm condition number from singular values. Infinite for singular input.
pub fn condition_number(m: &Matrix) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-distributed element of O(n): QR of a Gaussian matrix with the
/// diagonal of R forced positive.
pub fn haar_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let g = gaussian_matrix(rng, n, n);
        let qr = g.qr();
        let r = qr.r();
        if (0..n).any(|i| r[(i, i)].abs() < 1e-8) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..n {
            if r[(j, j)] < 0.0 {
                let mut col = q.column_mut(j);
                col.neg_mut();
            }
        }
        return q;
    }
}

/// Haar-distributed element of SO(n).
pub fn haar_special_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut q = haar_orthogonal(rng, n);
    if q.determinant() < 0.0 {
        let mut col = q.column_mut(0);
        col.neg_mut();
    }
    q
}

pub fn diag(values: &[f64]) -> Matrix {
    Matrix::from_diagonal(&DVector::from_column_slice(values))
}

/// 2×2 rotation by `theta`.
pub fn rotation2(theta: f64) -> Matrix {
    let (s, c) = theta.sin_cos();
    Matrix::from_row_slice(2, 2, &[c, -s, s, c])
}

pub fn from_rows(rows: &[Vec<f64>]) -> Matrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    Matrix::from_fn(r, c, |i, j| rows[i][j])
}

pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}
