//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Singular values in non-increasing order together with the matching right
/// singular vectors.
pub fn svd_sorted(a: &CMatrix) -> (Vec<f64>, Vec<CVector>) {
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    // rows of V^H are conjugated right singular vectors
    let vectors = order
        .iter()
        .map(|&i| v_t.row(i).transpose().map(|z| z.conj()))
        .collect();
    (values, vectors)
}

/// Numerical kernel of a matrix with at least as many rows as columns.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub basis: Vec<CVector>,
    /// Singular values relative to the largest one, non-increasing.
    pub relative_singular_values: Vec<f64>,
}

/// Kernel by SVD. Relative singular values below `tol` count as zero; values
/// inside `[tol, 10 tol]` are reported as [`Error::AmbiguousRank`].
pub fn numerical_kernel(a: &CMatrix, tol: f64) -> Result<Kernel> {
    let cols = a.ncols();
    // pad so the thin SVD still returns a complete right basis
    let padded;
    let a = if a.nrows() < cols {
        padded = a.clone().resize_vertically(cols, crate::linalg::ZERO);
        &padded
    } else {
        a
    };
    let (values, vectors) = svd_sorted(a);
    let largest = values.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return Ok(Kernel {
            basis: (0..cols).map(|k| unit(cols, k)).collect(),
            relative_singular_values: vec![0.0; cols],
        });
    }
    let relative: Vec<f64> = values.iter().map(|s| s / largest).collect();
    let upper = 10.0 * tol;
    if let Some(&s) = relative.iter().find(|&&s| s >= tol && s <= upper) {
        return Err(Error::AmbiguousRank {
            singular_value: s,
            tol,
            upper,
        });
    }
    let basis = relative
        .iter()
        .zip(vectors)
        .filter(|(s, _)| **s < tol)
        .map(|(_, v)| v)
        .collect();
    Ok(Kernel {
        basis,
        relative_singular_values: relative,
    })
}

/// Numerical rank with the same relative cutoff, without the guard band.
pub fn numerical_rank(a: &CMatrix, tol: f64) -> usize {
    let (values, _) = svd_sorted(a);
    let largest = values.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return 0;
    }
    values.iter().filter(|s| **s / largest >= tol).count()
}

pub fn unit(dim: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[k] = ONE;
    v
}

/// Complex-bilinear (not Hermitian) product `sum_a v_a w_a`.
pub fn bilinear_dot(v: &CVector, w: &CVector) -> C64 {
    v.iter().zip(w.iter()).map(|(a, b)| a * b).sum()
}
