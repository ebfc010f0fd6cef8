//! Dense complex matrix helpers shared by the spectral modules.

pub use nalgebra::Complex;
use nalgebra::{DMatrix, DVector, SVD};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

use crate::error::{Error, Result};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn ensure_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.norm()
}

/// Extreme singular values `(sigma_min, sigma_max)` of `m`, treated as an
/// operator on `C^{ncols}`. A wide matrix has `sigma_min = 0`.
pub fn singular_extremes(m: &CMatrix) -> (f64, f64) {
    if m.nrows() == 0 || m.ncols() == 0 {
        return (0.0, 0.0);
    }
    let sv = SVD::new(m.clone(), false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = if m.nrows() < m.ncols() {
        0.0
    } else {
        sv.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    (min, max)
}

/// Smallest of the `min(rows, cols)` singular values (no rank padding).
pub fn smallest_singular_value(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    SVD::new(m.clone(), false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_extremes(m).1
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Moore-Penrose pseudoinverse; singular values below `rel_tol * sigma_max`
/// are treated as zero.
pub fn pseudoinverse(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let svd = SVD::new(m.clone(), true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = rel_tol * smax;
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^*");
    let mut out = CMatrix::zeros(m.ncols(), m.nrows());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff && s > 0.0 {
            let vk = v_t.row(k).adjoint();
            let uk = u.column(k);
            out += (vk * uk.adjoint()) * c(1.0 / s, 0.0);
        }
    }
    out
}
