//! Non-Hermitian eigendecomposition `L = V Λ U^*` with `U^* = V^{-1}`, and the
//! conditioning diagnostics tied to the eigenbasis.
//!
//! Eigenvalues come from a complex Schur form `L = Q T Q^*`; eigenvectors of
//! the triangular factor are obtained by back substitution and mapped back
//! through `Q`. Each right eigenvector has unit 2-norm, and its
//! largest-magnitude entry is rotated onto the positive real axis. The dual
//! basis is fully determined by `V`.

use nalgebra::{linalg::LU, Dyn, Schur, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg::{c, ensure_square, frobenius, singular_extremes, CMatrix, CVector, C64};

/// Above this eigenvector condition number the dual basis is treated as meaningless.
pub const KAPPA_LIMIT: f64 = 1e12;
/// Biorthogonality error allowed per dimension before a decomposition is refused.
pub const BIORTH_LIMIT_PER_DIM: f64 = 1e-8;
/// Relative tolerance for grouping equal-magnitude eigenvalues when ordering.
const MAGNITUDE_TIE_TOL: f64 = 1e-9;
/// `|λ| <= ZERO_EIG_TOL` counts as a zero (DC) eigenvalue.
pub const ZERO_EIG_TOL: f64 = 1e-8;
/// Maximum angle (radians) between `v_1` and the constant vector for the DC check.
pub const DC_ANGLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    lambdas: Vec<C64>,
    v: CMatrix,
    u: CMatrix,
    lu: LU<C64, Dyn, Dyn>,
    sigma_min: f64,
    sigma_max: f64,
    residual: f64,
    biorth_error: f64,
    matrix: CMatrix,
    schur_departure: f64,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    /// Eigenvalues in frequency order (see [`frequency_order`]).
    pub fn lambdas(&self) -> &[C64] {
        &self.lambdas
    }

    /// Right eigenvectors as columns.
    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    /// Dual basis, `U^* = V^{-1}`.
    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    /// 2-norm condition number of `V`.
    pub fn kappa(&self) -> f64 {
        self.sigma_max / self.sigma_min
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    /// `max_k |L v_k - λ_k v_k|_2`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `|U^* V - I|_F`.
    pub fn biorth_error(&self) -> f64 {
        self.biorth_error
    }

    /// The decomposed matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Frobenius norm of the strictly upper part of the Schur factor.
    pub fn schur_departure(&self) -> f64 {
        self.schur_departure
    }

    /// Solves `V z = rhs` with the cached LU factorization of `V`.
    pub fn solve_v(&self, rhs: &CVector) -> CVector {
        self.lu
            .solve(rhs)
            .expect("V is invertible for an accepted decomposition")
    }

    /// `V Λ U^*`.
    pub fn reconstruct(&self) -> CMatrix {
        let lambda = CMatrix::from_diagonal(&CVector::from_column_slice(&self.lambdas));
        &self.v * lambda * self.u.adjoint()
    }
}

/// Complex Schur form `l = Q T Q^*`. The shifted QR iteration can stall on
/// rare inputs; those are retried on the index-reversed similarity and on
/// complex shifts, and the factors mapped back to `l`.
fn schur_with_fallback(l: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = l.nrows();
    let max_iter = 10_000 * n;
    let scale = frobenius(l).max(1.0) / (n as f64).sqrt();
    let reverse = CMatrix::from_fn(n, n, |i, j| {
        if i + j == n - 1 {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let shifts = [c(0.0, 0.0), c(0.1, 0.1) * scale, c(-0.07, 0.13) * scale];
    for reversed in [false, true] {
        for &s in &shifts {
            let mut m = l - CMatrix::identity(n, n) * s;
            if reversed {
                m = &reverse * m * &reverse;
            }
            if let Some(schur) = Schur::try_new(m, f64::EPSILON, max_iter) {
                let (mut q, mut t) = schur.unpack();
                for i in 0..n {
                    t[(i, i)] += s;
                }
                if reversed {
                    q = &reverse * q;
                }
                return Ok((q, t));
            }
        }
    }
    Err(Error::InvalidParameter(
        "Schur iteration did not converge".into(),
    ))
}

pub fn decompose(l: &CMatrix) -> Result<SpectralDecomposition> {
    let n = ensure_square(l)?;
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let (q, t) = schur_with_fallback(l)?;

    let raw: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let schur_departure = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| t[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt();
    let y = triangular_eigenvectors(&t);
    let mut w = q * y;
    for k in 0..n {
        normalize_and_fix_phase(&mut w, k);
    }

    let order = frequency_order(&raw);
    let lambdas: Vec<C64> = order.iter().map(|&k| raw[k]).collect();
    let v = CMatrix::from_fn(n, n, |i, j| w[(i, order[j])]);

    let (sigma_min, sigma_max) = singular_extremes(&v);
    let kappa = sigma_max / sigma_min;
    let lu = v.clone().lu();
    let x = lu.solve(&CMatrix::identity(n, n));
    let u = match x {
        Some(x) if kappa.is_finite() && kappa <= KAPPA_LIMIT => x.adjoint(),
        _ => {
            return Err(Error::NearDefective {
                kappa,
                biorth_error: f64::INFINITY,
            })
        }
    };
    let biorth_error = frobenius(&(u.adjoint() * &v - CMatrix::identity(n, n)));
    if biorth_error > n as f64 * BIORTH_LIMIT_PER_DIM {
        return Err(Error::NearDefective {
            kappa,
            biorth_error,
        });
    }

    let residual = (0..n)
        .map(|k| {
            let vk = v.column(k);
            (l * vk - vk * lambdas[k]).norm()
        })
        .fold(0.0, f64::max);

    Ok(SpectralDecomposition {
        lambdas,
        v,
        u,
        lu,
        sigma_min,
        sigma_max,
        residual,
        biorth_error,
        matrix: l.clone(),
        schur_departure,
    })
}

/// Columns `y_k` with `T y_k = t_kk y_k`, `y_k[k] = 1`, zero below `k`.
///
/// Near-equal diagonal entries with negligible coupling are a repeated
/// eigenvalue of a (locally) normal block: the component is set to zero so the
/// eigenvectors stay independent. Near-equal entries with real coupling are a
/// near-defective block; the denominator is floored, which surfaces as a huge
/// condition number downstream.
fn triangular_eigenvectors(t: &CMatrix) -> CMatrix {
    let n = t.nrows();
    let scale = t
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let sep_tol = 1e-12 * scale;
    let floor = f64::EPSILON * scale;
    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let tkk = t[(k, k)];
        y[(k, k)] = c(1.0, 0.0);
        let mut ymax = 1.0f64;
        for i in (0..k).rev() {
            let mut num = C64::default();
            for j in (i + 1)..=k {
                num += t[(i, j)] * y[(j, k)];
            }
            let mut den = t[(i, i)] - tkk;
            if den.norm() < sep_tol {
                if num.norm() <= sep_tol * ymax {
                    continue;
                }
                if den.norm() < floor {
                    den = c(floor, 0.0);
                }
            }
            let yi = -num / den;
            ymax = ymax.max(yi.norm());
            y[(i, k)] = yi;
        }
    }
    y
}

fn normalize_and_fix_phase(w: &mut CMatrix, k: usize) {
    let norm = w.column(k).norm();
    let mut col = w.column_mut(k);
    col.unscale_mut(norm);
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in col.iter().enumerate() {
        // relative slack keeps the first index among numerically equal maxima
        if z.norm() > best_abs * (1.0 + 1e-12) {
            best = i;
            best_abs = z.norm();
        }
    }
    let pivot = col[best];
    if pivot.norm() > 0.0 {
        let rot = pivot.conj() / pivot.norm();
        for z in col.iter_mut() {
            *z *= rot;
        }
        col[best] = c(col[best].norm(), 0.0);
    }
}

/// Permutation that sorts `lambdas` by non-decreasing magnitude.
///
/// Magnitudes equal within a relative `1e-9` are ordered by argument in
/// `(-π, π]`, then by original index, so conjugate pairs end up adjacent
/// (negative imaginary part first).
pub fn frequency_order(lambdas: &[C64]) -> Vec<usize> {
    let mags: Vec<f64> = lambdas.iter().map(|z| z.norm()).collect();
    let top = mags.iter().cloned().fold(1.0, f64::max);
    let tie = MAGNITUDE_TIE_TOL * top;
    let mut idx: Vec<usize> = (0..lambdas.len()).collect();
    idx.sort_by(|&a, &b| mags[a].total_cmp(&mags[b]).then(a.cmp(&b)));

    let mut out = Vec::with_capacity(idx.len());
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && mags[idx[end]] - mags[idx[end - 1]] <= tie {
            end += 1;
        }
        let mut group = idx[start..end].to_vec();
        group.sort_by(|&a, &b| {
            snapped_arg(lambdas[a], top)
                .total_cmp(&snapped_arg(lambdas[b], top))
                .then(a.cmp(&b))
        });
        out.extend(group);
        start = end;
    }
    out
}

fn snapped_arg(z: C64, scale: f64) -> f64 {
    let eps = 1e-12 * scale;
    if z.norm() <= eps {
        return 0.0;
    }
    let im = if z.im.abs() <= eps { 0.0 } else { z.im };
    im.atan2(z.re)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DcModeReport {
    /// `λ_1 = 0`, the null space is one-dimensional and `v_1 ∥ 1`.
    pub holds: bool,
    pub zero_multiplicity: usize,
    pub lambda1_abs: f64,
    /// Angle in radians between `v_1` and the constant vector.
    pub angle: f64,
}

/// Checks that the lowest frequency is the constant (DC) mode.
pub fn dc_mode_check(dec: &SpectralDecomposition, n: usize) -> DcModeReport {
    if dec.n() != n || n == 0 {
        return DcModeReport {
            holds: false,
            zero_multiplicity: 0,
            lambda1_abs: f64::NAN,
            angle: f64::NAN,
        };
    }
    let zero_multiplicity = dec
        .lambdas
        .iter()
        .filter(|z| z.norm() <= ZERO_EIG_TOL)
        .count();
    let lambda1_abs = dec.lambdas[0].norm();
    let v1 = dec.v.column(0);
    let ones = CVector::from_element(n, c(1.0 / (n as f64).sqrt(), 0.0));
    let proj = ones.dotc(&v1);
    let orth = (v1 - &ones * proj).norm();
    let angle = orth.atan2(proj.norm());
    DcModeReport {
        holds: lambda1_abs <= ZERO_EIG_TOL && zero_multiplicity == 1 && angle <= DC_ANGLE_TOL,
        zero_multiplicity,
        lambda1_abs,
        angle,
    }
}

/// `M = V^* V`.
pub fn gram_matrix(dec: &SpectralDecomposition) -> CMatrix {
    dec.v.adjoint() * &dec.v
}

/// Henrici departure from normality `sqrt(|L|_F^2 - Σ|λ_k|^2)`.
///
/// When `dec` was computed from `l` this is evaluated as the norm of the
/// strictly upper Schur part, which equals the expression above exactly but
/// avoids the cancellation that leaves `~sqrt(eps) |L|_F` of noise on normal
/// matrices. Otherwise falls back to [`henrici_from_eigenvalues`].
pub fn henrici_departure(l: &CMatrix, dec: &SpectralDecomposition) -> Result<f64> {
    let n = ensure_square(l)?;
    if n != dec.n() {
        return Err(Error::DimensionMismatch {
            expected: dec.n(),
            actual: n,
        });
    }
    if *l == dec.matrix {
        Ok(dec.schur_departure)
    } else {
        henrici_from_eigenvalues(l, dec.lambdas())
    }
}

/// `sqrt(max(0, |L|_F^2 - Σ|λ_k|^2))`; the clamp absorbs rounding on normal
/// matrices, where the difference is zero up to a few ulps.
pub fn henrici_from_eigenvalues(l: &CMatrix, lambdas: &[C64]) -> Result<f64> {
    let n = ensure_square(l)?;
    if n != lambdas.len() {
        return Err(Error::DimensionMismatch {
            expected: lambdas.len(),
            actual: n,
        });
    }
    let fro2 = l.norm_squared();
    let eig2: f64 = lambdas.iter().map(|z| z.norm_sqr()).sum();
    Ok((fro2 - eig2).max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NormalityDiagnostics {
    pub henrici: f64,
    pub kappa: f64,
    /// `(λ_min(M), λ_max(M))` of the Gram matrix.
    pub gram_extremes: (f64, f64),
}

impl NormalityDiagnostics {
    pub fn compute(l: &CMatrix, dec: &SpectralDecomposition) -> Result<Self> {
        let henrici = henrici_departure(l, dec)?;
        let eig = SymmetricEigen::new(gram_matrix(dec)).eigenvalues;
        let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            henrici,
            kappa: dec.kappa(),
            gram_extremes: (lo, hi),
        })
    }

    /// `sqrt(λ_max(M) / λ_min(M))`, the Gram-route condition number.
    pub fn gram_kappa(&self) -> f64 {
        (self.gram_extremes.1 / self.gram_extremes.0).sqrt()
    }
}
