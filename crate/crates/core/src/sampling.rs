//! Bandlimited signal models, vertex sampling plans and least-squares recovery
//! with noise certificates.
//!
//! A band `Ω` selects columns of `V`; sampling at vertices `M` gives the
//! matrix `B = P_M V_Ω`. Its smallest singular value `γ(M, Ω)` is the sampling
//! stability constant.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::SeedableRng;
use serde::Serialize;

use crate::bgft::GraphSignal;
use crate::eigen::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{
    pseudoinverse, singular_extremes, smallest_singular_value, spectral_norm, CMatrix, CVector,
};
use crate::rng::GraphRng;

/// Singular values below this fraction of `σ_max(B)` count as zero.
pub const RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct BandModel {
    omega: Vec<usize>,
    v_omega: CMatrix,
    v_omega_norm: f64,
    basis_norm: f64,
}

impl BandModel {
    /// Band from an explicit set of frequency indices (sorted, deduplicated).
    pub fn from_indices(dec: &SpectralDecomposition, omega: &[usize]) -> Result<Self> {
        let n = dec.n();
        let set: BTreeSet<usize> = omega.iter().cloned().collect();
        if set.is_empty() || set.len() != omega.len() {
            return Err(Error::InvalidParameter(
                "band indices must be non-empty and distinct".into(),
            ));
        }
        if let Some(&k) = set.iter().find(|&&k| k >= n) {
            return Err(Error::InvalidParameter(format!(
                "band index {k} out of range for n = {n}"
            )));
        }
        let omega: Vec<usize> = set.into_iter().collect();
        let v_omega = dec.v().select_columns(omega.iter());
        let v_omega_norm = spectral_norm(&v_omega);
        Ok(Self {
            omega,
            v_omega,
            v_omega_norm,
            basis_norm: dec.sigma_max(),
        })
    }

    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn k(&self) -> usize {
        self.omega.len()
    }

    pub fn n(&self) -> usize {
        self.v_omega.nrows()
    }

    pub fn v_omega(&self) -> &CMatrix {
        &self.v_omega
    }

    /// `|V_Ω|_2`
    pub fn v_omega_norm(&self) -> f64 {
        self.v_omega_norm
    }

    /// `σ_max(V)` of the full basis the band was cut from.
    pub fn basis_norm(&self) -> f64 {
        self.basis_norm
    }
}

/// The `k` lowest frequencies.
pub fn make_band(dec: &SpectralDecomposition, k: usize) -> Result<BandModel> {
    if k == 0 || k > dec.n() {
        return Err(Error::InvalidParameter(format!(
            "band size must lie in [1, {}], got {k}",
            dec.n()
        )));
    }
    BandModel::from_indices(dec, &(0..k).collect::<Vec<_>>())
}

/// `x = V_Ω c`.
pub fn synthesize_bandlimited(band: &BandModel, coeffs: &CVector) -> Result<GraphSignal> {
    if coeffs.len() != band.k() {
        return Err(Error::DimensionMismatch {
            expected: band.k(),
            actual: coeffs.len(),
        });
    }
    Ok(GraphSignal::vertex(band.v_omega() * coeffs))
}

#[derive(Debug, Clone)]
pub struct SamplingPlan {
    sample_set: Vec<usize>,
    b: CMatrix,
    gamma: f64,
    b_norm: f64,
}

impl SamplingPlan {
    pub fn sample_set(&self) -> &[usize] {
        &self.sample_set
    }

    pub fn m(&self) -> usize {
        self.sample_set.len()
    }

    /// `B = P_M V_Ω`
    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    /// `γ(M, Ω) = σ_min(B)`; zero whenever `m < K`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `σ_max(B)`
    pub fn b_norm(&self) -> f64 {
        self.b_norm
    }

    pub fn is_full_rank(&self) -> bool {
        self.m() >= self.b.ncols() && self.gamma > RANK_TOL * self.b_norm
    }

    fn require_full_rank(&self) -> Result<()> {
        if self.is_full_rank() {
            Ok(())
        } else {
            Err(Error::RankDeficient {
                gamma: self.gamma,
                b_norm: self.b_norm,
                m: self.m(),
                k: self.b.ncols(),
            })
        }
    }

    /// `P_M x`
    pub fn sample(&self, x: &GraphSignal) -> Result<CVector> {
        if let Some(&i) = self.sample_set.iter().find(|&&i| i >= x.len()) {
            return Err(Error::DimensionMismatch {
                expected: i + 1,
                actual: x.len(),
            });
        }
        Ok(CVector::from_iterator(
            self.m(),
            self.sample_set.iter().map(|&i| x.values[i]),
        ))
    }
}

/// Builds `B` for the vertex set and measures its extreme singular values.
/// A rank-deficient plan is returned as-is; [`recover`] refuses it.
pub fn plan_sampling(band: &BandModel, sample_set: &[usize]) -> Result<SamplingPlan> {
    if sample_set.is_empty() {
        return Err(Error::InvalidParameter("sample set is empty".into()));
    }
    let set: BTreeSet<usize> = sample_set.iter().cloned().collect();
    if set.len() != sample_set.len() {
        return Err(Error::InvalidParameter(
            "sample set has duplicate vertices".into(),
        ));
    }
    if let Some(&i) = set.iter().find(|&&i| i >= band.n()) {
        return Err(Error::InvalidParameter(format!(
            "vertex {i} out of range for n = {}",
            band.n()
        )));
    }
    let sample_set: Vec<usize> = set.into_iter().collect();
    let b = band.v_omega().select_rows(sample_set.iter());
    let (gamma, b_norm) = singular_extremes(&b);
    Ok(SamplingPlan {
        sample_set,
        b,
        gamma,
        b_norm,
    })
}

#[derive(Debug, Clone)]
pub struct RecoveryReport {
    pub x_rec: GraphSignal,
    pub coeffs: CVector,
    /// `|V_Ω|_2 |y - B ĉ|_2 / γ`; zero for consistent samples.
    pub error_bound: f64,
    /// `|B ĉ - y|_2`
    pub residual: f64,
}

/// Least-squares recovery `ĉ = B^† y`, `x = V_Ω ĉ`.
pub fn recover(plan: &SamplingPlan, band: &BandModel, y: &CVector) -> Result<RecoveryReport> {
    plan.require_full_rank()?;
    if y.len() != plan.m() {
        return Err(Error::DimensionMismatch {
            expected: plan.m(),
            actual: y.len(),
        });
    }
    let pinv = pseudoinverse(plan.b(), RANK_TOL);
    let coeffs = pinv * y;
    let residual = (plan.b() * &coeffs - y).norm();
    let x_rec = GraphSignal::vertex(band.v_omega() * &coeffs);
    Ok(RecoveryReport {
        x_rec,
        coeffs,
        error_bound: band.v_omega_norm() * residual / plan.gamma(),
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseCertificate {
    /// `|V_Ω|_2 |η| / γ`
    pub tight: f64,
    /// `σ_max(V) |η| / γ`
    pub conservative: f64,
}

/// Worst-case reconstruction error for sample noise of norm `eta_norm`.
pub fn noise_certificate(
    plan: &SamplingPlan,
    band: &BandModel,
    eta_norm: f64,
) -> Result<NoiseCertificate> {
    plan.require_full_rank()?;
    Ok(NoiseCertificate {
        tight: band.v_omega_norm() * eta_norm / plan.gamma(),
        conservative: band.basis_norm() * eta_norm / plan.gamma(),
    })
}

/// Error bound for an approximately bandlimited signal `V_Ω c + r`, given the
/// sampled out-of-band residual norm `|P_M r|` and the noise norm.
pub fn approx_band_certificate(
    plan: &SamplingPlan,
    band: &BandModel,
    r_samples_norm: f64,
    eta_norm: f64,
) -> Result<f64> {
    plan.require_full_rank()?;
    Ok(band.v_omega_norm() * (r_samples_norm + eta_norm) / plan.gamma())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionStrategy {
    /// Grow the set one vertex at a time, maximizing the smallest singular
    /// value of the augmented `P_M V_Ω`.
    GreedyGamma,
    /// Uniform random subset of size `m`.
    Random { seed: u64 },
}

/// Chooses `m` sampling vertices for the band.
///
/// Greedy candidates with a score within a relative `1e-12` of the best are
/// tied and the lowest vertex index wins. While `|M| < K` the score is the
/// smallest of the `|M|` singular values, since `σ_min` of the
/// `K`-column operator is zero for every candidate.
pub fn select_sampling_set(
    band: &BandModel,
    m: usize,
    strategy: SelectionStrategy,
) -> Result<Vec<usize>> {
    let n = band.n();
    if m < band.k() || m > n {
        return Err(Error::InvalidParameter(format!(
            "sample size must lie in [{}, {n}], got {m}",
            band.k()
        )));
    }
    match strategy {
        SelectionStrategy::Random { seed } => {
            let mut rng = GraphRng::seed_from_u64(seed);
            let mut picked = index::sample(&mut rng, n, m).into_vec();
            picked.sort_unstable();
            Ok(picked)
        }
        SelectionStrategy::GreedyGamma => {
            let mut chosen: Vec<usize> = Vec::with_capacity(m);
            while chosen.len() < m {
                let mut best: Option<(usize, f64)> = None;
                for v in (0..n).filter(|v| !chosen.contains(v)) {
                    let mut rows = chosen.clone();
                    rows.push(v);
                    let score = smallest_singular_value(&band.v_omega().select_rows(rows.iter()));
                    match best {
                        Some((_, s)) if score <= s * (1.0 + 1e-12) => {}
                        _ => best = Some((v, score)),
                    }
                }
                chosen.push(best.expect("a candidate remains while |M| < n").0);
            }
            chosen.sort_unstable();
            Ok(chosen)
        }
    }
}
