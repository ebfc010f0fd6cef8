//! Biorthogonal graph Fourier transform, diagonal spectral filters, directed
//! total variation and the energy identities that relate the two domains.

use serde::{Deserialize, Serialize};

use crate::eigen::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, CVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Vertex,
    Spectral,
}

impl Domain {
    fn name(self) -> &'static str {
        match self {
            Domain::Vertex => "vertex",
            Domain::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSignal {
    pub values: CVector,
    pub domain: Domain,
}

impl GraphSignal {
    pub fn vertex(values: CVector) -> Self {
        Self {
            values,
            domain: Domain::Vertex,
        }
    }

    pub fn spectral(values: CVector) -> Self {
        Self {
            values,
            domain: Domain::Spectral,
        }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::vertex(CVector::from_iterator(
            values.len(),
            values.iter().map(|&x| c(x, 0.0)),
        ))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.values.norm()
    }

    fn expect(&self, domain: Domain, n: usize) -> Result<()> {
        if self.domain != domain {
            return Err(Error::WrongDomain {
                expected: domain.name(),
                actual: self.domain.name(),
            });
        }
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// Diagonal spectral response `h(λ_k)`, one entry per frequency index.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFilter {
    pub response: Vec<C64>,
}

impl SpectralFilter {
    /// Ideal band filter: 1 on `omega`, 0 elsewhere.
    pub fn ideal(n: usize, omega: &[usize]) -> Result<Self> {
        let mut response = vec![C64::default(); n];
        for &k in omega {
            if k >= n {
                return Err(Error::InvalidParameter(format!(
                    "band index {k} out of range for n = {n}"
                )));
            }
            response[k] = c(1.0, 0.0);
        }
        Ok(Self { response })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            response: vec![c(1.0, 0.0); n],
        }
    }

    pub fn from_spec(spec: &FilterSpec, n: usize) -> Result<Self> {
        match spec {
            FilterSpec::Ideal { omega } => Self::ideal(n, omega),
            FilterSpec::Diagonal { response } => {
                if response.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        actual: response.len(),
                    });
                }
                Ok(Self {
                    response: response.iter().map(|&[re, im]| c(re, im)).collect(),
                })
            }
        }
    }
}

/// On-disk filter description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FilterSpec {
    Ideal { omega: Vec<usize> },
    Diagonal { response: Vec<[f64; 2]> },
}

/// `x̂ = U^* x = V^{-1} x`, computed by solving `V x̂ = x`.
pub fn forward(x: &GraphSignal, dec: &SpectralDecomposition) -> Result<GraphSignal> {
    x.expect(Domain::Vertex, dec.n())?;
    Ok(GraphSignal::spectral(dec.solve_v(&x.values)))
}

/// `x = V x̂`.
pub fn inverse(xhat: &GraphSignal, dec: &SpectralDecomposition) -> Result<GraphSignal> {
    xhat.expect(Domain::Spectral, dec.n())?;
    Ok(GraphSignal::vertex(dec.v() * &xhat.values))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPair {
    /// `|x|_2^2`
    pub vertex_energy: f64,
    /// `x̂^* M x̂` with `M = V^* V`
    pub gram_energy: f64,
}

pub fn energy_identity(x: &GraphSignal, dec: &SpectralDecomposition) -> Result<EnergyPair> {
    let xhat = forward(x, dec)?;
    let m = crate::eigen::gram_matrix(dec);
    let q = xhat.values.dotc(&(m * &xhat.values));
    Ok(EnergyPair {
        vertex_energy: x.values.norm_squared(),
        gram_energy: q.re,
    })
}

/// `V diag(h) U^* x`. An ideal `h` gives the (generally oblique) band projector.
pub fn apply_filter(
    x: &GraphSignal,
    h: &SpectralFilter,
    dec: &SpectralDecomposition,
) -> Result<GraphSignal> {
    if h.response.len() != dec.n() {
        return Err(Error::DimensionMismatch {
            expected: dec.n(),
            actual: h.response.len(),
        });
    }
    let mut xhat = forward(x, dec)?;
    for (z, &hk) in xhat.values.iter_mut().zip(&h.response) {
        *z *= hk;
    }
    inverse(&xhat, dec)
}

/// Explicit filter matrix `V diag(h) U^*`.
pub fn filter_matrix(h: &SpectralFilter, dec: &SpectralDecomposition) -> Result<CMatrix> {
    if h.response.len() != dec.n() {
        return Err(Error::DimensionMismatch {
            expected: dec.n(),
            actual: h.response.len(),
        });
    }
    let d = CMatrix::from_diagonal(&CVector::from_column_slice(&h.response));
    Ok(dec.v() * d * dec.u().adjoint())
}

/// Directed total variation `|L x|_2^2`.
pub fn total_variation(l: &CMatrix, x: &GraphSignal) -> Result<f64> {
    x.expect(Domain::Vertex, l.ncols())?;
    Ok((l * &x.values).norm_squared())
}

/// Unsquared directed variation semi-norm `|L x|_2`.
pub fn variation_seminorm(l: &CMatrix, x: &GraphSignal) -> Result<f64> {
    total_variation(l, x).map(f64::sqrt)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TvBounds {
    pub lower: f64,
    pub upper: f64,
    /// `Σ |λ_k|^2 |x̂_k|^2`
    pub spectral_energy: f64,
    /// `|L x|_2^2`
    pub actual: f64,
}

/// Two-sided bound on `|L x|^2` from the spectral energy and the extreme
/// singular values of `V`.
pub fn tv_bounds(x: &GraphSignal, dec: &SpectralDecomposition) -> Result<TvBounds> {
    let xhat = forward(x, dec)?;
    let weighted = CVector::from_iterator(
        dec.n(),
        xhat.values.iter().zip(dec.lambdas()).map(|(a, l)| a * l),
    );
    let spectral_energy = weighted.norm_squared();
    let actual = (dec.v() * weighted).norm_squared();
    Ok(TvBounds {
        lower: dec.sigma_min().powi(2) * spectral_energy,
        upper: dec.sigma_max().powi(2) * spectral_energy,
        spectral_energy,
        actual,
    })
}

/// Frequency ordering of a decomposition; the identity, since `decompose`
/// already sorts. Use [`crate::eigen::frequency_order`] for external spectra.
pub fn frequency_order(dec: &SpectralDecomposition) -> Vec<usize> {
    crate::eigen::frequency_order(dec.lambdas())
}

/// `κ(V) |η| / |x̂|`: bound on the relative vertex-domain error when the
/// spectral coefficients are perturbed by `η`.
pub fn spectral_perturbation_bound(
    xhat: &GraphSignal,
    eta_norm: f64,
    dec: &SpectralDecomposition,
) -> Result<f64> {
    xhat.expect(Domain::Spectral, dec.n())?;
    let norm = xhat.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSignal("spectral coefficients are zero"));
    }
    Ok(dec.kappa() * eta_norm / norm)
}
