use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("signal is in the {actual} domain, expected {expected}")]
    WrongDomain {
        expected: &'static str,
        actual: &'static str,
    },

    /// The eigenvector matrix is too ill-conditioned for a meaningful dual basis.
    #[error(
        "near-defective Laplacian: kappa(V) = {kappa:e}, biorthogonality error = {biorth_error:e}"
    )]
    NearDefective { kappa: f64, biorth_error: f64 },

    /// The sampling matrix does not have full column rank.
    #[error("rank-deficient sampling plan: gamma = {gamma:e}, |B| = {b_norm:e}, m = {m}, K = {k}")]
    RankDeficient {
        gamma: f64,
        b_norm: f64,
        m: usize,
        k: usize,
    },

    #[error("zero signal: {0}")]
    ZeroSignal(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Parse(format!("{other:?}")),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.into())
        } else {
            Error::Parse(e.to_string())
        }
    }
}
