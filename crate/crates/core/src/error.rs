use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    /// The slice `f(z_j = λ)` does not vanish, so `f` is not divisible by `z_j − λ`.
    #[error("slice does not vanish (max residual coefficient {0:e})")]
    SliceNotVanishing(f64),

    #[error("basis too small: need bidegree ({need1}, {need2}), basis holds ({have1}, {have2})")]
    BasisTooSmall {
        need1: usize,
        need2: usize,
        have1: usize,
        have2: usize,
    },

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("Gram matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("window is empty: {0}")]
    WindowEmpty(String),

    #[error("orbit data disagree on the norm of the cyclic vector ({0} vs {1})")]
    InconsistentNormalization(f64, f64),

    /// A singular value sits within a factor 10 of the rank threshold.
    #[error("ambiguous numerical rank: singular value {sigma:e} near threshold {threshold:e}")]
    RankAmbiguous { sigma: f64, threshold: f64 },

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadSpec(String),

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
