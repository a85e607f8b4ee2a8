use thiserror::Error;

/// Errors raised by the algebra, norm, expectation and interpolation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("element is not selfadjoint (residual {0:e})")]
    NotSelfadjoint(f64),

    #[error("state is not faithful (Gram minimum eigenvalue {0:e})")]
    NotFaithful(f64),

    #[error("function undefined at eigenvalue {0}")]
    FunctionDomain(f64),

    #[error("negative radicand {0:e}: positivity of x*∘x is broken")]
    NegativeRadicand(f64),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not a Jordan *-subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("map check failed: {0}")]
    MapCheck(String),

    #[error("singular Gram matrix (minimum eigenvalue {0:e})")]
    SingularGram(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
