//! Error type shared by the whole crate.

/// Failures surfaced by constructions and solvers.
///
/// Residuals are reported as `f64` regardless of the working scalar; they
/// are diagnostics, not data.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite matrix entries")]
    NonFinite,

    #[error("singular linear system in {0}")]
    SingularSystem(&'static str),

    #[error("basis is not linearly independent: {count} generators, numerical rank {rank}")]
    DependentBasis { count: usize, rank: usize },

    #[error("basis not closed under bracket (residual {residual:.3e})")]
    NotClosedUnderBracket { residual: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} violates its defining identity (residual {residual:.3e})")]
    MembershipViolation { what: &'static str, residual: f64 },

    #[error("ad-eigenvalue classification ambiguous for root {root}: |value| = {value:.3e}")]
    ClassificationAmbiguous { root: String, value: f64 },

    #[error("Weyl normalization failed: {0}")]
    NormalizationFailure(String),

    #[error("subspace not closed: {0}")]
    ClosureFailure(String),

    #[error("orbit point witness inconsistent with value (residual {residual:.3e})")]
    WitnessInconsistent { residual: f64 },

    #[error("matrix is not in the expected group (residual {residual:.3e})")]
    NotInGroup { residual: f64 },

    #[error("mixed geodesic with non-commuting parts is unsupported (|[X_m, X_f]| = {norm:.3e})")]
    UnsupportedGeodesic { norm: f64 },

    #[error("operation supported only for family {0}")]
    UnsupportedFamily(&'static str),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),

    #[error("datum does not match its declared parameters (residual {residual:.3e})")]
    DatumMismatch { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
