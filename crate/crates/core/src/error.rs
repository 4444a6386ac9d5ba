use thiserror::Error;

use crate::bigraded::Exponent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("truncation order must be positive")]
    ZeroOrder,

    #[error("non-unit: constant term is zero")]
    NonUnit,

    #[error("exterior algebras differ")]
    AlgebraMismatch,

    #[error("generator degree {0} is not a positive odd integer")]
    EvenGeneratorDegree(u32),

    #[error("exterior algebra supports at most {max} generators, got {got}")]
    TooManyGenerators { got: usize, max: usize },

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("element does not live in the cohomology of a general linear group")]
    NotGeneralLinear,

    #[error("exponent {0} is not an isolated-singularity datum (need >= 2)")]
    MilnorExponent(u32),

    #[error("stratum index {ell} out of range 1..={max}")]
    StratumOutOfRange { ell: u32, max: u32 },

    #[error("invalid instance: n = {n}, d = {d} (need n >= 1, d >= 2)")]
    InvalidInstance { n: u32, d: u32 },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("page mismatch: grid on page {grid}, plan for page {plan}")]
    PageMismatch { grid: u32, plan: u32 },

    #[error("spectral sequence page must be >= 2, got {0}")]
    PageTooSmall(u32),

    #[error("infeasible differential at cell ({p}, {q}): {reason}")]
    InfeasiblePlan { p: usize, q: usize, reason: String },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("coefficient list has length {len}, expected order {order}")]
    CoefficientCount { len: usize, order: usize },

    #[error("duplicate term at t^{} u^{}", .0.t, .0.u)]
    DuplicateTerm(Exponent),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
