use thiserror::Error;

/// Errors surfaced by the library. Variants mirror the failure modes of the
/// individual modules; the CLI maps anything config-related to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by zero in finite field")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("field/graph size {size} exceeds the supported desk scale ({cap})")]
    ScaleExceeded { size: u128, cap: u128 },
    #[error("endomorphism has no y-component; full point image unavailable")]
    MissingYComponent,
    #[error("Frobenius data inconsistent or curve not ordinary: {0}")]
    NotOrdinaryOrInconsistent(String),
    #[error("curve is not ordinary: p = {p} divides trace {trace}")]
    NotOrdinary { p: u64, trace: i64 },
    #[error("the zero ideal has no HNF basis")]
    ZeroIdeal,
    #[error("valuation of the zero element is undefined")]
    ZeroElement,
    #[error("level {h} outside H_i = [0, {max}]")]
    LevelOutOfRange { h: u32, max: u32 },
    #[error("period search exceeded cap {0}; alpha is not invertible modulo the ideal")]
    SearchCapExceeded(u64),
    #[error("norm {0} exceeds the trial-division cap")]
    NormTooLarge(String),
    #[error("vertex {0} is not periodic")]
    NotPeriodic(u32),
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config schema error: {0}")]
    Schema(String),
    #[error("degree/norm mismatch: map degree {degree} but N(quad_rep) = {norm}")]
    DegreeNormMismatch { degree: usize, norm: String },
    #[error("prediction inconsistency: {0}")]
    PredictionInconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
