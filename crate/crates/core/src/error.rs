use thiserror::Error;

/// Errors raised by the algebraic and numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("level must be at least 1, got {0}")]
    InvalidLevel(usize),

    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("highest weight {weight} exceeds level {k}")]
    WeightAboveLevel { weight: u64, k: usize },

    #[error("exponent l_{index} = {value} is not a nonnegative integer")]
    NonIntegralExponent { index: usize, value: f64 },

    #[error("pairing condition fails: l_{j} + l_{mirror} = {sum}, expected n = {n}")]
    PairingCondition {
        j: usize,
        mirror: usize,
        sum: f64,
        n: f64,
    },

    #[error("normalization n = {0} must exceed -2")]
    InvalidNormalization(f64),

    #[error("exponent l_{index} = {value} is below -1")]
    ExponentBelowMinusOne { index: usize, value: f64 },

    #[error("asymptotic datum m_{index} = {value} lies outside [-1, 1]")]
    AsymptoticOutOfRange { index: usize, value: f64 },

    #[error("matrix is not invertible over Laurent polynomials: determinant {0}")]
    NotInvertible(String),

    #[error("matrix dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error("xi_{target} is not reachable from xi_{start} at level {k}")]
    NotReachable { k: usize, start: i64, target: i64 },

    #[error("gauge ladder from xi_{start} to xi_{target} failed symbolic verification")]
    LadderVerification { start: i64, target: i64 },

    #[error("boundary asymptotic data not supported numerically (m_{index} = {value})")]
    BoundaryAsymptotic { index: usize, value: f64 },

    #[error("invalid shooting problem: {0}")]
    InvalidProblem(String),

    #[error("bracket exhausted: no blow-up dichotomy for m = {m} with |b| <= {limit}")]
    BracketExhausted { m: f64, limit: f64 },

    #[error("integrator failure at r = {r}: {reason}")]
    Integrator { r: f64, reason: String },

    #[error("point |t| = {radius} outside solved annulus [{r_min}, {r_max}]")]
    OutsideAnnulus { radius: f64, r_min: f64, r_max: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
