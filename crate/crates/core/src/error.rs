use num_bigint::BigInt;
use thiserror::Error;

/// Errors surfaced by the engine. Criterion outcomes (pass/fail/singular) are
/// not errors; they are verdicts in [`crate::report::CriterionReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot factor zero")]
    FactorZero,

    #[error("factorization gave up on composite {n} (per-attempt iteration cap {cap}; raise FactorConfig::rho_iteration_cap)")]
    FactorizationCap { n: BigInt, cap: u64 },

    #[error("zero has no square class")]
    ZeroSquareClass,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{op} requires a nonzero polynomial")]
    ZeroPolynomial { op: &'static str },

    #[error("division by zero polynomial")]
    ZeroPolyDivision,

    #[error("no usable reduction prime below {bound} for factoring {poly}")]
    NoReductionPrime { poly: String, bound: u64 },

    #[error("curve is singular: two of e1, e2, e3 coincide identically")]
    SingularCurve,

    #[error("curve is constant: every difference e_i - e_j is a constant polynomial")]
    ConstantCurve,

    #[error("d = {d} must be square-free and different from 0 and 1")]
    InvalidFieldD { d: BigInt },

    #[error("d = {d} is outside the supported class-number-one list")]
    UnsupportedField { d: BigInt },

    #[error("fundamental unit search exceeded its bound for d = {d}")]
    UnitSearchExceeded { d: BigInt },

    #[error("cubic has no rational root; the quadratic-twist criterion does not apply")]
    NoRationalRoot,

    #[error("cubic splits completely over Q; use the split-cubic criterion instead")]
    FullySplit,

    #[error("cubic has a repeated root; the family is singular")]
    RepeatedRoot,

    #[error("g must be nonconstant and square-free (got {g})")]
    BadTwistPolynomial { g: String },

    #[error("{what} requires ab != 0 and 4a^3 + 27b^2 != 0 (got a = {a}, b = {b})")]
    SingularParameters { what: &'static str, a: BigInt, b: BigInt },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("singular specialization at t0 = {t0}")]
    SingularSpecialization { t0: String },

    #[error("enumeration guard exceeded: {count} distinct irreducible pieces (limit {limit})")]
    EnumerationGuard { count: usize, limit: usize },

    #[error("t0 must be an integer here (got {t0})")]
    NonIntegerT0 { t0: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
