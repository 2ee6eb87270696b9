use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by the adele crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdeleError {
    /// The radix table would have to grow past its configured index ceiling.
    #[error("radix table ceiling exceeded: index {requested} is outside ±{ceiling}")]
    TableCeiling { requested: i64, ceiling: i64 },

    #[error("the order of zero is infinite")]
    ZeroOrder,

    /// The value is zero to its working precision, so only an upper bound on
    /// the norm is known.
    #[error("norm is indeterminate: value is zero to precision {precision}, norm <= {bound}")]
    IndeterminateNorm { precision: i64, bound: BigRational },

    #[error("insufficient precision: need index {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },

    #[error("p-adic prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("missing p-adic component for prime {0}")]
    MissingPrime(u64),

    #[error("p-adic component for prime {prime} has precision {available}, need {needed}")]
    InsufficientComponentPrecision {
        prime: u64,
        needed: i64,
        available: i64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge: tail bound {tail_bound:e} > eps {eps:e} after {terms} terms")]
    NonConvergence {
        terms: usize,
        tail_bound: f64,
        eps: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AdeleError>;
