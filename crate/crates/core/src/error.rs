use thiserror::Error;

/// Errors raised by sequence construction, censuses and the constructive procedures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation would produce an empty sequence (length {len}, shift {shift})")]
    EmptyOutput { len: usize, shift: usize },

    #[error("sequence must contain at least one element")]
    EmptySequence,

    #[error("symbol {symbol} at position {position} is outside alphabet of size {alphabet}")]
    SymbolOutOfRange {
        position: usize,
        symbol: u64,
        alphabet: u64,
    },

    #[error("mantissa at position {position} does not fit in {precision} bits")]
    MantissaOutOfRange { position: usize, precision: u32 },

    #[error("digit stream exhausted: {needed} digits required, {available} available")]
    InsufficientPrecision { needed: usize, available: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence too short: need more than {needed} elements, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("block length {requested} exceeds supported maximum {max}")]
    Refused { requested: usize, max: usize },

    #[error("search budget of {budget} candidates exhausted at gap {step}")]
    SearchBudget { step: usize, budget: usize },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
