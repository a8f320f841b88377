use std::fmt;

use crate::ratio::{Natural, Ratio};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Error raised by the series DSL parser. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted here; empty for semantic errors.
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("cycle must be nonempty")]
    EmptyCycle,

    #[error("value {value} exceeds bound {bound}")]
    ValueExceedsBound { value: Natural, bound: Natural },

    #[error("bound must be at least 1")]
    ZeroBound,

    #[error("subtract_e requires χ(n) ≥ 1 for all n")]
    SubtractEZeroValue,

    #[error("unknown example {name:?}; valid names: {}", crate::series::BUILTIN_NAMES.join(", "))]
    UnknownExample { name: String },

    #[error("tail bound requires a cutoff N ≥ 1")]
    ZeroCutoff,

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(Ratio),

    #[error("digit count must be at least 1")]
    ZeroDigits,

    #[error("rounding undecidable at {digits} digits: enclosure {enclosure} still straddles a rounding boundary")]
    RoundingUndecidable { digits: u32, enclosure: String },

    #[error("need N ≥ b + 1, got b = {b}, N = {terms}")]
    TermsNotPastDenominator { b: usize, terms: usize },

    #[error("denominator must be at least 1")]
    ZeroDenominator,

    #[error("probe depth must be at least 1")]
    ZeroProbeDepth,

    #[error("maximum denominator must be at least 1")]
    ZeroMaxDenominator,

    #[error("series is rational: {0}")]
    RationalSeries(Ratio),

    #[error("screening inconclusive for b = {b} after {terms} terms")]
    ScreeningInconclusive { b: usize, terms: usize },

    #[error("bound M = {bound} is too large to screen (limit {limit})")]
    BoundTooLarge { bound: Natural, limit: usize },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
