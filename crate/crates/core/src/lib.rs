//! Exact evaluation and irrationality certificates for factorial series
//! `P = Σ_{n≥0} χ(n)/n!` whose coefficients are bounded naturals given as a
//! finite prefix followed by a repeating cycle.
//!
//! ```
//! use chi_core::{certify, decimal, parse_spec, verify};
//!
//! let spec = parse_spec("periodic[3,5,7]").unwrap();
//! assert_eq!(decimal(&spec, 6).unwrap().as_str(), "12.272009");
//!
//! let cert = certify(&spec).unwrap();
//! assert_eq!(cert.screening.len(), 7);
//! assert!(verify(&cert).ok());
//! ```

pub mod certify;
pub mod dsl;
pub mod error;
pub mod eval;
pub mod oracle;
pub mod ratio;
pub mod series;

pub use certify::{
    certify, factorial_inequality_check, screen_denominator, theorem_bound, verify, x_enclosure,
    x_partial, Certificate, DenominatorRecord, VerificationOutcome, Verdict,
};
pub use dsl::{parse_spec, render_spec};
pub use error::{Error, ParseError, Result};
pub use eval::{
    decimal, enclose_to_width, enclose_value, partial_sum, tail_bound, DecimalString, ValueEnclosure,
};
pub use oracle::{deep_tail_probe, exclude_rationals, geometric_tail_closed_form, ExclusionReport};
pub use ratio::{Interval, Natural, Ratio};
pub use series::{builtin_example, ChiSpec, SeriesClass};
