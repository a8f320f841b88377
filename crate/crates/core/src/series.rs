//! Coefficient sequences χ for factorial series `Σ χ(n)/n!`.
//!
//! A sequence is described by a finite prefix followed by a cycle that
//! repeats forever, plus an optional declared upper bound M.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::ratio::{Natural, Ratio};

/// Names accepted by [`builtin_example`].
pub const BUILTIN_NAMES: [&str; 3] = ["example1", "example3", "example4"];

const PRIMES_TO_101: [u32; 26] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101,
];

/// Prefix-then-cycle description of χ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChiSpec {
    prefix: Vec<Natural>,
    cycle: Vec<Natural>,
    declared_bound: Option<Natural>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesClass {
    /// Every cycle value is zero: the series is a finite sum.
    EventuallyZero,
    CertifiableIrrational,
}

impl ChiSpec {
    /// Validates the cycle is nonempty and every value respects the declared
    /// bound, if any.
    pub fn new(
        prefix: Vec<Natural>,
        cycle: Vec<Natural>,
        declared_bound: Option<Natural>,
    ) -> Result<ChiSpec> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        if let Some(bound) = &declared_bound {
            if bound.is_zero() {
                return Err(Error::ZeroBound);
            }
            if let Some(value) = prefix.iter().chain(&cycle).find(|v| *v > bound) {
                return Err(Error::ValueExceedsBound { value: value.clone(), bound: bound.clone() });
            }
        }
        Ok(ChiSpec { prefix, cycle, declared_bound })
    }

    /// Purely periodic χ with no declared bound.
    pub fn periodic<I, T>(cycle: I) -> Result<ChiSpec>
    where
        I: IntoIterator<Item = T>,
        T: Into<Natural>,
    {
        ChiSpec::new(Vec::new(), cycle.into_iter().map(Into::into).collect(), None)
    }

    pub fn prefix(&self) -> &[Natural] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Natural] {
        &self.cycle
    }

    pub fn declared_bound(&self) -> Option<&Natural> {
        self.declared_bound.as_ref()
    }

    /// χ(n).
    pub fn chi_at(&self, n: usize) -> &Natural {
        match self.prefix.get(n) {
            Some(v) => v,
            None => &self.cycle[(n - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// The bound M used by every tail estimate: the declared bound if present,
    /// otherwise the largest value, floored at 1.
    pub fn effective_bound(&self) -> Natural {
        if let Some(b) = &self.declared_bound {
            return b.clone();
        }
        let max = self.prefix.iter().chain(&self.cycle).max().cloned().unwrap_or_default();
        if max.is_zero() {
            Natural::one()
        } else {
            max
        }
    }

    pub fn classify(&self) -> SeriesClass {
        if self.cycle.iter().all(Zero::is_zero) {
            SeriesClass::EventuallyZero
        } else {
            SeriesClass::CertifiableIrrational
        }
    }

    /// Exact value of an eventually-zero series; `None` otherwise.
    pub fn rational_shortcut(&self) -> Option<Ratio> {
        match self.classify() {
            SeriesClass::EventuallyZero => {
                Some(crate::eval::partial_sum(self, self.prefix.len()))
            }
            SeriesClass::CertifiableIrrational => None,
        }
    }

    /// The spec of `P_χ − e`: every value (and the declared bound) lowered by one.
    pub fn subtract_e(&self) -> Result<ChiSpec> {
        if self.prefix.iter().chain(&self.cycle).any(Zero::is_zero) {
            return Err(Error::SubtractEZeroValue);
        }
        let dec = |v: &Natural| v - 1u32;
        // A declared bound of 1 would drop to 0, which is not a valid bound.
        let bound = self.declared_bound.as_ref().map(|b| {
            let lowered = dec(b);
            if lowered.is_zero() {
                Natural::one()
            } else {
                lowered
            }
        });
        Ok(ChiSpec {
            prefix: self.prefix.iter().map(dec).collect(),
            cycle: self.cycle.iter().map(dec).collect(),
            declared_bound: bound,
        })
    }
}

/// Built-in series: `example1` (cycle 3,5,7), `example3` (the 26 primes
/// 2..=101, ascending) and `example4` (cycle 2,0, i.e. `1 + cos(nπ)`).
pub fn builtin_example(name: &str) -> Result<ChiSpec> {
    let cycle: Vec<u32> = match name {
        "example1" => vec![3, 5, 7],
        "example3" => PRIMES_TO_101.to_vec(),
        "example4" => vec![2, 0],
        _ => return Err(Error::UnknownExample { name: name.to_string() }),
    };
    ChiSpec::periodic(cycle)
}
