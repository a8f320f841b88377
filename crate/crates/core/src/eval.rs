//! Exact partial sums, tail bounds and certified enclosures of `Σ χ(n)/n!`.
//!
//! Every quantity here is an exact rational. The only rounding step is
//! [`decimal`], and it refuses to emit a digit string unless the whole
//! enclosure rounds to it.

use std::fmt;

use num::{BigInt, BigUint, Integer, One};

use crate::error::{Error, Result};
use crate::ratio::{Interval, Natural, Ratio};
use crate::series::ChiSpec;

/// Maximum number of times [`decimal`] doubles the cutoff before giving up.
pub const ROUNDING_REFINEMENTS: u32 = 12;

/// Enclosure `[S_N, S_N + tail]` of the series value, where `S_N` is the
/// partial sum through index `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueEnclosure {
    pub interval: Interval,
    pub terms_used: usize,
    pub tail_bound: Ratio,
}

/// Round-to-nearest decimal rendering `d…d.d…d` of a series value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalString {
    digits: String,
    fraction_digits: u32,
}

impl DecimalString {
    pub fn as_str(&self) -> &str {
        &self.digits
    }

    pub fn fraction_digits(&self) -> u32 {
        self.fraction_digits
    }

    /// Always true: strings are only produced once rounding is certified.
    pub fn is_round_to_nearest(&self) -> bool {
        true
    }

    /// The exact rational the string denotes.
    pub fn to_ratio(&self) -> Ratio {
        let scaled: BigInt = self.digits.replace('.', "").parse().expect("digits only");
        Ratio::from_integer(scaled) / Ratio::pow10(self.fraction_digits)
    }
}

impl fmt::Display for DecimalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits)
    }
}

/// Incrementally extended partial sum `Σ_{n≤N} χ(n)/n!`, kept as
/// `numer / N!` so extending by one term is one multiply-add.
pub(crate) struct PartialSums<'a> {
    spec: &'a ChiSpec,
    upto: usize,
    numer: BigUint,
    factorial: BigUint,
}

impl<'a> PartialSums<'a> {
    pub(crate) fn new(spec: &'a ChiSpec) -> Self {
        PartialSums { spec, upto: 0, numer: spec.chi_at(0).clone(), factorial: BigUint::one() }
    }

    pub(crate) fn advance_to(&mut self, n: usize) {
        assert!(n >= self.upto, "partial sums only move forward");
        for k in self.upto + 1..=n {
            self.numer *= k;
            self.numer += self.spec.chi_at(k);
            self.factorial *= k;
        }
        self.upto = n;
    }

    pub(crate) fn value(&self) -> Ratio {
        Ratio::of_naturals(&self.numer, &self.factorial)
    }

    fn enclosure(&self) -> Result<ValueEnclosure> {
        let tail = tail_from_factorial(&self.spec.effective_bound(), self.upto, &self.factorial)?;
        let lo = self.value();
        let hi = &lo + &tail;
        Ok(ValueEnclosure { interval: Interval::new(lo, hi), terms_used: self.upto, tail_bound: tail })
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn tail_from_factorial(bound: &Natural, n: usize, n_factorial: &BigUint) -> Result<Ratio> {
    if n == 0 {
        return Err(Error::ZeroCutoff);
    }
    Ok(Ratio::of_naturals(bound, &(n_factorial * n)))
}

/// Exact `Σ_{n=0}^{N} χ(n)/n!`.
pub fn partial_sum(spec: &ChiSpec, n: usize) -> Ratio {
    let mut sums = PartialSums::new(spec);
    sums.advance_to(n);
    sums.value()
}

/// `M/(N·N!)`, an upper bound on `Σ_{n>N} χ(n)/n!`.
///
/// Each tail term satisfies `χ(n)/n! ≤ M/(N!·(N+1)^(n−N))`, and the
/// geometric series over `n > N` sums to `M/(N!·N)`.
pub fn tail_bound(spec: &ChiSpec, n: usize) -> Result<Ratio> {
    tail_from_factorial(&spec.effective_bound(), n, &factorial(n))
}

pub fn enclose_value(spec: &ChiSpec, n: usize) -> Result<ValueEnclosure> {
    if n == 0 {
        return Err(Error::ZeroCutoff);
    }
    let mut sums = PartialSums::new(spec);
    sums.advance_to(n);
    sums.enclosure()
}

/// Smallest `N ≥ 1` with `M/(N·N!) ≤ eps`.
pub fn cutoff_for_width(spec: &ChiSpec, eps: &Ratio) -> Result<usize> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTolerance(eps.clone()));
    }
    let bound = BigInt::from(spec.effective_bound());
    // M/(N·N!) ≤ p/q  ⇔  M·q ≤ p·N·N!
    let lhs = &bound * eps.denom();
    let fits = |n: usize| lhs <= eps.numer() * BigInt::from(factorial(n) * n);

    let mut hi = 1;
    while !fits(hi) {
        hi *= 2;
    }
    if hi == 1 {
        return Ok(1);
    }
    // fits(lo) is false, fits(hi) is true
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Enclosure whose tail bound is at most `eps`, using the fewest terms.
pub fn enclose_to_width(spec: &ChiSpec, eps: &Ratio) -> Result<ValueEnclosure> {
    enclose_value(spec, cutoff_for_width(spec, eps)?)
}

/// The series value rounded to nearest with `k` fractional digits.
pub fn decimal(spec: &ChiSpec, k: u32) -> Result<DecimalString> {
    if k == 0 {
        return Err(Error::ZeroDigits);
    }
    let scale = Ratio::pow10(k);
    // A finite sum is its own enclosure; refining cannot move it off a tie.
    if let Some(exact) = spec.rational_shortcut() {
        let scaled = &exact * &scale;
        let doubled = &scaled * &Ratio::from(2);
        if doubled.is_integer() && !scaled.is_integer() {
            return Err(Error::RoundingUndecidable { digits: k, enclosure: Interval::point(exact).to_string() });
        }
        return Ok(format_scaled(&scaled.round_half_up(), k));
    }
    let start = cutoff_for_width(spec, &Ratio::pow10(k + 2).recip())?;
    let mut sums = PartialSums::new(spec);
    let mut last = None;
    for doubling in 0..=ROUNDING_REFINEMENTS {
        sums.advance_to(start << doubling);
        let enc = sums.enclosure()?;
        let lo = enc.interval.lo() * &scale;
        let hi = enc.interval.hi() * &scale;
        let nearest = lo.round_half_up();
        let cell_lo = Ratio::from_integer(&nearest * 2 - 1) / Ratio::from(2);
        let cell_hi = Ratio::from_integer(&nearest * 2 + 1) / Ratio::from(2);
        if cell_lo < lo && hi < cell_hi {
            return Ok(format_scaled(&nearest, k));
        }
        last = Some(enc.interval);
    }
    Err(Error::RoundingUndecidable {
        digits: k,
        enclosure: last.map(|i| i.to_string()).unwrap_or_default(),
    })
}

fn format_scaled(scaled: &BigInt, k: u32) -> DecimalString {
    let (int_part, frac) = scaled.div_rem(&num::pow(BigInt::from(10u32), k as usize));
    DecimalString {
        digits: format!("{int_part}.{frac:0>width$}", width = k as usize),
        fraction_digits: k,
    }
}
