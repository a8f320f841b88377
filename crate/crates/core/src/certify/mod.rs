//! Irrationality certificates for factorial series.
//!
//! Suppose `P = Σ χ(n)/n!` equals `a/b`. Then
//!
//! ```text
//! X_b = b!·(P − Σ_{n≤b} χ(n)/n!) = Σ_{n>b} b!·χ(n)/n!
//! ```
//!
//! is an integer, and it is positive whenever χ is nonzero infinitely often.
//! Bounding every term by `M/(b+1)^(n−b)` gives `X_b < M/b`, so no `b > M`
//! can work. Each remaining `b ≤ M` is ruled out by an exact enclosure of
//! `X_b` that contains no integer. A [`Certificate`] records those
//! enclosures together with the number of terms used, so [`verify`] can
//! replay every one of them without searching.

mod verify;

use std::cmp::Ordering;

use num::{BigUint, One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsl::{parse_spec, render_spec};
use crate::error::{Error, Result};
use crate::ratio::{Interval, Natural, Ratio};
use crate::series::ChiSpec;

pub use verify::{verify, Failure, VerificationOutcome};

/// How many times screening doubles the cutoff before reporting failure.
pub const SCREENING_REFINEMENTS: u32 = 12;

/// Largest M for which [`certify`] will emit one record per denominator.
pub const MAX_SCREENED_BOUND: usize = 1_000_000;

pub const FORMAT_VERSION: &str = "1";

/// First cutoff tried when screening denominator `b`.
pub fn screening_start(spec: &ChiSpec, b: usize) -> usize {
    b + 2 * spec.cycle().len() + 8
}

/// Largest cutoff screening may reach for denominator `b`.
pub fn screening_cap(spec: &ChiSpec, b: usize) -> usize {
    screening_start(spec, b) << SCREENING_REFINEMENTS
}

/// Enclosure of `X_b` computed with `terms_used` terms, shown integer-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorRecord {
    pub b: usize,
    pub terms_used: usize,
    pub x_lo: Ratio,
    pub x_hi: Ratio,
}

impl DenominatorRecord {
    /// True when `0 < x_lo ≤ x_hi` and `[x_lo, x_hi]` holds no integer.
    pub fn excludes_integers(&self) -> bool {
        self.x_lo.is_positive()
            && self.x_lo <= self.x_hi
            && Interval::new(self.x_lo.clone(), self.x_hi.clone()).is_integer_free()
    }
}

/// Covers every `b > M`: `X_b < M/b ≤ M/(M+1) < 1`, while an integer
/// `X_b > 0` would have to be at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeDenominatorBound {
    /// `M/(M+1)`.
    pub bound: Ratio,
}

impl LargeDenominatorBound {
    pub fn for_bound(m: &Natural) -> Self {
        LargeDenominatorBound { bound: Ratio::of_naturals(m, &(m + 1u32)) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Irrational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub spec: ChiSpec,
    pub bound_m: Natural,
    /// One record per `b = 1..=M`, in order.
    pub screening: Vec<DenominatorRecord>,
    pub large_b: LargeDenominatorBound,
    pub verdict: Verdict,
}

/// `Σ_{n=b+1}^{N} b!·χ(n)/n!`, kept as `numer / ((b+1)(b+2)…N)`.
struct ScaledTail<'a> {
    spec: &'a ChiSpec,
    upto: usize,
    numer: BigUint,
    denom: BigUint,
}

impl<'a> ScaledTail<'a> {
    fn new(spec: &'a ChiSpec, b: usize) -> Self {
        ScaledTail { spec, upto: b, numer: BigUint::zero(), denom: BigUint::one() }
    }

    fn advance_to(&mut self, n: usize) {
        for k in self.upto + 1..=n {
            self.numer *= k;
            self.numer += self.spec.chi_at(k);
            self.denom *= k;
        }
        self.upto = n;
    }

    fn value(&self) -> Ratio {
        Ratio::of_naturals(&self.numer, &self.denom)
    }

    /// `[x, x + M·b!/(N!·N)]`; note `b!/N!` is `1/denom`.
    fn enclosure(&self) -> Interval {
        let lo = self.value();
        let width = Ratio::of_naturals(&self.spec.effective_bound(), &(&self.denom * self.upto));
        let hi = &lo + &width;
        Interval::new(lo, hi)
    }
}

fn check_terms(b: usize, n: usize) -> Result<()> {
    if n <= b {
        return Err(Error::TermsNotPastDenominator { b, terms: n });
    }
    Ok(())
}

/// Exact `Σ_{n=b+1}^{N} b!·χ(n)/n!`.
pub fn x_partial(spec: &ChiSpec, b: usize, n: usize) -> Result<Ratio> {
    check_terms(b, n)?;
    let mut tail = ScaledTail::new(spec, b);
    tail.advance_to(n);
    Ok(tail.value())
}

/// Interval guaranteed to contain `X_b`.
pub fn x_enclosure(spec: &ChiSpec, b: usize, n: usize) -> Result<Interval> {
    check_terms(b, n)?;
    let mut tail = ScaledTail::new(spec, b);
    tail.advance_to(n);
    Ok(tail.enclosure())
}

/// `M/b`, a strict upper bound on `X_b`.
pub fn theorem_bound(spec: &ChiSpec, b: usize) -> Result<Ratio> {
    if b == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Ratio::of_naturals(&spec.effective_bound(), &BigUint::from(b)))
}

/// Compares `b!/n!` with `(1+b)^(−(n−b))` exactly.
///
/// The two agree at `n = b+1` and the left side is strictly smaller beyond.
pub fn factorial_vs_geometric(b: usize, n: usize) -> Result<Ordering> {
    check_terms(b, n)?;
    let rising: BigUint = (b + 1..=n).fold(BigUint::one(), |acc, k| acc * k);
    let power = num::pow(BigUint::from(b + 1), n - b);
    // b!/n! = 1/rising, so the ordering flips
    Ok(power.cmp(&rising))
}

/// `b!/n! ≤ (1+b)^(−(n−b))`, checked exactly.
pub fn factorial_inequality_check(b: usize, n: usize) -> Result<bool> {
    Ok(factorial_vs_geometric(b, n)? != Ordering::Greater)
}

fn require_certifiable(spec: &ChiSpec) -> Result<()> {
    match spec.rational_shortcut() {
        Some(value) => Err(Error::RationalSeries(value)),
        None => Ok(()),
    }
}

/// Proves `X_b` is not an integer, refining the cutoff by doubling.
pub fn screen_denominator(spec: &ChiSpec, b: usize) -> Result<DenominatorRecord> {
    if b == 0 {
        return Err(Error::ZeroDenominator);
    }
    require_certifiable(spec)?;
    let start = screening_start(spec, b);
    let mut tail = ScaledTail::new(spec, b);
    for doubling in 0..=SCREENING_REFINEMENTS {
        tail.advance_to(start << doubling);
        let enc = tail.enclosure();
        if enc.lo().is_positive() && enc.is_integer_free() {
            return Ok(DenominatorRecord {
                b,
                terms_used: tail.upto,
                x_lo: enc.lo().clone(),
                x_hi: enc.hi().clone(),
            });
        }
    }
    Err(Error::ScreeningInconclusive { b, terms: tail.upto })
}

/// Builds a full certificate. Denominators are screened in parallel on the
/// current rayon pool; records come back in `b` order.
pub fn certify(spec: &ChiSpec) -> Result<Certificate> {
    require_certifiable(spec)?;
    let m = spec.effective_bound();
    let count = m
        .to_usize()
        .filter(|&c| c <= MAX_SCREENED_BOUND)
        .ok_or_else(|| Error::BoundTooLarge { bound: m.clone(), limit: MAX_SCREENED_BOUND })?;
    let screening = (1..=count)
        .into_par_iter()
        .map(|b| screen_denominator(spec, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        spec: spec.clone(),
        large_b: LargeDenominatorBound::for_bound(&m),
        bound_m: m,
        screening,
        verdict: Verdict::Irrational,
    })
}

impl Certificate {
    pub fn max_terms_used(&self) -> usize {
        self.screening.iter().map(|r| r.terms_used).max().unwrap_or(0)
    }

    /// Canonical JSON: fixed field order, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let wire = WireCertificate {
            format_version: FORMAT_VERSION.to_string(),
            spec: render_spec(&self.spec),
            bound_m: self.bound_m.to_string(),
            screening: self
                .screening
                .iter()
                .map(|r| WireRecord {
                    b: r.b as u64,
                    terms_used: r.terms_used as u64,
                    x_lo: r.x_lo.clone(),
                    x_hi: r.x_hi.clone(),
                })
                .collect(),
            large_b: WireLargeB { bound: self.large_b.bound.clone() },
            verdict: self.verdict,
        };
        let mut out = serde_json::to_string_pretty(&wire).expect("certificate serializes");
        out.push('\n');
        out
    }

    /// Parses the canonical JSON form. Structural problems are errors; whether
    /// the numbers actually prove anything is for [`verify`] to decide.
    pub fn from_json(text: &str) -> Result<Certificate> {
        let wire: WireCertificate = serde_json::from_str(text)?;
        let malformed = |msg: String| Error::MalformedCertificate(msg);
        if wire.format_version != FORMAT_VERSION {
            return Err(malformed(format!("unsupported format_version {:?}", wire.format_version)));
        }
        let spec = parse_spec(&wire.spec).map_err(|e| malformed(format!("spec: {e}")))?;
        let digits = !wire.bound_m.is_empty() && wire.bound_m.bytes().all(|c| c.is_ascii_digit());
        if !digits {
            return Err(malformed(format!("bound_M {:?} is not a decimal natural", wire.bound_m)));
        }
        let bound_m: Natural = wire.bound_m.parse().expect("checked digits");
        let screening = wire
            .screening
            .into_iter()
            .map(|r| {
                let b = usize::try_from(r.b).map_err(|_| malformed(format!("b = {} out of range", r.b)))?;
                let terms_used = usize::try_from(r.terms_used)
                    .map_err(|_| malformed(format!("terms_used = {} out of range", r.terms_used)))?;
                Ok(DenominatorRecord { b, terms_used, x_lo: r.x_lo, x_hi: r.x_hi })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            spec,
            bound_m,
            screening,
            large_b: LargeDenominatorBound { bound: wire.large_b.bound },
            verdict: wire.verdict,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCertificate {
    format_version: String,
    spec: String,
    #[serde(rename = "bound_M")]
    bound_m: String,
    screening: Vec<WireRecord>,
    large_b: WireLargeB,
    verdict: Verdict,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRecord {
    b: u64,
    terms_used: u64,
    x_lo: Ratio,
    x_hi: Ratio,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireLargeB {
    bound: Ratio,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::builtin_example;

    fn cyc(xs: &[u32]) -> ChiSpec {
        ChiSpec::periodic(xs.iter().copied()).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    #[test]
    fn x_partial_examples() {
        assert_eq!(x_partial(&cyc(&[1]), 1, 3).unwrap(), r(2, 3));
        assert_eq!(x_partial(&cyc(&[2, 0]), 2, 4).unwrap(), r(1, 6));
        // χ(6) = 0 for the cycle 0,2
        assert_eq!(x_partial(&cyc(&[0, 2]), 5, 6).unwrap(), Ratio::zero());
        assert!(matches!(
            x_partial(&cyc(&[1]), 3, 3),
            Err(Error::TermsNotPastDenominator { b: 3, terms: 3 })
        ));
    }

    #[test]
    fn x_enclosure_examples() {
        let e8 = x_enclosure(&cyc(&[3, 5, 7]), 8, 40).unwrap();
        assert!(e8.hi() < &r(7, 8));

        let finite = ChiSpec::new(vec![1u32.into()], vec![0u32.into()], None).unwrap();
        let enc = x_enclosure(&finite, 1, 2).unwrap();
        assert_eq!(enc.lo(), &Ratio::zero());
        // M·1!/(2!·2) with M = 1
        assert_eq!(enc.hi(), &r(1, 4));
    }

    #[test]
    fn theorem_bound_examples() {
        let ex1 = builtin_example("example1").unwrap();
        assert_eq!(theorem_bound(&ex1, 8).unwrap(), r(7, 8));
        assert_eq!(theorem_bound(&ex1, 7).unwrap(), r(1, 1));
        let ex3 = builtin_example("example3").unwrap();
        assert_eq!(theorem_bound(&ex3, 102).unwrap(), r(101, 102));
        assert!(matches!(theorem_bound(&ex1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn factorial_inequality_examples() {
        assert_eq!(factorial_vs_geometric(2, 3).unwrap(), Ordering::Equal);
        assert_eq!(factorial_vs_geometric(2, 4).unwrap(), Ordering::Less);
        assert_eq!(factorial_vs_geometric(20, 40).unwrap(), Ordering::Less);
        assert!(factorial_inequality_check(20, 40).unwrap());
        assert!(factorial_inequality_check(2, 2).is_err());
        // 2!/4! = 1/12 against 1/9, literally
        let fact = |n| Ratio::from_natural(&crate::eval::factorial(n));
        let lhs = fact(2) / fact(4);
        assert_eq!(lhs, r(1, 12));
        assert!(lhs < r(1, 9));
    }

    #[test]
    fn screening_examples() {
        let rec = screen_denominator(&cyc(&[1]), 1).unwrap();
        assert!(rec.x_lo.is_positive() && rec.x_hi < Ratio::one());
        assert!(rec.excludes_integers());
        assert_eq!(rec.terms_used, screening_start(&cyc(&[1]), 1));

        let ex1 = builtin_example("example1").unwrap();
        let rec = screen_denominator(&ex1, 1).unwrap();
        assert!(rec.excludes_integers());
        // X_1 = P − 8 and P ≈ 12.272
        assert_eq!(rec.x_lo.floor(), 4.into());

        let rec = screen_denominator(&cyc(&[2, 0]), 3).unwrap();
        assert!(rec.x_lo.is_positive() && rec.x_hi < Ratio::one());
    }

    #[test]
    fn screening_refines_long_zero_prefix() {
        // first nonzero value sits far past the initial cutoff
        let mut prefix = vec![Natural::zero(); 40];
        prefix.push(1u32.into());
        let spec = ChiSpec::new(prefix, vec![1u32.into()], None).unwrap();
        let rec = screen_denominator(&spec, 1).unwrap();
        assert!(rec.terms_used > screening_start(&spec, 1));
        assert!(rec.excludes_integers());
    }

    #[test]
    fn rational_series_refused() {
        let three = ChiSpec::new(vec![3u32.into()], vec![0u32.into()], None).unwrap();
        match certify(&three) {
            Err(Error::RationalSeries(v)) => assert_eq!(v.to_string(), "3/1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(screen_denominator(&three, 1), Err(Error::RationalSeries(_))));
    }

    #[test]
    fn huge_bound_refused() {
        let spec = ChiSpec::new(vec![], vec![1u32.into()], Some(Natural::from(10u32).pow(30))).unwrap();
        assert!(matches!(certify(&spec), Err(Error::BoundTooLarge { .. })));
    }

    #[test]
    fn certify_examples() {
        let c1 = certify(&builtin_example("example1").unwrap()).unwrap();
        assert_eq!(c1.screening.len(), 7);
        assert_eq!(c1.bound_m, 7u32.into());
        assert_eq!(c1.large_b.bound, r(7, 8));
        assert_eq!(c1.verdict, Verdict::Irrational);
        assert!(c1.screening.iter().enumerate().all(|(i, rec)| rec.b == i + 1 && rec.excludes_integers()));

        let c4 = certify(&builtin_example("example4").unwrap()).unwrap();
        assert_eq!(c4.bound_m, 2u32.into());
        assert_eq!(c4.screening.len(), 2);
    }

    #[test]
    fn json_round_trip_and_layout() {
        let c = certify(&builtin_example("example4").unwrap()).unwrap();
        let text = c.to_json();
        assert!(text.ends_with("}\n"));
        let keys = ["\"format_version\"", "\"spec\"", "\"bound_M\"", "\"screening\"", "\"large_b\"", "\"verdict\""];
        let positions: Vec<_> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"spec\": \"periodic[2,0]\""));
        assert!(text.contains("\"bound\": \"2/3\""));
        assert!(text.contains("\"verdict\": \"irrational\""));
        assert_eq!(Certificate::from_json(&text).unwrap(), c);
        assert_eq!(Certificate::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn json_rejects_malformed() {
        let text = certify(&builtin_example("example4").unwrap()).unwrap().to_json();
        assert!(Certificate::from_json(&text[..text.len() / 2]).is_err());
        assert!(Certificate::from_json(&text.replace("\"1\"", "\"2\"")).is_err());
        assert!(Certificate::from_json(&text.replace("irrational", "rational")).is_err());
        assert!(Certificate::from_json(&text.replace("\"2/3\"", "\"2/0\"")).is_err());
        assert!(Certificate::from_json(&text.replace("\"bound_M\": \"2\"", "\"bound_M\": \"-2\"")).is_err());
        assert!(Certificate::from_json(&text.replace("\"b\": 1", "\"b\": -1")).is_err());
        // unreduced spellings read as their value
        let respelled = Certificate::from_json(&text.replace("\"2/3\"", "\"4/6\"")).unwrap();
        assert_eq!(respelled, Certificate::from_json(&text).unwrap());
        assert!(Certificate::from_json(&text.replace("periodic[2,0]", "periodic[]")).is_err());
        assert!(Certificate::from_json(&text.replace("\"verdict\"", "\"extra\": 1, \"verdict\"")).is_err());
    }
}
