//! Brute-force checks that do not go through the certificate machinery.
//!
//! [`exclude_rationals`] proves that no fraction with a small denominator
//! lies inside a narrow enclosure of the series value, one denominator at a
//! time. The other two helpers exist to cross-check tail bounds.

use num::{BigInt, BigRational, BigUint, One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dsl::render_spec;
use crate::error::{Error, Result};
use crate::eval::{cutoff_for_width, enclose_value};
use crate::ratio::{Interval, Natural, Ratio};
use crate::series::ChiSpec;

/// Extra attempts, each doubling the cutoff, before giving up.
pub const EXCLUSION_REFINEMENTS: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionResult {
    ProvenExcluded,
    Inconclusive,
}

/// Where the nearest candidate `p/q` fell relative to the enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
    Inside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub q: u64,
    pub p: BigInt,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionReport {
    pub spec: ChiSpec,
    pub max_denominator: u64,
    pub terms_used: usize,
    pub enclosure: Interval,
    pub result: ExclusionResult,
    pub witnesses: Vec<Witness>,
}

/// Nearest-numerator candidate for every `q ≤ max_q`, classified against
/// `enclosure`. Only one numerator per `q` can matter once the enclosure is
/// narrower than `1/(2·max_q²)`: any other `p` is at least `1/(2q)` from
/// the midpoint.
pub fn nearest_candidates(enclosure: &Interval, max_q: u64) -> Vec<Witness> {
    let mid = enclosure.midpoint();
    (1..=max_q)
        .into_par_iter()
        .map(|q| {
            let qr = Ratio::from(q);
            let p = (&qr * &mid).round_half_up();
            let candidate = Ratio::new(p.clone(), BigInt::from(q));
            let side = if &candidate < enclosure.lo() {
                Side::Below
            } else if &candidate > enclosure.hi() {
                Side::Above
            } else {
                Side::Inside
            };
            Witness { q, p, side }
        })
        .collect()
}

/// Proves no `p/q` with `q ≤ max_q` equals the series value, or reports
/// that the refinement budget ran out.
pub fn exclude_rationals(spec: &ChiSpec, max_q: u64) -> Result<ExclusionReport> {
    if max_q == 0 {
        return Err(Error::ZeroMaxDenominator);
    }
    if let Some(value) = spec.rational_shortcut() {
        return Err(Error::RationalSeries(value));
    }
    let q = BigInt::from(max_q);
    // width ≤ 1/(2Q²+1) < 1/(2Q²)
    let eps = Ratio::new(BigInt::one(), &q * &q * 2 + 1);
    let start = cutoff_for_width(spec, &eps)?;

    let mut report = None;
    for doubling in 0..=EXCLUSION_REFINEMENTS {
        let enc = enclose_value(spec, start << doubling)?;
        let witnesses = nearest_candidates(&enc.interval, max_q);
        let excluded = witnesses.iter().all(|w| w.side != Side::Inside);
        let current = ExclusionReport {
            spec: spec.clone(),
            max_denominator: max_q,
            terms_used: enc.terms_used,
            enclosure: enc.interval,
            result: if excluded { ExclusionResult::ProvenExcluded } else { ExclusionResult::Inconclusive },
            witnesses,
        };
        if excluded {
            return Ok(current);
        }
        report = Some(current);
    }
    Ok(report.expect("at least one attempt"))
}

impl ExclusionReport {
    pub fn is_excluded(&self) -> bool {
        self.result == ExclusionResult::ProvenExcluded
    }

    /// JSON in the certificate conventions: naturals as decimal strings,
    /// rationals as `"num/den"`, trailing newline.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct WireEnclosure<'a> {
            lo: &'a Ratio,
            hi: &'a Ratio,
        }
        #[derive(Serialize)]
        struct WireWitness {
            q: String,
            p: String,
            side: Side,
        }
        #[derive(Serialize)]
        struct WireReport<'a> {
            spec: String,
            max_denominator: String,
            terms_used: String,
            enclosure: WireEnclosure<'a>,
            result: ExclusionResult,
            witnesses: Vec<WireWitness>,
        }
        let wire = WireReport {
            spec: render_spec(&self.spec),
            max_denominator: self.max_denominator.to_string(),
            terms_used: self.terms_used.to_string(),
            enclosure: WireEnclosure { lo: self.enclosure.lo(), hi: self.enclosure.hi() },
            result: self.result,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WireWitness { q: w.q.to_string(), p: w.p.to_string(), side: w.side })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&wire).expect("report serializes");
        out.push('\n');
        out
    }
}

/// `M · (1/(1 − 1/(1+b))) · (1/(b+1))`, the closed form of `M·Σ_{n≥1} (1+b)^(−n)`.
pub fn geometric_tail_closed_form(m: &Natural, b: usize) -> Result<Ratio> {
    if b == 0 {
        return Err(Error::ZeroDenominator);
    }
    let one = BigRational::one();
    let step = BigRational::new(BigInt::one(), BigInt::from(b + 1));
    let sum = (&one / (&one - &step)) * &step;
    Ok(Ratio::from(BigRational::from_integer(BigInt::from(m.clone())) * sum))
}

/// `Σ_{n=N+1}^{N+depth} χ(n)/n!`, summed one term at a time.
pub fn deep_tail_probe(spec: &ChiSpec, n: usize, depth: usize) -> Result<Ratio> {
    if depth == 0 {
        return Err(Error::ZeroProbeDepth);
    }
    let mut fact = BigUint::one();
    let mut sum = BigRational::zero();
    for k in 1..=n + depth {
        fact *= k;
        if k > n {
            let chi = spec.chi_at(k);
            sum += BigRational::new(BigInt::from(chi.clone()), BigInt::from(fact.clone()));
        }
    }
    Ok(Ratio::from(sum))
}
