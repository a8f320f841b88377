//! Replays a certificate from its spec and recorded cutoffs.
//!
//! Nothing here calls the screening code. Each `X_b` partial sum is rebuilt
//! term by term as `χ(n)/((b+1)(b+2)…n)` with plain rational additions,
//! a different route from the Horner accumulation used to produce it.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, BigRational, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use super::{screening_cap, Certificate, DenominatorRecord, MAX_SCREENED_BOUND};
use crate::ratio::Ratio;
use crate::series::ChiSpec;

const MAX_GAP_REPORTS: usize = 16;

/// One failed check. `id` is `b=<n>` for a screening record, otherwise the
/// name of the certificate field at fault.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub id: String,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.reason)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationOutcome {
    pub failures: Vec<Failure>,
}

impl VerificationOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, id: impl Into<String>, reason: impl Into<String>) {
        self.failures.push(Failure { id: id.into(), reason: reason.into() });
    }
}

fn big(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

fn floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

fn ceil(r: &BigRational) -> BigInt {
    -(-r.numer()).div_floor(r.denom())
}

/// `(Σ_{n=b+1}^{N} χ(n)/((b+1)…n), (b+1)…N)`.
fn replay_partial(spec: &ChiSpec, b: usize, terms: usize) -> (BigRational, BigUint) {
    let mut sum = BigRational::zero();
    let mut rising = BigUint::one();
    for n in b + 1..=terms {
        rising *= n;
        let chi = spec.chi_at(n);
        if !chi.is_zero() {
            sum += BigRational::new(big(chi), big(&rising));
        }
    }
    (sum, rising)
}

fn check_record(spec: &ChiSpec, m: &BigUint, rec: &DenominatorRecord, out: &mut VerificationOutcome) {
    let id = format!("b={}", rec.b);
    if rec.b == 0 || rec.b > MAX_SCREENED_BOUND {
        out.fail(id, "denominator out of range");
        return;
    }
    if rec.terms_used <= rec.b {
        out.fail(id, format!("terms_used {} does not exceed b", rec.terms_used));
        return;
    }
    if rec.terms_used > screening_cap(spec, rec.b) {
        out.fail(id, format!("terms_used {} exceeds the screening cap", rec.terms_used));
        return;
    }

    let (partial, rising) = replay_partial(spec, rec.b, rec.terms_used);
    // M·b!/(N!·N) with b!/N! = 1/rising
    let tail = BigRational::new(big(m), big(&rising) * BigInt::from(rec.terms_used));
    let hi = &partial + &tail;
    let x_lo = rec.x_lo.as_big_rational();
    let x_hi = rec.x_hi.as_big_rational();

    if x_lo != &partial {
        out.fail(&id, "enclosure endpoint mismatch: x_lo is not the partial sum");
    }
    if x_hi != &hi {
        out.fail(&id, "enclosure endpoint mismatch: x_hi is not x_lo plus the tail bound");
    }
    if !x_lo.is_positive() {
        out.fail(&id, "x_lo is not positive");
    }
    if x_lo > x_hi {
        out.fail(&id, "x_lo exceeds x_hi");
    } else if floor(x_hi) >= ceil(x_lo) {
        out.fail(&id, "enclosure contains an integer");
    }
}

/// Rechecks every claim in `cert`. Failures are collected, never raised.
pub fn verify(cert: &Certificate) -> VerificationOutcome {
    let mut out = VerificationOutcome::default();
    let spec = &cert.spec;

    if spec.cycle().iter().all(Zero::is_zero) {
        out.fail("spec", "cycle has no nonzero value, so the series is a finite sum");
    }

    let m = spec.effective_bound();
    if cert.bound_m != m {
        out.fail("bound_M", format!("recorded {} but the spec bound is {}", cert.bound_m, m));
    }

    let expected_large = BigRational::new(big(&m), big(&m) + 1);
    let large = cert.large_b.bound.as_big_rational();
    if large != &expected_large {
        out.fail("large_b", format!("bound should be {}", Ratio::from(expected_large)));
    } else if large >= &BigRational::one() {
        out.fail("large_b", "M/(M+1) is not below 1");
    }

    match m.to_usize().filter(|&c| c <= MAX_SCREENED_BOUND) {
        None => out.fail("bound_M", "bound too large to have been screened"),
        Some(count) => {
            let mut seen = BTreeSet::new();
            for (i, rec) in cert.screening.iter().enumerate() {
                if rec.b < 1 || rec.b > count {
                    out.fail(format!("b={}", rec.b), format!("outside the screened range 1..={count}"));
                } else if !seen.insert(rec.b) {
                    out.fail(format!("b={}", rec.b), "duplicate screening record");
                } else if i + 1 != rec.b {
                    out.fail(format!("b={}", rec.b), format!("out of order at position {}", i + 1));
                }
            }
            let gaps: Vec<usize> = (1..=count).filter(|b| !seen.contains(b)).collect();
            for b in gaps.iter().take(MAX_GAP_REPORTS) {
                out.fail("screening", format!("screening gap at b={b}"));
            }
            if gaps.len() > MAX_GAP_REPORTS {
                out.fail("screening", format!("{} further gaps", gaps.len() - MAX_GAP_REPORTS));
            }
        }
    }

    for rec in &cert.screening {
        check_record(spec, &m, rec, &mut out);
    }
    out
}
