//! Reference values computed without the crate's evaluation code.

#![allow(dead_code)]

use num::{BigInt, BigRational, Integer, One, Zero};

/// `Σ_{n=0}^{terms-1} sign(n)/n!` summed term by term.
fn signed_factorial_sum(terms: usize, alternate: bool) -> BigRational {
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    for n in 0..terms {
        if n > 0 {
            fact *= n;
        }
        let sign = if alternate && n % 2 == 1 { -1 } else { 1 };
        sum += BigRational::new(BigInt::from(sign), fact.clone());
    }
    sum
}

pub fn e_reference(terms: usize) -> BigRational {
    signed_factorial_sum(terms, false)
}

pub fn inv_e_reference(terms: usize) -> BigRational {
    signed_factorial_sum(terms, true)
}

/// Round-half-up to `k` fractional digits, formatted `int.frac`.
pub fn round_digits(x: &BigRational, k: usize) -> String {
    let scale: BigInt = num::pow(BigInt::from(10), k);
    let scaled = x * BigRational::from_integer(scale.clone());
    let twice: BigInt = scaled.numer() * 2 + scaled.denom();
    let denom: BigInt = scaled.denom() * 2;
    let rounded = twice.div_floor(&denom);
    let (int_part, frac) = rounded.div_rem(&scale);
    format!("{int_part}.{frac:0>k$}")
}
