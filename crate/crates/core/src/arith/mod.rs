//! Exact integers and rationals, 2-adic utilities and integer matrix normal forms.
//!
//! Rationals are `num_rational::BigRational`, which is always kept reduced
//! with a positive denominator, so equality and valuations work directly on
//! the stored numerator and denominator.

mod matrix;
mod snf;
pub mod sparse;

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, smith_normal_form_with_transforms, SnfDecomposition, SnfResult};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type BigIntValue = BigInt;
pub type Rational = BigRational;

/// Exponent of 2 in a nonzero integer.
pub fn nu2_int(n: &BigInt) -> Result<u64> {
    n.trailing_zeros().ok_or(Error::ValuationOfZero)
}

/// 2-adic valuation of a nonzero rational: `x = 2^v * (odd/odd)`.
pub fn nu2(x: &Rational) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let num = nu2_int(x.numer())? as i64;
    let den = nu2_int(x.denom())? as i64;
    Ok(num - den)
}

/// Sum of the binary digits of `n`.
pub fn digit_sum_2(n: u64) -> u32 {
    n.count_ones()
}

/// `nu2(n!)` by Legendre's formula, `n - s2(n)`.
pub fn nu2_factorial(n: u64) -> u64 {
    n - u64::from(digit_sum_2(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact text form: `n` for integers, `n/d` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Inverse of [`format_rational`]; also accepts `n/1` and surrounding spaces.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `2^n * n!`, the index denominator for the top power of `c` in dimension `2n`.
pub fn two_pow_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one() << n;
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub(crate) fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
