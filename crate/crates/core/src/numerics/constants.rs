//! The transcendental and algebraic constants the proof pipeline consumes.
//!
//! alpha = 3 + 2 sqrt 2 and beta = 3 - 2 sqrt 2 are the roots of
//! x^2 - 6x + 1; log(4 sqrt 2) and log 32 reduce to rational multiples of
//! ln 2, which keeps their evaluation on the cached ln-2 kernel.

use num_bigint::BigInt;
use num_traits::One;
use std::str::FromStr;

use super::fixed::{isqrt, ln2_fixed, pow10};
use super::hpreal::HPReal;
use crate::error::{Error, Result};

/// Named constants; see [`constant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    /// alpha = 3 + 2 sqrt 2
    Alpha,
    /// beta = 3 - 2 sqrt 2 = 1/alpha
    Beta,
    /// ln alpha
    LogAlpha,
    /// ln(4 sqrt 2) = (5/2) ln 2
    Log4Sqrt2,
    /// ln 32 = 5 ln 2
    Log32,
    /// ln 2
    Log2,
}

impl FromStr for Constant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Constant::Alpha),
            "beta" => Ok(Constant::Beta),
            "log_alpha" => Ok(Constant::LogAlpha),
            "log_4sqrt2" => Ok(Constant::Log4Sqrt2),
            "log32" => Ok(Constant::Log32),
            "log2" => Ok(Constant::Log2),
            other => Err(Error::Usage(format!("unknown constant name: {other}"))),
        }
    }
}

/// Internal guard decimals so that the returned ball is a couple of ulps wide.
const CONST_GUARD: u32 = 10;

fn two_sqrt2_scaled(scale: u32) -> BigInt {
    // floor(2 sqrt(2) * 10^scale) with error < 2 ulps
    isqrt(&(BigInt::from(8u32) * pow10(2 * scale)))
}

/// Evaluate a named constant at the requested working precision.
///
/// The returned ball contains the true constant and its radius is far below
/// `10^-(digits-5)`.
pub fn constant(c: Constant, digits: u32) -> Result<HPReal> {
    if digits < 50 {
        return Err(Error::Usage(format!(
            "constants require at least 50 digits, got {digits}"
        )));
    }
    let g = digits + CONST_GUARD;
    let ball = match c {
        Constant::Alpha => {
            let m = BigInt::from(3u32) * pow10(g) + two_sqrt2_scaled(g);
            HPReal::raw(m, BigInt::from(2u32), g)
        }
        Constant::Beta => {
            let m = BigInt::from(3u32) * pow10(g) - two_sqrt2_scaled(g);
            HPReal::raw(m, BigInt::from(2u32), g)
        }
        Constant::LogAlpha => constant(Constant::Alpha, g)?.ln()?,
        Constant::Log4Sqrt2 => {
            let (l2, e) = ln2_fixed(g);
            // (5/2) ln 2; the halving adds at most one ulp
            HPReal::raw((l2 * 5u32) >> 1, e * 3u32 + BigInt::one(), g)
        }
        Constant::Log32 => {
            let (l2, e) = ln2_fixed(g);
            HPReal::raw(l2 * 5u32, e * 5u32, g)
        }
        Constant::Log2 => {
            let (l2, e) = ln2_fixed(g);
            HPReal::raw(l2, e, g)
        }
    };
    Ok(ball.with_digits(digits))
}
