//! Error-tracked reals in decimal fixed point.
//!
//! An [`HPReal`] is a ball: an approximation `mantissa * 10^-digits`
//! together with an error radius `err * 10^-digits` that provably contains
//! the represented real. Every operation propagates a containment bound,
//! never an estimate, so a conclusive [`compare`] is a certified strict
//! inequality.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use super::fixed::{
    ceil_div, exp_fixed, isqrt, ln_fixed, pow10, rescale, round_div, round_div_signed, sqrt_fixed,
};
use crate::error::{Error, Result};

/// Three-way outcome of comparing two balls.
///
/// `Less` and `Greater` are certified (the error intervals are disjoint);
/// `Inconclusive` means the intervals overlap and nothing can be concluded
/// at the current precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering3 {
    Less,
    Greater,
    Inconclusive,
}

/// An error-tracked real at a given decimal working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPReal {
    mantissa: BigInt,
    /// Error radius in units of `10^-digits`; always nonnegative.
    err: BigInt,
    /// Working precision: number of decimal places carried.
    digits: u32,
}

impl HPReal {
    fn new(mantissa: BigInt, err: BigInt, digits: u32) -> Self {
        debug_assert!(!err.is_negative());
        HPReal {
            mantissa,
            err,
            digits,
        }
    }

    /// Crate-internal constructor from raw mantissa/error parts.
    pub(crate) fn raw(mantissa: BigInt, err: BigInt, digits: u32) -> Self {
        Self::new(mantissa, err, digits)
    }

    /// Exact integer, zero error radius.
    pub fn from_int(v: i64, digits: u32) -> Self {
        Self::from_bigint(BigInt::from(v), digits)
    }

    pub fn from_bigint(v: BigInt, digits: u32) -> Self {
        HPReal::new(v * pow10(digits), BigInt::zero(), digits)
    }

    pub fn from_biguint(v: &BigUint, digits: u32) -> Self {
        Self::from_bigint(BigInt::from_biguint(Sign::Plus, v.clone()), digits)
    }

    /// Rational `num/den` rounded to the working precision; the error radius
    /// is zero when the division is exact and one ulp otherwise.
    pub fn from_rational(num: &BigInt, den: &BigInt, digits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational with zero denominator".to_string()));
        }
        let (n, d) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let scaled = n * pow10(digits);
        let m = round_div(&scaled, &d);
        let err = if (&m * &d - scaled).is_zero() {
            BigInt::zero()
        } else {
            BigInt::one()
        };
        Ok(HPReal::new(m, err, digits))
    }

    /// Parse a plain decimal literal such as `"5.8"` or `"-0.16"`; exact as
    /// long as it has at most `digits` fractional places.
    pub fn from_decimal_str(s: &str, digits: u32) -> Result<Self> {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if frac_part.len() as u32 > digits {
            return Err(Error::Usage(format!(
                "decimal literal {s} has more fractional digits than the working precision {digits}"
            )));
        }
        let joined = format!("{int_part}{frac_part}");
        let v: BigInt = joined
            .parse()
            .map_err(|_| Error::Usage(format!("malformed decimal literal: {s}")))?;
        Ok(HPReal::new(
            v * pow10(digits - frac_part.len() as u32),
            BigInt::zero(),
            digits,
        ))
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn err_ulps(&self) -> &BigInt {
        &self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// Midpoint as an exact rational.
    pub fn approx(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), pow10(self.digits))
    }

    /// Certified enclosure `[lo, hi]` as exact rationals.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        let d = pow10(self.digits);
        (
            BigRational::new(&self.mantissa - &self.err, d.clone()),
            BigRational::new(&self.mantissa + &self.err, d),
        )
    }

    /// Error radius as an exact rational.
    pub fn err_radius(&self) -> BigRational {
        BigRational::new(self.err.clone(), pow10(self.digits))
    }

    pub fn contains_rational(&self, v: &BigRational) -> bool {
        let (lo, hi) = self.bounds();
        &lo <= v && v <= &hi
    }

    pub fn contains_bigint(&self, v: &BigInt) -> bool {
        self.contains_rational(&BigRational::from_integer(v.clone()))
    }

    /// Re-express at a different working precision. Raising the precision is
    /// exact; lowering rounds and widens by one ulp.
    pub fn with_digits(&self, digits: u32) -> Self {
        if digits == self.digits {
            return self.clone();
        }
        let (m, e) = rescale(&self.mantissa, &self.err, self.digits, digits);
        // rescale adds one ulp of slack even for err = 0; keep exactness
        // when the mantissa rounding was itself exact.
        if digits < self.digits && self.err.is_zero() {
            let back = &m * pow10(self.digits - digits);
            if back == self.mantissa {
                return HPReal::new(m, BigInt::zero(), digits);
            }
        }
        HPReal::new(m, e, digits)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let d = self.digits.max(other.digits);
        (self.with_digits(d), other.with_digits(d))
    }

    pub fn neg(&self) -> Self {
        HPReal::new(-&self.mantissa, self.err.clone(), self.digits)
    }

    pub fn abs(&self) -> Self {
        HPReal::new(self.mantissa.abs(), self.err.clone(), self.digits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        HPReal::new(a.mantissa + b.mantissa, a.err + b.err, a.digits)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        HPReal::new(a.mantissa - b.mantissa, a.err + b.err, a.digits)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let unit = pow10(a.digits);
        let prod = &a.mantissa * &b.mantissa;
        let m = round_div(&prod, &unit);
        // |AB - ab| <= |a| rb + |b| ra + ra rb, plus the rounding step.
        let mut e = ceil_div(
            &(a.mantissa.abs() * &b.err + b.mantissa.abs() * &a.err + &a.err * &b.err),
            &unit,
        );
        if !(a.err.is_zero() && b.err.is_zero() && (&m * &unit - prod).is_zero()) {
            e += 1;
        }
        HPReal::new(m, e, a.digits)
    }

    /// Division; the divisor interval must exclude zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other);
        if b.mantissa.abs() <= b.err {
            return Err(Error::Domain(
                "division by an interval containing zero".to_string(),
            ));
        }
        let unit = pow10(a.digits);
        let scaled = &a.mantissa * &unit;
        let m = round_div_signed(&scaled, &b.mantissa);
        let babs = b.mantissa.abs();
        let blo = &babs - &b.err;
        // |A/B - a/b| <= ((|a|+ra) rb / (|b|-rb) + ra) / |b|
        let num = ((a.mantissa.abs() + &a.err) * &b.err + &a.err * &blo) * &unit;
        let mut e = ceil_div(&num, &(&babs * &blo));
        if !(a.err.is_zero() && b.err.is_zero() && (&m * &b.mantissa - scaled).is_zero()) {
            e += 1;
        }
        Ok(HPReal::new(m, e, a.digits))
    }

    pub fn recip(&self) -> Result<Self> {
        HPReal::from_int(1, self.digits).div(self)
    }

    /// Integer power by binary exponentiation; `k = 0` yields exact 1 and
    /// negative `k` takes a reciprocal at the end.
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(HPReal::from_int(1, self.digits));
        }
        let mut base = self.clone();
        let mut exp = k.unsigned_abs();
        let mut acc: Option<HPReal> = None;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        let r = acc.expect("nonzero exponent");
        if k < 0 {
            r.recip()
        } else {
            Ok(r)
        }
    }

    /// Natural logarithm; the operand interval must be strictly positive.
    pub fn ln(&self) -> Result<Self> {
        let low = &self.mantissa - &self.err;
        if !low.is_positive() {
            return Err(Error::Domain(
                "log of an interval touching zero or below".to_string(),
            ));
        }
        let (m, mut e) = ln_fixed(&self.mantissa, self.digits, self.digits)?;
        if !self.err.is_zero() {
            // |ln X - ln v| <= r / (v - r)
            e += ceil_div(&(&self.err * pow10(self.digits)), &low);
        }
        Ok(HPReal::new(m, e, self.digits))
    }

    /// Exponential; the input radius must be at most 1/2.
    pub fn exp(&self) -> Result<Self> {
        if &self.err * 2u32 > pow10(self.digits) {
            return Err(Error::Domain(
                "exp input error radius exceeds 1/2; escalate precision first".to_string(),
            ));
        }
        let (m, mut e) = exp_fixed(&self.mantissa, self.digits, self.digits)?;
        if !self.err.is_zero() {
            // |e^X - e^v| <= e^v (e^r - 1) <= (e^v + bound slack) * 2r
            e += ceil_div(&((m.abs() + &e) * 2u32 * &self.err), &pow10(self.digits)) + 1;
        }
        Ok(HPReal::new(m, e, self.digits))
    }

    /// Square root; the operand interval must be strictly positive.
    pub fn sqrt(&self) -> Result<Self> {
        let low = &self.mantissa - &self.err;
        if !low.is_positive() {
            return Err(Error::Domain(
                "sqrt of an interval touching zero or below".to_string(),
            ));
        }
        let (m, mut e) = sqrt_fixed(&self.mantissa, self.digits, self.digits)?;
        if !self.err.is_zero() {
            // |sqrt X - sqrt v| <= r / (2 sqrt(v - r))
            let sqrt_low = isqrt(&(&low * pow10(self.digits)));
            e += ceil_div(&(&self.err * pow10(self.digits)), &(sqrt_low << 1)) + 1;
        }
        Ok(HPReal::new(m, e, self.digits))
    }

    /// Nearest integer to the midpoint together with a ball for the distance
    /// `|X - z|`, which upper-bounds the distance of X to the nearest
    /// integer and lower-bounds it through the shared error radius.
    pub fn dist_to_nearest_int(&self) -> (BigInt, HPReal) {
        let unit = pow10(self.digits);
        let z = round_div_signed(&self.mantissa, &unit);
        let frac = (&self.mantissa - &z * &unit).abs();
        (z, HPReal::new(frac, self.err.clone(), self.digits))
    }

    /// Smallest integer certainly >= every point of the ball.
    pub fn ceil_upper(&self) -> BigInt {
        let unit = pow10(self.digits);
        ceil_div(&(&self.mantissa + &self.err), &unit)
    }

    /// Floor of the ball's upper endpoint: every point is < this + 1.
    pub fn floor_upper(&self) -> BigInt {
        use num_integer::Integer;
        let unit = pow10(self.digits);
        (&self.mantissa + &self.err).div_floor(&unit)
    }

    /// True when both balls are exact and represent the same value.
    pub fn exact_eq(&self, other: &Self) -> bool {
        if !(self.is_exact() && other.is_exact()) {
            return false;
        }
        let (a, b) = self.aligned(other);
        a.mantissa == b.mantissa
    }

    /// Decimal rendering of the midpoint, exact to the working precision.
    pub fn to_decimal_string(&self) -> String {
        let neg = self.mantissa.is_negative();
        let abs = self.mantissa.abs().to_string();
        let digits = self.digits as usize;
        let padded = if abs.len() <= digits {
            format!("{}{}", "0".repeat(digits - abs.len() + 1), abs)
        } else {
            abs
        };
        let split = padded.len() - digits;
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&padded[..split]);
        if digits > 0 {
            out.push('.');
            out.push_str(&padded[split..]);
        }
        out
    }

    /// Error radius rendered as `<ulps>e-<digits>`.
    pub fn err_string(&self) -> String {
        format!("{}e-{}", self.err, self.digits)
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.to_decimal_string(), self.err_string())
    }
}

impl std::ops::Add for &HPReal {
    type Output = HPReal;
    fn add(self, rhs: &HPReal) -> HPReal {
        HPReal::add(self, rhs)
    }
}

impl std::ops::Sub for &HPReal {
    type Output = HPReal;
    fn sub(self, rhs: &HPReal) -> HPReal {
        HPReal::sub(self, rhs)
    }
}

impl std::ops::Mul for &HPReal {
    type Output = HPReal;
    fn mul(self, rhs: &HPReal) -> HPReal {
        HPReal::mul(self, rhs)
    }
}

/// Certified three-way comparison: conclusive only on disjoint intervals.
pub fn compare(a: &HPReal, b: &HPReal) -> Ordering3 {
    let (x, y) = a.aligned(b);
    if &x.mantissa + &x.err < &y.mantissa - &y.err {
        Ordering3::Less
    } else if &x.mantissa - &x.err > &y.mantissa + &y.err {
        Ordering3::Greater
    } else {
        Ordering3::Inconclusive
    }
}

/// Operations available to generic expression evaluation (used by the
/// randomized containment tests and the CLI-facing arithmetic surface).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    PowInt(i64),
    Ln,
    Exp,
    Abs,
}

/// Apply a named operation to a slice of operands; unary ops take one,
/// binary ops two.
pub fn arith(op: ArithOp, args: &[HPReal]) -> Result<HPReal> {
    fn unary(args: &[HPReal]) -> Result<&HPReal> {
        if args.len() == 1 {
            Ok(&args[0])
        } else {
            Err(Error::Usage(
                "operation takes exactly one argument".to_string(),
            ))
        }
    }
    fn binary(args: &[HPReal]) -> Result<(&HPReal, &HPReal)> {
        if args.len() == 2 {
            Ok((&args[0], &args[1]))
        } else {
            Err(Error::Usage(
                "operation takes exactly two arguments".to_string(),
            ))
        }
    }
    match op {
        ArithOp::Add => binary(args).map(|(a, b)| a.add(b)),
        ArithOp::Sub => binary(args).map(|(a, b)| a.sub(b)),
        ArithOp::Mul => binary(args).map(|(a, b)| a.mul(b)),
        ArithOp::Div => binary(args).and_then(|(a, b)| a.div(b)),
        ArithOp::PowInt(k) => unary(args).and_then(|a| a.pow_int(k)),
        ArithOp::Ln => unary(args).and_then(|a| a.ln()),
        ArithOp::Exp => unary(args).and_then(|a| a.exp()),
        ArithOp::Abs => unary(args).map(|a| a.abs()),
    }
}

/// Convenience for tests and callers that hold small rationals.
pub fn rational(num: i64, den: i64, digits: u32) -> HPReal {
    HPReal::from_rational(&BigInt::from(num), &BigInt::from(den), digits)
        .expect("nonzero denominator")
}

impl HPReal {
    /// Lossy f64 view of the midpoint, for log lines only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.approx().to_f64().unwrap_or(f64::NAN)
    }
}
