//! Integer kernels behind [`HPReal`](super::HPReal): evaluation of ln, exp
//! and square roots in decimal fixed point.
//!
//! Every routine takes an exact rational input (a mantissa at some decimal
//! scale) and returns a mantissa at the requested output scale together with
//! a proven bound on the result error, measured in units of the last place.
//! The error bounds are derived from term-by-term rounding analysis plus an
//! explicit series tail bound; they are deliberately generous — the callers
//! only need them to be true, not tight.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

pub fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Nearest-integer division for `b > 0`; the result is within 1/2 of `a/b`.
pub fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if &(&r << 1) >= b {
        q + 1
    } else {
        q
    }
}

/// Nearest-integer division with arbitrary nonzero divisor sign.
pub fn round_div_signed(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_negative() {
        round_div(&(-a), &(-b))
    } else {
        round_div(a, b)
    }
}

/// Ceiling division for `b > 0`.
pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(a: &BigInt) -> BigInt {
    debug_assert!(!a.is_negative());
    a.sqrt()
}

/// Rescale a (mantissa, err-ulps) pair from `from_scale` down/up to `to_scale`.
///
/// Scaling up is exact; scaling down rounds the mantissa to nearest and adds
/// one ulp of slack to the (ceiling-rescaled) error.
pub fn rescale(m: &BigInt, e: &BigInt, from_scale: u32, to_scale: u32) -> (BigInt, BigInt) {
    if to_scale >= from_scale {
        let f = pow10(to_scale - from_scale);
        (m * &f, e * &f)
    } else {
        let f = pow10(from_scale - to_scale);
        (round_div(m, &f), ceil_div(e, &f) + 1)
    }
}

/// atanh(p/q) * 10^g with a proven ulp error bound.
///
/// Requires |p| * inv_bound <= |q| with inv_bound >= 3, i.e. |z| <= 1/3;
/// the series then gains a fixed number of digits per term and the rounding
/// error of each partial power stays below 3 ulps.
fn series_atanh(p: &BigInt, q: &BigInt, g: u32) -> (BigInt, BigInt) {
    debug_assert!(q.is_positive());
    assert!(
        p.abs() * 3 <= q.abs(),
        "atanh argument must satisfy |z| <= 1/3"
    );
    let unit = pow10(g);

    // Terms needed so that the tail sum is below one ulp:
    //   |sum_{j>=T} z^(2j+1)/(2j+1)| <= |z|^(2T+1) / (1 - z^2)
    //                                 <= 3^-(2T+1) * 9/8 < 10^-g
    // guaranteed once 3^(2T+1) >= 2 * 10^g.
    let mut terms: u32 = 1;
    let mut p3 = BigInt::from(27u32); // 3^(2*1+1)
    let threshold = &unit << 1;
    while p3 < threshold {
        p3 *= 9u32;
        terms += 1;
    }

    // z and z^2 at scale g; both carry at most 2 ulps of error.
    let zg = round_div(&(p * &unit), q);
    let z2g = round_div(&(&zg * &zg), &unit);

    // pow tracks z^(2j+1) at scale g; its rounding error stays <= 3 ulps
    // because every step multiplies by z^2 <= 1/9.
    let mut pow = zg;
    let mut sum = pow.clone();
    for j in 1..terms {
        pow = round_div(&(&pow * &z2g), &unit);
        sum += round_div(&pow, &BigInt::from(2 * j + 1));
    }

    // Per-term error <= 4 ulps (3 from the power, 1 from the division),
    // plus one ulp for the tail.
    let err = BigInt::from(4u64 * u64::from(terms) + 2);
    (sum, err)
}

static LN2_CACHE: OnceLock<RwLock<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();

/// ln(2) * 10^scale with a proven ulp error bound. Cached per scale.
pub fn ln2_fixed(scale: u32) -> (BigInt, BigInt) {
    let cache = LN2_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = cache.read().expect("ln2 cache poisoned").get(&scale) {
        return hit.clone();
    }
    // ln 2 = 2 atanh(1/3)
    let (s, e) = series_atanh(&BigInt::one(), &BigInt::from(3u32), scale);
    let out = ((&s) << 1, (&e) << 1);
    cache
        .write()
        .expect("ln2 cache poisoned")
        .insert(scale, out.clone());
    out
}

/// Number of guard decimals used by the transcendental kernels.
const GUARD: u32 = 12;

/// ln(m * 10^-scale) * 10^out_scale for an exact positive input.
///
/// Returns the mantissa and a proven error bound in ulps of the output scale.
pub fn ln_fixed(m: &BigInt, scale: u32, out_scale: u32) -> Result<(BigInt, BigInt)> {
    if !m.is_positive() {
        return Err(Error::Domain("ln of a nonpositive value".to_string()));
    }
    let g = out_scale + GUARD;

    // Range-reduce v = numer/denom into y in [3/4, 3/2) by powers of two,
    // tracking v = y * 2^k with exact integer shifts.
    let mut numer = m.clone();
    let mut denom = pow10(scale);
    let mut k: i64 = 0;
    while &numer * 2u32 >= &denom * 3u32 {
        denom <<= 1;
        k += 1;
    }
    while &numer * 4u32 < &denom * 3u32 {
        numer <<= 1;
        k -= 1;
    }

    // ln y = 2 atanh((y-1)/(y+1)); the reduced range gives |z| <= 1/5.
    let zp = &numer - &denom;
    let zq = &numer + &denom;
    let (at, at_err) = series_atanh(&zp, &zq, g);
    let mut val_g = (&at) << 1;
    let mut err_g = (&at_err) << 1;

    if k != 0 {
        let (l2, l2e) = ln2_fixed(g);
        let kb = BigInt::from(k);
        val_g += &kb * &l2;
        err_g += kb.abs() * &l2e;
    }

    let (val, err) = rescale(&val_g, &err_g, g, out_scale);
    Ok((val, err))
}

/// exp(m * 10^-scale) * 10^out_scale for an exact input with |v| <= 20000.
pub fn exp_fixed(m: &BigInt, scale: u32, out_scale: u32) -> Result<(BigInt, BigInt)> {
    let g = out_scale + GUARD;
    let unit = pow10(g);

    // |v| <= 20000 keeps the result below ~10^8686 digits of integer part.
    if m.abs() > pow10(scale) * 20000u32 {
        return Err(Error::Domain(
            "exp argument magnitude exceeds the supported range".to_string(),
        ));
    }

    let (l2, l2e) = ln2_fixed(g);

    // k = round(v / ln 2), exact integer arithmetic throughout.
    let k_big = round_div(&(m * &unit), &(&l2 * pow10(scale)));
    let k: i64 = i64::try_from(&k_big).expect("exp reduction exponent fits i64");

    // r = v - k ln2 at scale g; |r| <= 0.35 + rounding slack.
    let (mg, m_exact_err) = rescale(m, &BigInt::zero(), scale, g);
    let rg = &mg - &k_big * &l2;
    let r_err = m_exact_err + k_big.abs() * &l2e;
    assert!(
        rg.abs() * 5u32 <= (&unit) << 1,
        "exp range reduction left |r| > 0.4"
    );

    // Taylor terms until 2 * (2/5)^(T+1) / (T+1)! < 10^-g:
    // maintained exactly as 2 * 2^(T+1) * 10^g < 5^(T+1) * (T+1)!.
    let mut terms: u32 = 1;
    let lhs_base = (&unit) << 1;
    let mut lhs = &lhs_base << 2; // 2 * 2^(T+1) * 10^g at T=1
    let mut rhs = BigInt::from(50u32); // 5^(T+1) * (T+1)! at T=1
    while lhs >= rhs {
        terms += 1;
        lhs <<= 1;
        rhs = rhs * 5u32 * BigInt::from(terms + 1);
    }

    // Sum the series at scale g. Each term's rounding error is <= 2 ulps
    // (damped geometrically by |r| <= 0.4), so the sum error is <= 2T + 1.
    let mut term = unit.clone(); // j = 0
    let mut sum = term.clone();
    for j in 1..=terms {
        term = round_div(&(&term * &rg), &(&unit * BigInt::from(j)));
        sum += &term;
    }
    let mut err_g = BigInt::from(2u64 * u64::from(terms) + 2);
    // Error in r itself: |e^(r+d) - e^r| <= e^r * 2|d| <= 3 * r_err ulps.
    err_g += r_err * 3u32;

    // Multiply by 2^k.
    let (val_g, err2_g) = if k >= 0 {
        (&sum << (k as u32), &err_g << (k as u32))
    } else {
        let d = BigInt::one() << ((-k) as u32);
        (round_div(&sum, &d), ceil_div(&err_g, &d) + 1)
    };

    let (val, err) = rescale(&val_g, &err2_g, g, out_scale);
    Ok((val, err))
}

/// sqrt(m * 10^-scale) * 10^out_scale for an exact nonnegative input.
///
/// Requires 2 * out_scale >= scale. The floor square root makes the result
/// error at most one ulp.
pub fn sqrt_fixed(m: &BigInt, scale: u32, out_scale: u32) -> Result<(BigInt, BigInt)> {
    if m.is_negative() {
        return Err(Error::Domain("sqrt of a negative value".to_string()));
    }
    assert!(
        2 * out_scale >= scale,
        "sqrt output scale too small for input scale"
    );
    let s = isqrt(&(m * pow10(2 * out_scale - scale)));
    Ok((s, BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_against(value: &BigInt, err: &BigInt, expected: &str, scale: u32) {
        // expected is a decimal string; compare |value*10^-scale - expected|
        // against the claimed error bound.
        let dot = expected.find('.').unwrap();
        let digits_after = expected.len() - dot - 1;
        let as_int: BigInt = expected.replace('.', "").parse().unwrap();
        assert!(digits_after as u32 <= scale);
        let exp_scaled = as_int * pow10(scale - digits_after as u32);
        let diff = (value - &exp_scaled).abs();
        // one extra ulp because `expected` is itself truncated
        assert!(
            diff <= err + pow10(scale - digits_after as u32 + 1),
            "value {value} differs from {expected} by {diff} ulps (bound {err})"
        );
    }

    #[test]
    fn ln2_matches_reference() {
        let (v, e) = ln2_fixed(60);
        check_against(
            &v,
            &e,
            "0.693147180559945309417232121458176568075500134360255254120680",
            60,
        );
        assert!(e < BigInt::from(10_000u32));
    }

    #[test]
    fn ln_fixed_small_and_large_inputs() {
        // ln 10
        let (v, e) = ln_fixed(&BigInt::from(10u32), 0, 50).unwrap();
        check_against(
            &v,
            &e,
            "2.3025850929940456840179914546843642076011014886288",
            50,
        );
        // ln(1/10)
        let (v, e) = ln_fixed(&BigInt::one(), 1, 50).unwrap();
        check_against(
            &v,
            &e,
            "-2.3025850929940456840179914546843642076011014886288",
            50,
        );
        // ln 1 = 0
        let (v, e) = ln_fixed(&BigInt::one(), 0, 50).unwrap();
        assert!(v.abs() <= e);
    }

    #[test]
    fn ln_fixed_rejects_nonpositive() {
        assert!(ln_fixed(&BigInt::zero(), 0, 50).is_err());
        assert!(ln_fixed(&BigInt::from(-3), 0, 50).is_err());
    }

    #[test]
    fn exp_fixed_matches_reference() {
        let (v, e) = exp_fixed(&BigInt::one(), 0, 50).unwrap();
        check_against(
            &v,
            &e,
            "2.7182818284590452353602874713526624977572470937000",
            50,
        );
        // exp(-1)
        let (v, e) = exp_fixed(&BigInt::from(-1), 0, 50).unwrap();
        check_against(
            &v,
            &e,
            "0.3678794411714423215955237701614608674458111310318",
            50,
        );
        // exp(0) = 1 exactly up to the error bound
        let (v, e) = exp_fixed(&BigInt::zero(), 0, 50).unwrap();
        assert!((v - pow10(50)).abs() <= e);
    }

    #[test]
    fn exp_then_ln_round_trips() {
        let (v, e) = exp_fixed(&BigInt::from(37u32), 0, 60).unwrap();
        // exp(37) ~ 1.17e16: the absolute error bound scales with the
        // value; it must stay at a ulp-level relative error
        assert!(e < pow10(12));
        let (l, le) = ln_fixed(&v, 60, 50).unwrap();
        let diff = (l - BigInt::from(37u32) * pow10(50)).abs();
        // the ln of the rounded exp differs from 37 by the propagated error
        assert!(diff <= le + e * pow10(50) / pow10(60) + BigInt::from(10u32));
    }

    #[test]
    fn sqrt_fixed_exact_squares() {
        let (v, e) = sqrt_fixed(&BigInt::from(4u32), 0, 30).unwrap();
        assert_eq!(v, BigInt::from(2u32) * pow10(30));
        assert_eq!(e, BigInt::one());
        let (v, e) = sqrt_fixed(&BigInt::from(2u32), 0, 50).unwrap();
        check_against(
            &v,
            &e,
            "1.4142135623730950488016887242096980785696718753769",
            50,
        );
    }
}
