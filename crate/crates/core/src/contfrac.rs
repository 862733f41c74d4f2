//! Certified continued-fraction expansion of error-tracked reals, exact
//! convergent generation, and the Legendre-criterion audit.
//!
//! A partial quotient is emitted only when every real in the operand's error
//! interval shares it; the expansion therefore never guesses. Escalation is
//! handled by re-expanding a freshly built value at higher precision, which
//! must reproduce the certified prefix.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{HPReal, PrecisionPolicy};

/// A certified prefix of a continued-fraction expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    quotients: Vec<BigUint>,
    /// Whether the expansion reached the requested quotient count. Every
    /// listed quotient is certified either way.
    certified: bool,
    /// The value turned out to be rational and the expansion is complete.
    terminated: bool,
    requested: usize,
    digits_used: u32,
}

impl CFExpansion {
    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn digits_used(&self) -> u32 {
        self.digits_used
    }

    /// Human-readable shortfall notice when fewer quotients than requested
    /// could be certified.
    pub fn shortfall_notice(&self) -> Option<String> {
        if self.certified {
            None
        } else {
            Some(format!(
                "only {} of {} requested partial quotients could be certified at {} digits",
                self.quotients.len(),
                self.requested,
                self.digits_used
            ))
        }
    }
}

/// One exact convergent p_k / q_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    pub p: BigUint,
    pub q: BigUint,
}

/// Common prefix of the continued fractions of every x in [lo, hi], with
/// both endpoints given as exact fractions `num/den`, `den > 0`.
///
/// Values must be nonnegative. The prefix stops as soon as the two
/// endpoints disagree on the next floor, or an endpoint is reached exactly.
/// Returns the quotients plus a flag telling whether the (point) interval
/// terminated as an exact rational.
fn interval_quotients(
    mut lo_num: BigInt,
    mut lo_den: BigInt,
    mut hi_num: BigInt,
    mut hi_den: BigInt,
    count: usize,
) -> Result<(Vec<BigUint>, bool)> {
    if lo_num.is_negative() || hi_num.is_negative() {
        return Err(Error::Usage(
            "continued-fraction expansion requires a nonnegative value".to_string(),
        ));
    }
    let mut out = Vec::new();
    loop {
        if out.len() >= count {
            return Ok((out, false));
        }
        let a_lo = lo_num.div_floor(&lo_den);
        let a_hi = hi_num.div_floor(&hi_den);
        if a_lo != a_hi {
            return Ok((out, false));
        }
        out.push(
            a_lo.to_biguint()
                .expect("floor of a nonnegative value is nonnegative"),
        );
        lo_num -= &a_lo * &lo_den;
        hi_num -= &a_lo * &hi_den;
        let point = lo_num == hi_num && lo_den == hi_den;
        if lo_num.is_zero() || hi_num.is_zero() {
            // An endpoint hit an integer exactly: complete expansion for a
            // point interval, uncertifiable tail otherwise.
            return Ok((out, point && lo_num.is_zero()));
        }
        // invert the fractional parts; order swaps
        (lo_num, lo_den, hi_num, hi_den) = (hi_den, hi_num, lo_den, lo_num);
    }
}

/// Certified expansion of the ball `x` as far as its error radius allows,
/// up to `count` quotients.
pub fn expand_value(x: &HPReal, count: usize) -> Result<CFExpansion> {
    let (lo, hi) = x.bounds();
    let (quotients, terminated) = interval_quotients(
        lo.numer().clone(),
        lo.denom().clone(),
        hi.numer().clone(),
        hi.denom().clone(),
        count,
    )?;
    let certified = quotients.len() >= count || terminated;
    Ok(CFExpansion {
        quotients,
        certified,
        terminated,
        requested: count,
        digits_used: x.digits(),
    })
}

/// Expansion of an exact rational, i.e. the Euclidean quotient sequence.
pub fn expand_rational(num: &BigInt, den: &BigInt, count: usize) -> Result<CFExpansion> {
    if den.is_zero() {
        return Err(Error::Usage("zero denominator".to_string()));
    }
    let (n, d) = if den.is_negative() {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    };
    let (quotients, terminated) = interval_quotients(n.clone(), d.clone(), n, d, count)?;
    let certified = quotients.len() >= count || terminated;
    Ok(CFExpansion {
        quotients,
        certified,
        terminated,
        requested: count,
        digits_used: 0,
    })
}

/// Expand a value rebuilt at escalating precision until `count` quotients
/// are certified. On exhaustion the certified prefix is returned with its
/// shortfall notice rather than an error.
pub fn expand<F>(policy: &PrecisionPolicy, count: usize, mut build: F) -> Result<CFExpansion>
where
    F: FnMut(u32) -> Result<HPReal>,
{
    policy.validate()?;
    let mut last: Option<CFExpansion> = None;
    for digits in policy.levels() {
        let x = build(digits)?;
        let exp = expand_value(&x, count)?;
        if let Some(prev) = &last {
            // re-expansion stability: higher precision must extend the prefix
            let shared = prev.len().min(exp.len());
            if prev.quotients[..shared] != exp.quotients[..shared] {
                return Err(Error::OracleFailure(
                    "certified prefix changed under re-expansion".to_string(),
                ));
            }
        }
        if exp.certified {
            return Ok(exp);
        }
        last = Some(exp);
    }
    Ok(last.expect("policy yields at least one level"))
}

/// Exact convergents of a certified expansion.
pub fn convergents(cf: &CFExpansion) -> Vec<Convergent> {
    let mut out = Vec::with_capacity(cf.len());
    let mut p_prev = BigUint::from(1u32); // p_{-1}
    let mut p_prev2 = BigUint::zero(); // p_{-2}
    let mut q_prev = BigUint::zero(); // q_{-1}
    let mut q_prev2 = BigUint::from(1u32); // q_{-2}
    for (k, a) in cf.quotients().iter().enumerate() {
        let p = a * &p_prev + &p_prev2;
        let q = a * &q_prev + &q_prev2;
        out.push(Convergent {
            k,
            p: p.clone(),
            q: q.clone(),
        });
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    out
}

/// Least-index convergent with denominator strictly above `threshold`.
pub fn first_convergent_above(cf: &CFExpansion, threshold: &BigUint) -> Result<Convergent> {
    convergents(cf)
        .into_iter()
        .find(|c| &c.q > threshold)
        .ok_or_else(|| {
            Error::InsufficientExpansion(format!(
                "no certified convergent denominator exceeds {threshold} within {} quotients",
                cf.len()
            ))
        })
}

/// Result of the Legendre audit: the first index whose convergent
/// denominator clears the solution bound, the largest partial quotient seen
/// strictly before it, and the same maximum extended through k_star itself
/// (the gap bound for p_k/q_k involves a_{k+1}, so the inclusive maximum is
/// the sound one to quote).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendreAudit {
    pub k_star: usize,
    pub a_max: BigUint,
    pub a_max_inclusive: BigUint,
    pub q_kstar: BigUint,
}

/// Audit the expansion against a solution bound: find the least k with
/// q_k > x_bound and the maximal partial quotients below it.
pub fn legendre_audit(cf: &CFExpansion, x_bound: &BigUint) -> Result<LegendreAudit> {
    let first = first_convergent_above(cf, x_bound)?;
    let k_star = first.k;
    let a_max = cf.quotients()[..k_star]
        .iter()
        .cloned()
        .max()
        .unwrap_or_else(BigUint::zero);
    let a_max_inclusive = cf.quotients()[..=k_star]
        .iter()
        .cloned()
        .max()
        .expect("k_star is a valid index");
    Ok(LegendreAudit {
        k_star,
        a_max,
        a_max_inclusive,
        q_kstar: first.q,
    })
}
