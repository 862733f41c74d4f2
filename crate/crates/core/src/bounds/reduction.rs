//! The reduction engine: given an inhomogeneous inequality
//! 0 < m gamma - n + mu < A B^-k with multiplier m <= M, find a convergent
//! denominator q > 6M of gamma with certified epsilon = ||mu q|| - M ||gamma q|| > 0
//! and return the k-bound log(A q / epsilon) / log B beyond which no
//! solution exists.
//!
//! If the first convergent above 6M fails the epsilon condition the next
//! ones are tried, up to a budget; distances to the nearest integer are
//! computed as certified balls so a positive epsilon is a proof, not a
//! floating-point impression.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

use crate::contfrac::{convergents, expand_value, Convergent};
use crate::error::{Error, Result};
use crate::numerics::{compare, constant, Constant, HPReal, Ordering3, PrecisionPolicy};
use crate::sequences::balancing;

/// A real-valued parameter that can be rebuilt at any working precision.
pub type ValueBuilder = Arc<dyn Fn(u32) -> Result<HPReal> + Send + Sync>;

/// One reduction instance (gamma, mu, A, B, M).
#[derive(Clone)]
pub struct BDInstance {
    /// The irrational multiplier; the caller asserts irrationality.
    pub gamma: ValueBuilder,
    /// The shift.
    pub mu: ValueBuilder,
    /// The coefficient A > 0 of the decaying right-hand side.
    pub a_coef: ValueBuilder,
    /// The base B > 1, kept exact.
    pub b_base: BigRational,
    /// Cap on the multiplier variable.
    pub m_cap: BigUint,
}

impl std::fmt::Debug for BDInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BDInstance")
            .field("b_base", &self.b_base)
            .field("m_cap", &self.m_cap)
            .finish_non_exhaustive()
    }
}

impl BDInstance {
    fn validate(&self, policy: &PrecisionPolicy) -> Result<()> {
        if self.m_cap.is_zero() {
            return Err(Error::Usage("reduction requires M >= 1".to_string()));
        }
        if self.b_base <= BigRational::one() {
            return Err(Error::Usage("reduction requires B > 1".to_string()));
        }
        let d = policy.initial_digits;
        let a = (self.a_coef)(d)?;
        if compare(&a, &HPReal::from_int(0, d)) != Ordering3::Greater {
            return Err(Error::Usage(
                "reduction requires a certified A > 0".to_string(),
            ));
        }
        Ok(())
    }
}

/// Certified outcome of a successful reduction.
#[derive(Debug, Clone)]
pub struct ReductionOutcome {
    pub q_used: BigUint,
    pub epsilon: HPReal,
    /// No solution has k >= k_bound; equivalently k <= k_bound - 1.
    pub k_bound: BigUint,
    /// k_bound - 1, the inclusive cap on the solution variable.
    pub x_cap: BigUint,
    pub convergent_index: usize,
    /// Convergents with q > 6M tried, including the successful one.
    pub attempts: usize,
    pub digits_used: u32,
}

enum Attempt {
    /// epsilon > 0 certified.
    Success(HPReal),
    /// epsilon <= 0 certified; try the next convergent.
    Rejected,
    /// sign not decidable at this precision.
    Inconclusive,
}

fn try_convergent(gamma: &HPReal, mu: &HPReal, m_cap: &BigUint, conv: &Convergent) -> Attempt {
    let d = gamma.digits();
    let q = HPReal::from_biguint(&conv.q, d);
    let (_, gq_dist) = gamma.mul(&q).dist_to_nearest_int();
    let (_, muq_dist) = mu.mul(&q).dist_to_nearest_int();
    let eps = muq_dist.sub(&HPReal::from_biguint(m_cap, d).mul(&gq_dist));
    match compare(&eps, &HPReal::from_int(0, d)) {
        Ordering3::Greater => Attempt::Success(eps),
        Ordering3::Less => Attempt::Rejected,
        Ordering3::Inconclusive => {
            if eps.is_exact() {
                // exactly zero, e.g. mu = 0: rejected, not imprecise
                Attempt::Rejected
            } else {
                Attempt::Inconclusive
            }
        }
    }
}

/// Run the reduction, escalating precision whenever a certified verdict is
/// unavailable. Tries at most `cf_budget` convergents with q > 6M.
pub fn baker_davenport_reduce(
    inst: &BDInstance,
    cf_budget: usize,
    policy: &PrecisionPolicy,
) -> Result<ReductionOutcome> {
    policy.validate()?;
    inst.validate(policy)?;
    if cf_budget == 0 {
        return Err(Error::Usage("cf_budget must be positive".to_string()));
    }
    let six_m = &inst.m_cap * 6u32;

    for digits in policy.levels() {
        let gamma = (inst.gamma)(digits)?;
        let mu = (inst.mu)(digits)?;
        // expand as far as this precision certifies; the safety cap only
        // guards against a rational gamma supplied by mistake
        let cf = expand_value(&gamma, 100_000)?;
        let convs = convergents(&cf);
        let start = match convs.iter().position(|c| c.q > six_m) {
            Some(i) => i,
            None => continue, // not enough certified convergents yet
        };

        let mut saw_inconclusive = false;
        let mut attempts = 0usize;
        for conv in convs.iter().skip(start) {
            if attempts >= cf_budget {
                break;
            }
            attempts += 1;
            match try_convergent(&gamma, &mu, &inst.m_cap, conv) {
                Attempt::Success(eps) => {
                    let a = (inst.a_coef)(digits)?;
                    let q = HPReal::from_biguint(&conv.q, digits);
                    let b =
                        HPReal::from_rational(inst.b_base.numer(), inst.b_base.denom(), digits)?;
                    let v = a.mul(&q).div(&eps)?.ln()?.div(&b.ln()?)?;
                    let k_bound = v.ceil_upper().max(BigInt::zero());
                    let k_bound = k_bound.to_biguint().expect("nonnegative");
                    let x_cap = if k_bound.is_zero() {
                        BigUint::zero()
                    } else {
                        &k_bound - 1u32
                    };
                    return Ok(ReductionOutcome {
                        q_used: conv.q.clone(),
                        epsilon: eps,
                        k_bound,
                        x_cap,
                        convergent_index: conv.k,
                        attempts,
                        digits_used: digits,
                    });
                }
                Attempt::Rejected => continue,
                Attempt::Inconclusive => {
                    saw_inconclusive = true;
                    break;
                }
            }
        }
        if !saw_inconclusive && attempts >= cf_budget {
            return Err(Error::ReductionFailure(format!(
                "no convergent with q > 6M = {six_m} gave a certified epsilon > 0 within {cf_budget} attempts"
            )));
        }
        // an inconclusive epsilon sign or an exhausted certified expansion
        // both escalate to the next precision level
    }
    Err(Error::EscalationFailure {
        context: "reduction could not certify an epsilon sign within the precision policy"
            .to_string(),
        max_digits: policy.max_digits,
    })
}

/// The reduction instance of the small-n stage: for inequality
/// 0 < x (log B_{n+1} / log alpha) - m + log(4 sqrt 2)/log alpha < A B^-x
/// with gamma = log B_{n+1}/log alpha, mu = log(4 sqrt 2)/log alpha,
/// A = 2/log alpha and B = 5.8.
pub fn balancing_instance(n: u64, m_cap: BigUint) -> BDInstance {
    let gamma: ValueBuilder = Arc::new(move |d| {
        let b = balancing(n + 1);
        HPReal::from_biguint(&b.value, d)
            .ln()?
            .div(&constant(Constant::LogAlpha, d)?)
    });
    let mu: ValueBuilder =
        Arc::new(|d| constant(Constant::Log4Sqrt2, d)?.div(&constant(Constant::LogAlpha, d)?));
    let a_coef: ValueBuilder =
        Arc::new(|d| HPReal::from_int(2, d).div(&constant(Constant::LogAlpha, d)?));
    BDInstance {
        gamma,
        mu,
        a_coef,
        b_base: BigRational::new(BigInt::from(29), BigInt::from(5)),
        m_cap,
    }
}

/// Exposed for tests: evaluate one convergent attempt at a fixed precision.
pub fn attempt_at(inst: &BDInstance, digits: u32, conv: &Convergent) -> Result<Option<HPReal>> {
    let gamma = (inst.gamma)(digits)?;
    let mu = (inst.mu)(digits)?;
    match try_convergent(&gamma, &mu, &inst.m_cap, conv) {
        Attempt::Success(eps) => Ok(Some(eps)),
        Attempt::Rejected => Ok(None),
        Attempt::Inconclusive => Err(Error::EscalationFailure {
            context: "attempt inconclusive at fixed precision".to_string(),
            max_digits: digits,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::first_convergent_above;

    fn sqrt2_instance(mu_tenths: i64, m_cap: u64) -> BDInstance {
        let gamma: ValueBuilder = Arc::new(|d| HPReal::from_int(2, d).sqrt());
        let mu: ValueBuilder = Arc::new(move |d| {
            HPReal::from_rational(&BigInt::from(mu_tenths), &BigInt::from(10), d)
        });
        let a_coef: ValueBuilder = Arc::new(|d| Ok(HPReal::from_int(1, d)));
        BDInstance {
            gamma,
            mu,
            a_coef,
            b_base: BigRational::from_integer(BigInt::from(2)),
            m_cap: BigUint::from(m_cap),
        }
    }

    #[test]
    fn toy_sqrt2_instance_reduces() {
        // gamma = sqrt 2, mu = 0.3, A = 1, B = 2, M = 50: the first
        // convergent with q > 300 is 577/408 and epsilon ~ 0.3567.
        let inst = sqrt2_instance(3, 50);
        let policy = PrecisionPolicy::default();
        let out = baker_davenport_reduce(&inst, 20, &policy).unwrap();
        assert_eq!(out.q_used, BigUint::from(408u32));
        assert_eq!(out.attempts, 1);
        assert_eq!(out.k_bound, BigUint::from(11u32));
        assert_eq!(out.x_cap, BigUint::from(10u32));
        assert!(out.q_used > BigUint::from(300u32));
    }

    #[test]
    fn zero_shift_rejects_every_convergent() {
        // mu = 0 makes ||mu q|| = 0 <= M ||gamma q||, so every attempt is
        // rejected and the budget runs out.
        let inst = sqrt2_instance(0, 50);
        let policy = PrecisionPolicy::default();
        let err = baker_davenport_reduce(&inst, 5, &policy).unwrap_err();
        assert!(matches!(err, Error::ReductionFailure(_)));
    }

    #[test]
    fn smaller_cap_gives_no_larger_bound_on_same_convergent() {
        // With the same q, epsilon grows as M shrinks, so the k-bound can
        // only shrink.
        let big = sqrt2_instance(3, 50);
        let small = sqrt2_instance(3, 10);
        let gamma = (big.gamma)(200).unwrap();
        let cf = expand_value(&gamma, 50).unwrap();
        let q408 = first_convergent_above(&cf, &BigUint::from(300u32)).unwrap();

        let eps_big = attempt_at(&big, 200, &q408).unwrap().unwrap();
        let eps_small = attempt_at(&small, 200, &q408).unwrap().unwrap();
        assert_eq!(compare(&eps_big, &eps_small), Ordering3::Less);
    }

    #[test]
    fn paper_instance_n2_reduces_to_small_cap() {
        // n = 2: gamma = log 35 / log alpha with M = 4e16; the oracle value
        // for the accepted convergent is q = 302517854025929183 with a cap
        // x <= 24.
        let inst = balancing_instance(2, BigUint::from(4u64 * 10u64.pow(16)));
        let policy = PrecisionPolicy::default();
        let out = baker_davenport_reduce(&inst, 60, &policy).unwrap();
        assert_eq!(out.q_used, BigUint::from(302517854025929183u64));
        assert_eq!(out.attempts, 1);
        assert_eq!(out.x_cap, BigUint::from(24u32));
        assert!(out.x_cap <= BigUint::from(77u32));
    }

    #[test]
    fn invalid_instances_are_rejected() {
        let mut inst = sqrt2_instance(3, 50);
        inst.m_cap = BigUint::zero();
        let policy = PrecisionPolicy::default();
        assert!(baker_davenport_reduce(&inst, 5, &policy).is_err());

        let mut inst = sqrt2_instance(3, 50);
        inst.b_base = BigRational::one();
        assert!(baker_davenport_reduce(&inst, 5, &policy).is_err());

        let inst = sqrt2_instance(3, 50);
        assert!(baker_davenport_reduce(&inst, 0, &policy).is_err());
    }
}
