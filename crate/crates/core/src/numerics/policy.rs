//! Precision escalation: re-evaluate a comparison at geometrically growing
//! precision until it becomes conclusive, and fail hard at the cap instead
//! of guessing.

use serde::{Deserialize, Serialize};

use super::hpreal::{compare, HPReal, Ordering3};
use crate::error::{Error, Result};

/// Escalation schedule for certified comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub initial_digits: u32,
    pub max_digits: u32,
    pub escalation_factor: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial_digits: 200,
            max_digits: 3200,
            escalation_factor: 2,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(initial_digits: u32, max_digits: u32, escalation_factor: u32) -> Result<Self> {
        let p = PrecisionPolicy {
            initial_digits,
            max_digits,
            escalation_factor,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_digits < 50 {
            return Err(Error::Usage(format!(
                "initial_digits must be at least 50, got {}",
                self.initial_digits
            )));
        }
        if self.max_digits < self.initial_digits {
            return Err(Error::Usage(format!(
                "max_digits {} below initial_digits {}",
                self.max_digits, self.initial_digits
            )));
        }
        if self.escalation_factor < 2 {
            return Err(Error::Usage(format!(
                "escalation_factor must be at least 2, got {}",
                self.escalation_factor
            )));
        }
        Ok(())
    }

    /// The precision levels visited during escalation, capped at max_digits.
    pub fn levels(&self) -> Vec<u32> {
        let mut out = vec![self.initial_digits];
        let mut d = self.initial_digits;
        while d < self.max_digits {
            d = d
                .saturating_mul(self.escalation_factor)
                .min(self.max_digits);
            out.push(d);
        }
        out
    }
}

/// Direction of a strict comparison request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Less,
    Greater,
}

/// Decide a strict comparison between two values rebuilt at each precision
/// level. Returns the verdict of the first conclusive comparison; errors
/// once the policy cap is reached with the intervals still overlapping.
///
/// The caller asserts the two true values are not equal; true equality is
/// indistinguishable from insufficient precision and surfaces as an
/// escalation failure by design.
pub fn decide_with_escalation<F>(policy: &PrecisionPolicy, rel: Rel, mut build: F) -> Result<bool>
where
    F: FnMut(u32) -> Result<(HPReal, HPReal)>,
{
    policy.validate()?;
    for digits in policy.levels() {
        let (a, b) = build(digits)?;
        match compare(&a, &b) {
            Ordering3::Less => return Ok(rel == Rel::Less),
            Ordering3::Greater => return Ok(rel == Rel::Greater),
            Ordering3::Inconclusive => continue,
        }
    }
    Err(Error::EscalationFailure {
        context: "comparison still inconclusive".to_string(),
        max_digits: policy.max_digits,
    })
}

/// Certify `a < b`, escalating precision as needed. `Ok(false)` means the
/// opposite strict inequality was certified.
pub fn certify_less<F>(policy: &PrecisionPolicy, build: F) -> Result<bool>
where
    F: FnMut(u32) -> Result<(HPReal, HPReal)>,
{
    decide_with_escalation(policy, Rel::Less, build)
}

/// Certify `a <= b`: either a certified strict inequality or exact equality
/// of two zero-error balls.
pub fn certify_le<F>(policy: &PrecisionPolicy, mut build: F) -> Result<bool>
where
    F: FnMut(u32) -> Result<(HPReal, HPReal)>,
{
    policy.validate()?;
    for digits in policy.levels() {
        let (a, b) = build(digits)?;
        if a.exact_eq(&b) {
            return Ok(true);
        }
        match compare(&a, &b) {
            Ordering3::Less => return Ok(true),
            Ordering3::Greater => return Ok(false),
            Ordering3::Inconclusive => continue,
        }
    }
    Err(Error::EscalationFailure {
        context: "comparison still inconclusive".to_string(),
        max_digits: policy.max_digits,
    })
}
