//! The bound chain: certified links that turn the Matveev lower bounds into
//! the explicit caps on x, culminating in the absolute cap x < 7 * 10^28.
//!
//! Each link is one strict inequality between two evaluable quantities,
//! certified by interval comparison under precision escalation. The fixed
//! point inequalities are verified by substituting the claimed cap; the
//! remaining monotonicity in the free variable is algebraic (the ratio of
//! the two sides only improves beyond the evaluated endpoint).

use num_bigint::BigInt;

use super::matveev::{matveev_constant, MatveevParams};
use crate::error::{Error, Result};
use crate::numerics::{
    certify_less, compare, constant, Constant, HPReal, Ordering3, PrecisionPolicy,
};

/// Open-interval bounds on the middle index: (n-2)x + 1 < m < nx + 2.
pub fn m_range(n: u64, x: u64) -> Result<(BigInt, BigInt)> {
    if n < 2 || x < 1 {
        return Err(Error::Usage(format!(
            "m_range requires n >= 2 and x >= 1, got n = {n}, x = {x}"
        )));
    }
    let n = BigInt::from(n);
    let x = BigInt::from(x);
    Ok(((&n - 2) * &x + 1, n * x + 2))
}

/// Inclusive grid range for t = (n+1)x - m: [max(1, floor(0.9x - 1.4)), x].
pub fn t_range(x: u64) -> Result<(u64, u64)> {
    if x < 3 {
        return Err(Error::Usage(format!("t_range requires x >= 3, got {x}")));
    }
    let lo = (9 * x - 14) / 10;
    Ok((lo.max(1), x))
}

/// Upper solution of x / log x < A for A >= 3: returns 2 A log A.
pub fn solve_two_a_log_a(coef: &HPReal) -> Result<HPReal> {
    let three = HPReal::from_int(3, coef.digits());
    if compare(coef, &three) == Ordering3::Less {
        return Err(Error::Usage(
            "solve_two_a_log_a requires a coefficient of at least 3".to_string(),
        ));
    }
    let two = HPReal::from_int(2, coef.digits());
    Ok(two.mul(coef).mul(&coef.ln()?))
}

/// One certified link of the chain.
#[derive(Debug, Clone)]
pub struct ChainLink {
    pub name: &'static str,
    pub lhs: HPReal,
    pub rhs: HPReal,
    pub holds: bool,
    pub digits: u32,
}

/// A computed coefficient next to the value the source rounds it up to.
#[derive(Debug, Clone)]
pub struct CoefficientCheck {
    pub name: &'static str,
    pub computed: HPReal,
    pub published: HPReal,
    pub within_published: bool,
}

/// The certified chain with its headline coefficients.
#[derive(Debug, Clone)]
pub struct BoundChainReport {
    pub n_min: u64,
    pub links: Vec<ChainLink>,
    /// x < c * n * log((n+2) x)
    pub x_vs_mn: CoefficientCheck,
    /// x < c * n * log n for n >= 38
    pub x_vs_n: CoefficientCheck,
    /// min(n, x) < c * log x
    pub l_vs_x: CoefficientCheck,
    /// the absolute cap on x
    pub x_absolute: CoefficientCheck,
}

impl BoundChainReport {
    pub fn all_links_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds)
            && self.x_vs_mn.within_published
            && self.x_vs_n.within_published
            && self.l_vs_x.within_published
            && self.x_absolute.within_published
    }
}

/// Normalized Matveev constant of the three-logarithm form, i.e. the full
/// product divided by n (1 + log m). Evaluated through a concrete
/// instantiation so the library path is exercised end to end.
pub fn lambda1_normalized(digits: u32) -> Result<HPReal> {
    let n: i64 = 5;
    let m: i64 = 7;
    let log_alpha = constant(Constant::LogAlpha, digits)?;
    let p = MatveevParams {
        s: 3,
        degree: 2,
        a: vec![
            log_alpha.clone(),
            constant(Constant::Log32, digits)?,
            log_alpha.mul(&HPReal::from_int(2 * n, digits)),
        ],
        b_cap: HPReal::from_int(m, digits),
    };
    let c = matveev_constant(&p)?;
    let one = HPReal::from_int(1, digits);
    let norm = HPReal::from_int(n, digits).mul(&one.add(&HPReal::from_int(m, digits).ln()?));
    c.div(&norm)
}

/// Normalized Matveev constant of the two-logarithm form: the full product
/// divided by (1 + log x).
pub fn lambda2_normalized(digits: u32) -> Result<HPReal> {
    let x: i64 = 7;
    let p = MatveevParams {
        s: 2,
        degree: 2,
        a: vec![
            constant(Constant::LogAlpha, digits)?,
            constant(Constant::Log32, digits)?,
        ],
        b_cap: HPReal::from_int(x, digits),
    };
    let c = matveev_constant(&p)?;
    let one = HPReal::from_int(1, digits);
    c.div(&one.add(&HPReal::from_int(x, digits).ln()?))
}

fn certified_link<F>(
    policy: &PrecisionPolicy,
    name: &'static str,
    mut build: F,
) -> Result<ChainLink>
where
    F: FnMut(u32) -> Result<(HPReal, HPReal)>,
{
    for digits in policy.levels() {
        let (lhs, rhs) = build(digits)?;
        match compare(&lhs, &rhs) {
            Ordering3::Less => {
                return Ok(ChainLink {
                    name,
                    lhs,
                    rhs,
                    holds: true,
                    digits,
                })
            }
            Ordering3::Greater => {
                return Err(Error::ChainFailure(format!(
                    "{name}: certified the opposite inequality"
                )))
            }
            Ordering3::Inconclusive => continue,
        }
    }
    Err(Error::ChainFailure(format!(
        "{name}: inconclusive at maximum precision"
    )))
}

fn coefficient_check<F>(
    policy: &PrecisionPolicy,
    name: &'static str,
    published: &str,
    mut build: F,
) -> Result<CoefficientCheck>
where
    F: FnMut(u32) -> Result<HPReal>,
{
    let within = certify_less(policy, |d| {
        Ok((build(d)?, HPReal::from_decimal_str(published, d)?))
    })?;
    if !within {
        return Err(Error::ChainFailure(format!(
            "{name}: computed coefficient exceeds the published {published}"
        )));
    }
    let computed = build(policy.initial_digits)?;
    Ok(CoefficientCheck {
        name,
        computed,
        published: HPReal::from_decimal_str(published, policy.initial_digits)?,
        within_published: within,
    })
}

/// Certify every link of the chain for n >= n_min (n_min >= 38) and report
/// the coefficients next to their published round-ups.
pub fn bound_chain(n_min: u64, policy: &PrecisionPolicy) -> Result<BoundChainReport> {
    if n_min < 38 {
        return Err(Error::Usage(format!(
            "bound_chain requires n_min >= 38, got {n_min}"
        )));
    }
    let nm = i64::try_from(n_min).expect("n_min fits i64");
    let mut links = Vec::new();

    // x < (log 2 + C1 n (1 + log m)) / log 5.8 and the absorption of the
    // additive log 2 into the rounded coefficient, at the minimal
    // n (1 + log m) = 2 (1 + log 5); larger n, m only widen the margin.
    links.push(certified_link(
        policy,
        "one_plus_log_m_below_1.7_log_m_at_5",
        |d| {
            let log5 = HPReal::from_int(5, d).ln()?;
            let lhs = HPReal::from_int(1, d).add(&log5);
            let rhs = HPReal::from_decimal_str("1.7", d)?.mul(&log5);
            Ok((lhs, rhs))
        },
    )?);
    links.push(certified_link(
        policy,
        "coefficient_absorbs_log2_at_minimum",
        |d| {
            let log58 = HPReal::from_decimal_str("5.8", d)?.ln()?;
            let u_min = HPReal::from_int(2, d)
                .mul(&HPReal::from_int(1, d).add(&HPReal::from_int(5, d).ln()?));
            let lhs = HPReal::from_decimal_str("21000000000000", d)?
                .div(&log58)?
                .mul(&u_min)
                .add(&constant(Constant::Log2, d)?.div(&log58)?);
            let rhs = HPReal::from_decimal_str("12000000000000", d)?.mul(&u_min);
            Ok((lhs, rhs))
        },
    )?);
    links.push(certified_link(
        policy,
        "rounding_1.2_times_1.7_below_2.1",
        |d| {
            let lhs = HPReal::from_decimal_str("1.2", d)?.mul(&HPReal::from_decimal_str("1.7", d)?);
            let rhs = HPReal::from_decimal_str("2.1", d)?;
            // 2.04 < 2.1 exactly; treated as a link for the record
            Ok((lhs, rhs))
        },
    )?);

    // the n in [2, 37] interlude: x < 7.8e14 log(46 x) caps x below 4e16,
    // which justifies the reduction's multiplier bound M.
    links.push(certified_link(
        policy,
        "smalln_coefficient_2.1e13_times_37_below_7.8e14",
        |d| {
            let lhs = HPReal::from_decimal_str("21000000000000", d)?.mul(&HPReal::from_int(37, d));
            let rhs = HPReal::from_decimal_str("780000000000000", d)?;
            Ok((lhs, rhs))
        },
    )?);
    links.push(certified_link(
        policy,
        "smalln_x_cap_4e16_fixed_point",
        |d| {
            let x_cap = HPReal::from_bigint(BigInt::from(4u32) * BigInt::from(10u32).pow(16), d);
            let lhs = HPReal::from_decimal_str("780000000000000", d)?
                .mul(&HPReal::from_int(46, d).mul(&x_cap).ln()?);
            Ok((lhs, x_cap))
        },
    )?);

    // n >= 38 branch: log(4.2e13 n) < 10 log n makes 2 A log A collapse to
    // the published n log n coefficient; evaluated at the endpoint n_min,
    // where the ratio of the two sides is largest.
    links.push(certified_link(
        policy,
        "log_4.2e13_n_below_10_log_n_at_38",
        |d| {
            let a = HPReal::from_decimal_str("42000000000000", d)?.mul(&HPReal::from_int(nm, d));
            let lhs = a.ln()?;
            let rhs = HPReal::from_int(10, d).mul(&HPReal::from_int(nm, d).ln()?);
            Ok((lhs, rhs))
        },
    )?);
    links.push(certified_link(
        policy,
        "two_a_log_a_below_published_at_38",
        |d| {
            let a = HPReal::from_decimal_str("42000000000000", d)?.mul(&HPReal::from_int(nm, d));
            let lhs = solve_two_a_log_a(&a)?;
            let rhs = HPReal::from_decimal_str("840000000000000", d)?
                .mul(&HPReal::from_int(nm, d))
                .mul(&HPReal::from_int(nm, d).ln()?);
            Ok((lhs, rhs))
        },
    )?);
    links.push(certified_link(
        policy,
        "x_below_n_plus_2_case_absorbed",
        |d| {
            let lhs = HPReal::from_int(nm + 2, d);
            let rhs = HPReal::from_decimal_str("840000000000000", d)?
                .mul(&HPReal::from_int(nm, d))
                .mul(&HPReal::from_int(nm, d).ln()?);
            Ok((lhs, rhs))
        },
    )?);

    // growth lemma y = x / alpha^(2n) < alpha^(-n), evaluated at n_min.
    links.push(certified_link(
        policy,
        "x_bound_below_alpha_n_at_38",
        |d| {
            let lhs = HPReal::from_decimal_str("840000000000000", d)?
                .mul(&HPReal::from_int(nm, d))
                .mul(&HPReal::from_int(nm, d).ln()?);
            let rhs = constant(Constant::Alpha, d)?.pow_int(nm)?;
            Ok((lhs, rhs))
        },
    )?);
    links.push(certified_link(policy, "alpha_cubed_above_197", |d| {
        Ok((
            HPReal::from_int(197, d),
            constant(Constant::Alpha, d)?.pow_int(3)?,
        ))
    })?);
    links.push(certified_link(policy, "eight_sqrt2_below_alpha_38", |d| {
        let lhs = HPReal::from_int(128, d).sqrt()?; // 8 sqrt 2
        let rhs = constant(Constant::Alpha, d)?.pow_int(38)?;
        Ok((lhs, rhs))
    })?);

    // the two-logarithm stage: l = min(n, x) < 4e10 log x; the link is
    // evaluated at x = 3 where (1 + log x)/log x peaks.
    links.push(certified_link(policy, "l_bound_link_at_x_3", |d| {
        let c2 = lambda2_normalized(d)?;
        let one = HPReal::from_int(1, d);
        let log3 = HPReal::from_int(3, d).ln()?;
        let lhs = c2
            .mul(&one.add(&log3))
            .add(&HPReal::from_int(4, d).ln()?)
            .div(&constant(Constant::LogAlpha, d)?)?;
        let rhs = HPReal::from_decimal_str("40000000000", d)?.mul(&log3);
        Ok((lhs, rhs))
    })?);

    // absolute cap, case l = x: x < 2 A log A with A = 4e10 stays far below.
    links.push(certified_link(
        policy,
        "l_equals_x_cap_below_absolute",
        |d| {
            let a = HPReal::from_decimal_str("40000000000", d)?;
            let lhs = solve_two_a_log_a(&a)?;
            let rhs = HPReal::from_bigint(BigInt::from(7u32) * BigInt::from(10u32).pow(28), d);
            Ok((lhs, rhs))
        },
    )?);
    // absolute cap, case l = n: substituting x = 7e28 into the composed
    // bound lands strictly below it, so no x >= 7e28 satisfies the chain.
    links.push(certified_link(
        policy,
        "l_equals_n_fixed_point_at_7e28",
        |d| {
            let x_cap = HPReal::from_bigint(BigInt::from(7u32) * BigInt::from(10u32).pow(28), d);
            let inner = HPReal::from_decimal_str("40000000000", d)?.mul(&x_cap.ln()?);
            let lhs = HPReal::from_decimal_str("840000000000000", d)?
                .mul(&inner)
                .mul(&inner.ln()?);
            Ok((lhs, x_cap))
        },
    )?);

    let x_vs_mn = coefficient_check(policy, "x_vs_mn", "21000000000000", |d| {
        // 1.7 * C1 / log 5.8 with the computed (unrounded) C1
        let c1 = lambda1_normalized(d)?;
        HPReal::from_decimal_str("1.7", d)?
            .mul(&c1)
            .div(&HPReal::from_decimal_str("5.8", d)?.ln()?)
    })?;
    let x_vs_n = coefficient_check(policy, "x_vs_n", "840000000000000", |d| {
        // 2 * 4.2e13 * log(4.2e13 n) / log n at the endpoint n_min
        let a = HPReal::from_decimal_str("42000000000000", d)?.mul(&HPReal::from_int(nm, d));
        HPReal::from_decimal_str("84000000000000", d)?
            .mul(&a.ln()?)
            .div(&HPReal::from_int(nm, d).ln()?)
    })?;
    let l_vs_x = coefficient_check(policy, "l_vs_x", "40000000000", |d| {
        let c2 = lambda2_normalized(d)?;
        let one = HPReal::from_int(1, d);
        let log3 = HPReal::from_int(3, d).ln()?;
        c2.mul(&one.add(&log3))
            .add(&HPReal::from_int(4, d).ln()?)
            .div(&constant(Constant::LogAlpha, d)?)?
            .div(&log3)
    })?;
    let x_absolute =
        coefficient_check(policy, "x_absolute", "70000000000000000000000000000", |d| {
            let x_cap = HPReal::from_bigint(BigInt::from(7u32) * BigInt::from(10u32).pow(28), d);
            let inner = HPReal::from_decimal_str("40000000000", d)?.mul(&x_cap.ln()?);
            Ok(HPReal::from_decimal_str("840000000000000", d)?
                .mul(&inner)
                .mul(&inner.ln()?))
        })?;

    Ok(BoundChainReport {
        n_min,
        links,
        x_vs_mn,
        x_vs_n,
        l_vs_x,
        x_absolute,
    })
}
