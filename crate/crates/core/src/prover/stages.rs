//! The pipeline stages: sequence sanity, the erratum audit, the n = 1 case,
//! the per-n reductions, the exhaustive search, the bound chain, the
//! Legendre audit, the final grid and the degenerate families. `prove`
//! chains them and assembles the certificate.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

use super::certificate::*;
use super::config::ProveConfig;
use crate::bounds::{
    baker_davenport_reduce, balancing_instance, bound_chain, m_range, t_range, ReductionOutcome,
};
use crate::contfrac::{expand, legendre_audit};
use crate::error::{Error, Result};
use crate::numerics::{
    certify_le, compare, constant, Constant, HPReal, Ordering3, PrecisionPolicy,
};
use crate::sequences::{
    balancing, is_balancing, lucas_balancing, power_difference, square_difference_oracle,
    three_smooth_indices,
};

/// A solution (m, n, x) of the power-difference equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSolution {
    pub m: u64,
    pub n: u64,
    pub x: u32,
}

/// Rectangular search window with optional per-n caps from the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRange {
    pub n_lo: u64,
    pub n_hi: u64,
    pub x_lo: u32,
    pub x_hi: u64,
    pub per_n_x_cap: Option<BTreeMap<u64, u64>>,
}

impl SearchRange {
    fn validate(&self) -> Result<()> {
        if self.n_lo < 1 || self.n_hi < self.n_lo || u64::from(self.x_lo) > self.x_hi {
            return Err(Error::Usage(format!(
                "empty or invalid search range n in [{}, {}], x in [{}, {}]",
                self.n_lo, self.n_hi, self.x_lo, self.x_hi
            )));
        }
        if self.x_hi > 100_000 {
            return Err(Error::Usage(format!(
                "x bound {} is beyond the supported search window",
                self.x_hi
            )));
        }
        if let Some(caps) = &self.per_n_x_cap {
            if caps.values().any(|&c| c > self.x_hi) {
                return Err(Error::Usage(
                    "per-n cap exceeds the global x bound".to_string(),
                ));
            }
        }
        Ok(())
    }

    fn x_hi_for(&self, n: u64) -> u64 {
        match &self.per_n_x_cap {
            Some(caps) => caps.get(&n).copied().unwrap_or(self.x_hi).min(self.x_hi),
            None => self.x_hi,
        }
    }
}

/// Exhaustive scan: every (n, x) in the range is tested through the exact
/// power difference and the membership criterion; no m is ever enumerated.
pub fn small_n_search(range: &SearchRange) -> Result<(Vec<EquationSolution>, u64)> {
    range.validate()?;
    let mut hits = Vec::new();
    let mut cells = 0u64;
    for n in range.n_lo..=range.n_hi {
        let x_hi = range.x_hi_for(n);
        for x in u64::from(range.x_lo)..=x_hi {
            cells += 1;
            let x = u32::try_from(x).expect("x fits u32");
            let diff = power_difference(n, x);
            let member = is_balancing(&diff);
            if member.is_member {
                hits.push(EquationSolution {
                    m: member.index.expect("member carries its index"),
                    n,
                    x,
                });
            }
        }
    }
    Ok((hits, cells))
}

/// The n = 1 case: find all odd m <= m_cap with B_m + 1 a power of six, and
/// independently rescan B_1..B_12 for 3-smooth values.
pub fn case_n1(m_cap: u64) -> Result<(Vec<(u64, u32)>, Vec<u64>)> {
    if m_cap < 1 {
        return Err(Error::Usage("case_n1 requires m_cap >= 1".to_string()));
    }
    let mut solutions = Vec::new();
    for m in (1..=m_cap).step_by(2) {
        let mut v = balancing(m).value + 1u32;
        let mut x = 0u32;
        while (&v % 6u32).is_zero() {
            v /= 6u32;
            x += 1;
        }
        if v.is_one() && x >= 1 {
            solutions.push((m, x));
        }
    }
    Ok((solutions, three_smooth_indices(12)))
}

/// Sign variant of the grid expression denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVariant {
    Minus,
    Plus,
}

impl SignVariant {
    fn label(self) -> &'static str {
        match self {
            SignVariant::Minus => "minus",
            SignVariant::Plus => "plus",
        }
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone)]
pub struct GridCell {
    pub x: u64,
    pub t: u64,
    pub sign_variant: SignVariant,
    pub value: HPReal,
}

/// Outcome of the full grid scan.
#[derive(Debug, Clone)]
pub struct GridScan {
    pub min_cell: GridCell,
    /// Every value certified > 1/10 in both variants.
    pub all_pass: bool,
    pub none_contain_zero: bool,
    pub cells_per_variant: u64,
    pub cells_total: u64,
}

/// One grid cell evaluated at a given precision.
pub(crate) fn grid_cell_value(x: u64, t: u64, variant: SignVariant, digits: u32) -> Result<HPReal> {
    let alpha = constant(Constant::Alpha, digits)?;
    let one = HPReal::from_int(1, digits);
    let xi = i64::try_from(x).expect("x fits i64");
    let ti = i64::try_from(t).expect("t fits i64");
    let pw = HPReal::from_int(32, digits).sqrt()?.pow_int(xi - 1)?;
    let ax = alpha.pow_int(-xi)?;
    let denom = match variant {
        SignVariant::Minus => one.sub(&ax),
        SignVariant::Plus => one.add(&ax),
    };
    Ok(pw.div(&alpha.pow_int(ti)?)?.div(&denom)?.sub(&one).abs())
}

/// Evaluate |alpha^-t 32^((x-1)/2) (1 -+ alpha^-x)^-1 - 1| over
/// x in [3, 100], t in the admissible range, for both denominator signs.
///
/// `all_pass` reports the published > 1/10 claim; zero-freeness and the
/// minimum cell are tracked independently so the caller can decide what the
/// contradiction actually requires. A cell whose interval cannot be
/// separated from zero or from 1/10 is re-evaluated at escalating
/// precision before the scan gives up.
pub fn final_grid(policy: &PrecisionPolicy) -> Result<GridScan> {
    policy.validate()?;

    let mut min_cell: Option<GridCell> = None;
    let mut all_pass = true;
    let mut none_contain_zero = true;
    let mut cells_per_variant = 0u64;

    let digits = policy.initial_digits;
    let alpha = constant(Constant::Alpha, digits)?;
    let sqrt32 = HPReal::from_int(32, digits).sqrt()?;
    let one = HPReal::from_int(1, digits);
    let tenth = HPReal::from_rational(&BigInt::one(), &BigInt::from(10), digits)?;

    // decide value vs bound, re-evaluating the cell at higher precision if
    // the first comparison is inconclusive
    let settle =
        |x: u64, t: u64, variant: SignVariant, value: &HPReal, bound: &HPReal| match compare(
            value, bound,
        ) {
            Ordering3::Inconclusive => {
                for d in policy.levels().into_iter().skip(1) {
                    let finer = grid_cell_value(x, t, variant, d)?;
                    let b = bound.with_digits(d);
                    match compare(&finer, &b) {
                        Ordering3::Inconclusive => continue,
                        decided => return Ok(decided),
                    }
                }
                Err(Error::EscalationFailure {
                    context: format!("grid cell x = {x}, t = {t} comparison stayed inconclusive"),
                    max_digits: policy.max_digits,
                })
            }
            decided => Ok(decided),
        };

    // alpha^k for k = 0..=100, reused across cells
    let mut alpha_pow = Vec::with_capacity(101);
    alpha_pow.push(HPReal::from_int(1, digits));
    for k in 1..=100usize {
        alpha_pow.push(alpha_pow[k - 1].mul(&alpha));
    }

    let mut pow32 = sqrt32.pow_int(2)?; // 32^((x-1)/2) at x = 3
    for x in 3..=100u64 {
        let alpha_inv_x = alpha_pow[x as usize].recip()?;
        let denom_minus = one.sub(&alpha_inv_x);
        let denom_plus = one.add(&alpha_inv_x);
        let (t_lo, t_hi) = t_range(x)?;
        for t in t_lo..=t_hi {
            cells_per_variant += 1;
            let base = pow32.div(&alpha_pow[t as usize])?;
            for (variant, denom) in [
                (SignVariant::Minus, &denom_minus),
                (SignVariant::Plus, &denom_plus),
            ] {
                let value = base.div(denom)?.sub(&one).abs();
                if settle(x, t, variant, &value, &HPReal::from_int(0, digits))?
                    != Ordering3::Greater
                {
                    none_contain_zero = false;
                }
                if settle(x, t, variant, &value, &tenth)? == Ordering3::Less {
                    all_pass = false;
                }
                let replace = match &min_cell {
                    None => true,
                    Some(cur) => compare(&value, &cur.value) == Ordering3::Less,
                };
                if replace {
                    min_cell = Some(GridCell {
                        x,
                        t,
                        sign_variant: variant,
                        value: value.clone(),
                    });
                }
            }
        }
        pow32 = pow32.mul(&sqrt32);
    }

    Ok(GridScan {
        min_cell: min_cell.expect("grid is nonempty"),
        all_pass,
        none_contain_zero,
        cells_per_variant,
        cells_total: cells_per_variant * 2,
    })
}

pub(crate) fn run_sequence_sanity(
    policy: &PrecisionPolicy,
) -> Result<(SequenceSanityRecord, bool)> {
    let digits = policy.initial_digits;
    let alpha = constant(Constant::Alpha, digits)?;
    let beta = constant(Constant::Beta, digits)?;
    let sqrt32 = HPReal::from_int(32, digits).sqrt()?;

    // Binet containment for n <= 300
    let binet_max_n = 300u64;
    let mut alpha_n = HPReal::from_int(1, digits);
    let mut beta_n = HPReal::from_int(1, digits);
    for n in 0..=binet_max_n {
        if n > 0 {
            alpha_n = alpha_n.mul(&alpha);
            beta_n = beta_n.mul(&beta);
        }
        let ball = alpha_n.sub(&beta_n).div(&sqrt32)?;
        let exact = BigInt::from(balancing(n).value);
        if !ball.contains_bigint(&exact) {
            return Err(Error::OracleFailure(format!(
                "Binet evaluation does not contain B_{n}"
            )));
        }
    }

    // Growth bounds for 1 <= n <= 300. The stated bound
    // alpha^(n-2) <= B_n <= alpha^(n-1) has a false upper half (already at
    // n = 2: B_2 = 6 > alpha); its outcome is recorded. The verdict rests
    // on the corrected bound alpha^(n-1) <= B_n < alpha^n, whose lower half
    // is an equality at n = 1.
    let growth_max_n = 300u64;
    let mut source_growth_first_failure = None;
    for n in 1..=growth_max_n {
        let nn = i64::try_from(n).expect("n fits i64");
        let stated_lower = certify_le(policy, |d| {
            let a = constant(Constant::Alpha, d)?.pow_int(nn - 2)?;
            Ok((a, HPReal::from_biguint(&balancing(n).value, d)))
        })?;
        let stated_upper = certify_le(policy, |d| {
            let a = constant(Constant::Alpha, d)?.pow_int(nn - 1)?;
            Ok((HPReal::from_biguint(&balancing(n).value, d), a))
        })?;
        if !(stated_lower && stated_upper) && source_growth_first_failure.is_none() {
            source_growth_first_failure = Some(n);
        }
        let corrected_lower = certify_le(policy, |d| {
            let a = constant(Constant::Alpha, d)?.pow_int(nn - 1)?;
            Ok((a, HPReal::from_biguint(&balancing(n).value, d)))
        })?;
        let corrected_upper = certify_le(policy, |d| {
            let a = constant(Constant::Alpha, d)?.pow_int(nn)?;
            Ok((HPReal::from_biguint(&balancing(n).value, d), a))
        })?;
        if !(corrected_lower && corrected_upper) {
            return Err(Error::OracleFailure(format!(
                "corrected growth bound failed at n = {n}"
            )));
        }
    }

    // ratio bound B_n / B_{n+1} <= 5/29 for 2 <= n <= 500, exact integers
    let ratio_max_n = 500u64;
    for n in 2..=ratio_max_n {
        if balancing(n).value * 29u32 > balancing(n + 1).value * 5u32 {
            return Err(Error::OracleFailure(format!(
                "ratio bound failed at n = {n}"
            )));
        }
    }

    // Pell invariant 8 B_n^2 + 1 = (C_n / 2)^2 for n <= 1000, exact
    let pell_max_n = 1000u64;
    for n in 0..=pell_max_n {
        let b = balancing(n).value;
        let c = lucas_balancing(n).value;
        let half = c / 2u32;
        if &b * &b * 8u32 + 1u32 != &half * &half {
            return Err(Error::OracleFailure(format!(
                "Pell invariant failed at n = {n}"
            )));
        }
    }

    Ok((
        SequenceSanityRecord {
            binet_max_n,
            growth_max_n,
            source_growth_bound_holds: source_growth_first_failure.is_none(),
            source_growth_first_failure,
            corrected_growth_bound_holds: true,
            ratio_max_n,
            pell_max_n,
            digits,
        },
        true,
    ))
}

fn run_erratum_audit(n_max: u64) -> Result<(ErratumAuditRecord, bool)> {
    let offset = square_difference_oracle(n_max)?;
    Ok((
        ErratumAuditRecord {
            n_max,
            offset,
            source_offset: 2,
            matches_source: offset == 2,
        },
        true,
    ))
}

fn run_n1_case(m_cap: u64) -> Result<(N1CaseRecord, bool)> {
    let (solutions, smooth) = case_n1(m_cap)?;
    // the only admissible pair is (3, 2), which belongs to the quadratic
    // family; anything else would be a new solution
    let pass = solutions == vec![(3, 2)] && smooth == vec![1, 2];
    Ok((
        N1CaseRecord {
            m_cap,
            solutions: solutions
                .into_iter()
                .map(|(m, x)| N1Solution { m, x })
                .collect(),
            three_smooth_indices: smooth,
            three_smooth_scan_max: 12,
        },
        pass,
    ))
}

fn run_reductions(
    config: &ProveConfig,
    policy: &PrecisionPolicy,
) -> Result<(ReductionStageRecord, bool, BTreeMap<u64, u64>)> {
    let mut rows = Vec::new();
    let mut caps = BTreeMap::new();
    let mut max_cap = BigUint::zero();
    for n in config.n_lo..=config.n_hi {
        let inst = balancing_instance(n, config.m_cap.clone());
        let out: ReductionOutcome = baker_davenport_reduce(&inst, config.cf_budget, policy)?;
        if out.x_cap > max_cap {
            max_cap = out.x_cap.clone();
        }
        caps.insert(
            n,
            out.x_cap
                .to_u64()
                .unwrap_or(config.x_cap_global)
                .min(config.x_cap_global),
        );
        rows.push(ReductionRow {
            n,
            q: out.q_used.to_string(),
            epsilon: NumberRecord::from(&out.epsilon),
            k_bound: out.k_bound.to_string(),
            x_cap: out.x_cap.to_string(),
            convergent_index: out.convergent_index,
            attempts: out.attempts,
            digits: out.digits_used,
        });
    }
    let all_within = max_cap <= BigUint::from(config.x_cap_global);
    let record = ReductionStageRecord {
        m_cap: config.m_cap.to_string(),
        b_base: "5.8".to_string(),
        cf_budget: config.cf_budget,
        rows,
        max_x_cap: max_cap.to_string(),
        global_x_cap: config.x_cap_global,
        all_caps_within_global: all_within,
    };
    Ok((record, all_within, caps))
}

fn classify_solutions(
    hits: Vec<EquationSolution>,
    offset: u8,
) -> (Vec<SolutionRecord>, Vec<SolutionRecord>) {
    let mut family = Vec::new();
    let mut unexpected = Vec::new();
    for h in hits {
        let (lo, hi) = m_range(h.n, u64::from(h.x)).expect("solutions have n >= 2, x >= 1");
        let m = BigInt::from(h.m);
        let rec = SolutionRecord {
            m: h.m,
            n: h.n,
            x: h.x,
            m_in_range: lo < m && m < hi,
        };
        if h.x == 2 && h.m == 2 * h.n + u64::from(offset) {
            family.push(rec);
        } else {
            unexpected.push(rec);
        }
    }
    (family, unexpected)
}

fn run_small_search(
    config: &ProveConfig,
    caps: Option<&BTreeMap<u64, u64>>,
    offset: u8,
) -> Result<(SmallSearchRecord, bool)> {
    let range = SearchRange {
        n_lo: config.n_lo,
        n_hi: config.n_hi,
        x_lo: 3,
        x_hi: config.x_cap_global,
        per_n_x_cap: caps.cloned(),
    };
    let (hits, cells) = small_n_search(&range)?;
    let (family, unexpected) = classify_solutions(hits, offset);
    let pass = unexpected.is_empty();
    Ok((
        SmallSearchRecord {
            n_lo: range.n_lo,
            n_hi: range.n_hi,
            x_lo: range.x_lo,
            x_hi: range.x_hi,
            used_per_n_caps: caps.is_some(),
            cells,
            family_solutions: family,
            unexpected_solutions: unexpected,
        },
        pass,
    ))
}

fn run_bound_chain(policy: &PrecisionPolicy) -> Result<(BoundChainStageRecord, bool)> {
    let report = bound_chain(38, policy)?;
    let pass = report.all_links_hold();
    let record = BoundChainStageRecord {
        n_min: report.n_min,
        links: report
            .links
            .iter()
            .map(|l| LinkRecord {
                name: l.name.to_string(),
                lhs: NumberRecord::from(&l.lhs),
                rhs: NumberRecord::from(&l.rhs),
                holds: l.holds,
                digits: l.digits,
            })
            .collect(),
        coefficients: [
            &report.x_vs_mn,
            &report.x_vs_n,
            &report.l_vs_x,
            &report.x_absolute,
        ]
        .iter()
        .map(|c| CoefficientRecord {
            name: c.name.to_string(),
            computed: NumberRecord::from(&c.computed),
            published: c.published.to_decimal_string(),
            within_published: c.within_published,
        })
        .collect(),
    };
    Ok((record, pass))
}

/// The published prefix of the expansion of log(4 sqrt 2)/log alpha.
pub const SOURCE_GAMMA_PREFIX: [u64; 7] = [0, 1, 57, 1, 234, 2, 1];

fn gamma_builder(d: u32) -> Result<HPReal> {
    constant(Constant::Log4Sqrt2, d)?.div(&constant(Constant::LogAlpha, d)?)
}

fn run_legendre_stage(
    x_bound: &BigUint,
    policy: &PrecisionPolicy,
) -> Result<(LegendreStageRecord, bool)> {
    // request enough quotients to clear the bound: the published audit
    // needs ~55, so 70 leaves margin; escalate by re-requesting if short
    let mut count = 70usize;
    let (cf, audit) = loop {
        let cf = expand(policy, count, gamma_builder)?;
        match legendre_audit(&cf, x_bound) {
            Ok(audit) => break (cf, audit),
            Err(Error::InsufficientExpansion(_)) if cf.certified() && count < 1000 => {
                count += 50;
            }
            Err(e) => return Err(e),
        }
    };

    let prefix: Vec<String> = cf.quotients()[..7.min(cf.len())]
        .iter()
        .map(|a| a.to_string())
        .collect();
    let source_prefix: Vec<String> = SOURCE_GAMMA_PREFIX.iter().map(|a| a.to_string()).collect();
    let prefix_matches_source = prefix == source_prefix;

    // the published index: q_54 > 7e28 (true, though not the least index)
    let convs = crate::contfrac::convergents(&cf);
    let source_q54_exceeds_bound = convs.get(54).map(|c| &c.q > x_bound).unwrap_or(false);

    // gap margin: a_max_inclusive + 2 < 2200, exact integers
    let gap_margin_ok = &audit.a_max_inclusive + 2u32 < BigUint::from(2200u32);

    // 10^4 log(alpha)/8 * (101/100) > 2200 certifies the threshold constant
    let threshold_derivation_ok =
        crate::numerics::decide_with_escalation(policy, crate::numerics::Rel::Greater, |d| {
            let lhs = HPReal::from_int(10_000, d)
                .mul(&constant(Constant::LogAlpha, d)?)
                .mul(&HPReal::from_rational(
                    &BigInt::from(101),
                    &BigInt::from(800),
                    d,
                )?);
            Ok((lhs, HPReal::from_int(2200, d)))
        })?;

    // premise x > 100 implies alpha^x > alpha^100 > 10^33 > 10^4 x
    let premise_alpha100_ok =
        crate::numerics::decide_with_escalation(policy, crate::numerics::Rel::Greater, |d| {
            let lhs = constant(Constant::Alpha, d)?.pow_int(100)?;
            Ok((lhs, HPReal::from_bigint(BigInt::from(10u32).pow(33), d)))
        })?;
    let premise_1e33_ok = BigUint::from(10u32).pow(33) > x_bound * BigUint::from(10u32).pow(4);

    let pass = prefix_matches_source
        && gap_margin_ok
        && threshold_derivation_ok
        && premise_alpha100_ok
        && premise_1e33_ok;

    Ok((
        LegendreStageRecord {
            x_bound: x_bound.to_string(),
            k_star: audit.k_star,
            a_max: audit.a_max.to_string(),
            a_max_inclusive: audit.a_max_inclusive.to_string(),
            q_kstar: audit.q_kstar.to_string(),
            prefix,
            source_prefix,
            prefix_matches_source,
            source_q54_exceeds_bound,
            gap_margin_ok,
            threshold_derivation_ok,
            premise_alpha100_ok,
            premise_1e33_ok,
            x_conclusion: 100,
            digits: cf.digits_used(),
        },
        pass,
    ))
}

fn run_final_grid(policy: &PrecisionPolicy) -> Result<(FinalGridRecord, bool)> {
    let scan = final_grid(policy)?;
    let digits = policy.initial_digits;

    // what the contradiction needs: min > 4 / alpha^38, so that a solution
    // would force n below 38
    let threshold =
        HPReal::from_int(4, digits).div(&constant(Constant::Alpha, digits)?.pow_int(38)?)?;
    let min_exceeds_solution_threshold =
        compare(&scan.min_cell.value, &threshold) == Ordering3::Greater;

    // implied cap: n <= log(4 / min) / log alpha
    let ratio = HPReal::from_int(4, digits).div(&scan.min_cell.value)?;
    let implied = ratio.ln()?.div(&constant(Constant::LogAlpha, digits)?)?;
    let implied_n_cap = implied
        .floor_upper()
        .to_u64()
        .ok_or_else(|| Error::OracleFailure("implied n cap overflows".to_string()))?;

    // The stage verdict is the proof-closing condition: no zero cell, the
    // minimum clears the solution threshold, and the implied n cap stays
    // below 38. The published > 1/10 claim is recorded separately; the
    // certified minimum (~1.27e-4 at x = 60, t = 58, where t/(x-1) is the
    // convergent 58/59 of log(4 sqrt 2)/log alpha) falls short of it, and
    // the certificate flags that discrepancy rather than failing the proof.
    let pass = scan.none_contain_zero && min_exceeds_solution_threshold && implied_n_cap < 38;

    Ok((
        FinalGridRecord {
            x_lo: 3,
            x_hi: 100,
            cells_per_variant: scan.cells_per_variant,
            cells_total: scan.cells_total,
            min_cell: GridCellRecord {
                x: scan.min_cell.x,
                t: scan.min_cell.t,
                sign_variant: scan.min_cell.sign_variant.label().to_string(),
                value: NumberRecord::from(&scan.min_cell.value),
            },
            all_above_tenth: scan.all_pass,
            none_contain_zero: scan.none_contain_zero,
            min_exceeds_solution_threshold,
            implied_n_cap,
            published_min_claim: "0.1".to_string(),
            published_claim_met: scan.all_pass,
        },
        pass,
    ))
}

fn run_degenerate_families(offset: u8) -> Result<(DegenerateFamiliesRecord, bool)> {
    // (0, n, 0): B_{n+1}^0 - B_n^0 = 0 = B_0
    let x0_checked_n_max = 50u64;
    for n in 1..=x0_checked_n_max {
        if power_difference(n, 0) != BigUint::zero() {
            return Err(Error::OracleFailure(format!("(0, {n}, 0) family failed")));
        }
    }
    // (1, 0, x): B_1^x - B_0^x = 1 = B_1 for x >= 1
    let n0_checked_x_max = 50u32;
    for x in 1..=n0_checked_x_max {
        let v = balancing(1).value.pow(x) - balancing(0).value.pow(x);
        if v != balancing(1).value {
            return Err(Error::OracleFailure(format!("(1, 0, {x}) family failed")));
        }
    }
    // quadratic family with the audited offset, exact for n <= 200
    let quadratic_checked_n_max = 200u64;
    for n in 1..=quadratic_checked_n_max {
        if power_difference(n, 2) != balancing(2 * n + u64::from(offset)).value {
            return Err(Error::OracleFailure(format!(
                "quadratic family failed at n = {n}"
            )));
        }
    }
    Ok((
        DegenerateFamiliesRecord {
            x0_checked_n_max,
            n0_checked_x_max,
            quadratic_checked_n_max,
            quadratic_offset: offset,
        },
        true,
    ))
}

/// Run the whole pipeline and assemble the certificate. Stage errors are
/// recorded in place; the certificate is emitted either way.
pub fn prove(config: &ProveConfig) -> Result<ProofCertificate> {
    config.validate()?;
    let policy = config.policy()?;

    let sequence_sanity = StageOutcome::from_result(run_sequence_sanity(&policy));
    let erratum_audit = StageOutcome::from_result(run_erratum_audit(200));
    let offset = erratum_audit.record.as_ref().map(|r| r.offset).unwrap_or(1);
    let n1_case = StageOutcome::from_result(run_n1_case(config.m_cap_n1));

    let (reduction, caps) = match run_reductions(config, &policy) {
        Ok((record, pass, caps)) => (
            StageOutcome {
                pass,
                error: None,
                record: Some(record),
            },
            Some(caps),
        ),
        Err(e) => (
            StageOutcome {
                pass: false,
                error: Some(e.to_string()),
                record: None,
            },
            None,
        ),
    };

    let small_search = StageOutcome::from_result(run_small_search(config, caps.as_ref(), offset));
    let bound_chain_stage = StageOutcome::from_result(run_bound_chain(&policy));
    let x_bound = BigUint::from(7u32) * BigUint::from(10u32).pow(28);
    let legendre = StageOutcome::from_result(run_legendre_stage(&x_bound, &policy));
    let final_grid_stage = StageOutcome::from_result(run_final_grid(&policy));
    let degenerate_families = StageOutcome::from_result(run_degenerate_families(offset));

    let stages = Stages {
        sequence_sanity,
        erratum_audit,
        n1_case,
        reduction,
        small_search,
        bound_chain: bound_chain_stage,
        legendre,
        final_grid: final_grid_stage,
        degenerate_families,
    };
    let overall_pass = stages.all_pass();
    Ok(ProofCertificate {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        config: config.clone(),
        stages,
        overall_pass,
    })
}
