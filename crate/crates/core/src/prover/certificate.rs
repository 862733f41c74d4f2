//! The proof certificate: a structured, deterministic record of every
//! stage's inputs, certified bounds and verdicts. All numbers are decimal
//! strings with explicit precision fields; nothing is serialized as a
//! binary float.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use super::config::ProveConfig;
use crate::error::{Error, Result};
use crate::numerics::HPReal;

pub const SCHEMA_VERSION: u32 = 1;

/// An error-tracked number: midpoint, error radius and working precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberRecord {
    pub value: String,
    pub err: String,
    pub digits: u32,
}

impl From<&HPReal> for NumberRecord {
    fn from(v: &HPReal) -> Self {
        NumberRecord {
            value: v.to_decimal_string(),
            err: v.err_string(),
            digits: v.digits(),
        }
    }
}

impl NumberRecord {
    /// Parse back into exact rational (midpoint, radius).
    pub fn to_rationals(&self) -> Result<(BigRational, BigRational)> {
        let value = parse_decimal(&self.value)?;
        let err = parse_err(&self.err)?;
        Ok((value, err))
    }

    /// Does this stored ball overlap the given freshly computed ball?
    /// Used by re-verification: both contain the true value, so they must
    /// intersect.
    pub fn consistent_with(&self, fresh: &HPReal) -> bool {
        match self.to_rationals() {
            Ok((v, e)) => {
                let (lo, hi) = fresh.bounds();
                &v + &e >= lo && v - e <= hi
            }
            Err(_) => false,
        }
    }
}

pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let joined = format!("{int_part}{frac_part}");
    let n = BigInt::from_str_radix(&joined, 10)
        .map_err(|_| Error::Config(format!("bad decimal: {s}")))?;
    Ok(BigRational::new(
        n,
        BigInt::from(10u32).pow(frac_part.len() as u32),
    ))
}

fn parse_err(s: &str) -> Result<BigRational> {
    let (m, e) = s
        .split_once("e-")
        .ok_or_else(|| Error::Config(format!("bad error radius: {s}")))?;
    let m = BigInt::from_str_radix(m, 10)
        .map_err(|_| Error::Config(format!("bad error radius: {s}")))?;
    let e: u32 = e
        .parse()
        .map_err(|_| Error::Config(format!("bad error radius: {s}")))?;
    Ok(BigRational::new(m, BigInt::from(10u32).pow(e)))
}

/// Wrapper recording either a stage's result or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome<T> {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record: Option<T>,
}

impl<T> StageOutcome<T> {
    pub fn from_result(r: Result<(T, bool)>) -> Self {
        match r {
            Ok((record, pass)) => StageOutcome {
                pass,
                error: None,
                record: Some(record),
            },
            Err(e) => StageOutcome {
                pass: false,
                error: Some(e.to_string()),
                record: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSanityRecord {
    pub binet_max_n: u64,
    pub growth_max_n: u64,
    /// The source states alpha^(n-2) <= B_n <= alpha^(n-1); the upper half
    /// is false from n = 2 on (B_2 = 6 > alpha). Recorded, not enforced.
    pub source_growth_bound_holds: bool,
    pub source_growth_first_failure: Option<u64>,
    /// The corrected two-sided bound alpha^(n-1) <= B_n < alpha^n,
    /// certified for every n in range; this is what the verdict uses.
    pub corrected_growth_bound_holds: bool,
    pub ratio_max_n: u64,
    pub pell_max_n: u64,
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErratumAuditRecord {
    pub n_max: u64,
    /// Offset c with B_{n+1}^2 - B_n^2 = B_{2n+c} found by exact arithmetic.
    pub offset: u8,
    /// The source states c = 2; the exact computation is authoritative.
    pub source_offset: u8,
    pub matches_source: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct N1Solution {
    pub m: u64,
    pub x: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct N1CaseRecord {
    pub m_cap: u64,
    pub solutions: Vec<N1Solution>,
    pub three_smooth_indices: Vec<u64>,
    pub three_smooth_scan_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRow {
    pub n: u64,
    pub q: String,
    pub epsilon: NumberRecord,
    pub k_bound: String,
    pub x_cap: String,
    pub convergent_index: usize,
    pub attempts: usize,
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStageRecord {
    pub m_cap: String,
    pub b_base: String,
    pub cf_budget: usize,
    pub rows: Vec<ReductionRow>,
    pub max_x_cap: String,
    pub global_x_cap: u64,
    pub all_caps_within_global: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub m: u64,
    pub n: u64,
    pub x: u32,
    /// m sits inside the open interval ((n-2)x + 1, nx + 2).
    pub m_in_range: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSearchRecord {
    pub n_lo: u64,
    pub n_hi: u64,
    pub x_lo: u32,
    pub x_hi: u64,
    pub used_per_n_caps: bool,
    pub cells: u64,
    /// Hits of the known quadratic family (x = 2, m = 2n + offset).
    pub family_solutions: Vec<SolutionRecord>,
    /// Hits outside the known families; must be empty.
    pub unexpected_solutions: Vec<SolutionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub name: String,
    pub lhs: NumberRecord,
    pub rhs: NumberRecord,
    pub holds: bool,
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub name: String,
    pub computed: NumberRecord,
    pub published: String,
    pub within_published: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChainStageRecord {
    pub n_min: u64,
    pub links: Vec<LinkRecord>,
    pub coefficients: Vec<CoefficientRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendreStageRecord {
    pub x_bound: String,
    pub k_star: usize,
    pub a_max: String,
    /// Maximum through k_star inclusive; the convergent gap bound for
    /// p_k/q_k involves a_{k+1}, so this is the value the margin check uses.
    pub a_max_inclusive: String,
    pub q_kstar: String,
    pub prefix: Vec<String>,
    pub source_prefix: Vec<String>,
    pub prefix_matches_source: bool,
    /// q_54 > 7e28 as published (our k_star is the least such index).
    pub source_q54_exceeds_bound: bool,
    /// a_max_inclusive + 2 < 2200.
    pub gap_margin_ok: bool,
    /// 10^4 log(alpha) / 8 * (101/100) > 2200.
    pub threshold_derivation_ok: bool,
    /// alpha^100 > 10^33.
    pub premise_alpha100_ok: bool,
    /// 10^33 > 10^4 * x for every x below the absolute cap.
    pub premise_1e33_ok: bool,
    pub x_conclusion: u64,
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCellRecord {
    pub x: u64,
    pub t: u64,
    pub sign_variant: String,
    pub value: NumberRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalGridRecord {
    pub x_lo: u64,
    pub x_hi: u64,
    pub cells_per_variant: u64,
    pub cells_total: u64,
    pub min_cell: GridCellRecord,
    /// Every cell certified above 1/10 (the published claim).
    pub all_above_tenth: bool,
    pub none_contain_zero: bool,
    /// Minimum certified above 4 / alpha^38, which is what the
    /// contradiction actually needs.
    pub min_exceeds_solution_threshold: bool,
    /// Largest n a solution could still have given the certified minimum;
    /// the stage passes when this stays below 38.
    pub implied_n_cap: u64,
    pub published_min_claim: String,
    pub published_claim_met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateFamiliesRecord {
    /// (m, n, x) = (0, n, 0) checked for n up to this cap.
    pub x0_checked_n_max: u64,
    /// (m, n, x) = (1, 0, x) checked for x up to this cap.
    pub n0_checked_x_max: u32,
    /// (2n + offset, n, 2) checked for n up to this cap.
    pub quadratic_checked_n_max: u64,
    pub quadratic_offset: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stages {
    pub sequence_sanity: StageOutcome<SequenceSanityRecord>,
    pub erratum_audit: StageOutcome<ErratumAuditRecord>,
    pub n1_case: StageOutcome<N1CaseRecord>,
    pub reduction: StageOutcome<ReductionStageRecord>,
    pub small_search: StageOutcome<SmallSearchRecord>,
    pub bound_chain: StageOutcome<BoundChainStageRecord>,
    pub legendre: StageOutcome<LegendreStageRecord>,
    pub final_grid: StageOutcome<FinalGridRecord>,
    pub degenerate_families: StageOutcome<DegenerateFamiliesRecord>,
}

impl Stages {
    pub fn all_pass(&self) -> bool {
        self.sequence_sanity.pass
            && self.erratum_audit.pass
            && self.n1_case.pass
            && self.reduction.pass
            && self.small_search.pass
            && self.bound_chain.pass
            && self.legendre.pass
            && self.final_grid.pass
            && self.degenerate_families.pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: ProveConfig,
    pub stages: Stages,
    pub overall_pass: bool,
}

impl ProofCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cert: ProofCertificate = serde_json::from_str(s)?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported certificate schema version {}",
                cert.schema_version
            )));
        }
        Ok(cert)
    }
}

pub fn parse_biguint(s: &str) -> Result<BigUint> {
    BigUint::from_str_radix(s, 10).map_err(|_| Error::Config(format!("bad integer: {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn number_record_round_trips() {
        let v = HPReal::from_decimal_str("5.8", 60).unwrap();
        let rec = NumberRecord::from(&v);
        assert_eq!(rec.digits, 60);
        let (mid, err) = rec.to_rationals().unwrap();
        assert_eq!(mid, BigRational::new(BigInt::from(29), BigInt::from(5)));
        assert_eq!(err, BigRational::new(BigInt::from(0), BigInt::from(1)));
        assert!(rec.consistent_with(&v));
    }

    #[test]
    fn stage_outcome_captures_errors() {
        let out: StageOutcome<N1CaseRecord> =
            StageOutcome::from_result(Err(Error::Usage("boom".to_string())));
        assert!(!out.pass);
        assert!(out.error.as_deref().unwrap().contains("boom"));
        assert!(out.record.is_none());
    }

    #[test]
    fn parse_decimal_handles_signs_and_integers() {
        assert_eq!(
            parse_decimal("-0.25").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(4))
        );
        assert_eq!(
            parse_decimal("42").unwrap(),
            BigRational::from_integer(BigInt::from(42))
        );
        assert!(parse_decimal("4x").is_err());
    }
}
