//! Re-verification: check a stored certificate's non-search claims from the
//! stored values. Searches are validated through their recorded ranges and
//! cell counts; every certified inequality and every reduction row is
//! re-derived.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::certificate::*;
use super::stages::SOURCE_GAMMA_PREFIX;
use crate::bounds::{attempt_at, balancing_instance, bound_chain};
use crate::contfrac::{convergents, expand, legendre_audit};
use crate::error::{Error, Result};
use crate::numerics::{compare, constant, Constant, HPReal, Ordering3, PrecisionPolicy};
use crate::sequences::{balancing, power_difference, square_difference_oracle};

/// Result of re-checking one stage.
#[derive(Debug, Clone)]
pub struct StageCheck {
    pub stage: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Full re-verification report.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<StageCheck>,
    pub ok: bool,
}

fn check(stage: &'static str, r: Result<()>) -> StageCheck {
    match r {
        Ok(()) => StageCheck {
            stage,
            ok: true,
            detail: "ok".to_string(),
        },
        Err(e) => StageCheck {
            stage,
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::OracleFailure(msg.into())
}

fn verify_sequence_sanity(cert: &ProofCertificate, policy: &PrecisionPolicy) -> Result<()> {
    let rec = cert
        .stages
        .sequence_sanity
        .record
        .as_ref()
        .ok_or_else(|| fail("missing sequence sanity record"))?;
    let (fresh, _) = super::stages::run_sequence_sanity(policy)?;
    if fresh.source_growth_bound_holds != rec.source_growth_bound_holds
        || fresh.source_growth_first_failure != rec.source_growth_first_failure
        || !rec.corrected_growth_bound_holds
    {
        return Err(fail("sequence sanity does not reproduce"));
    }
    Ok(())
}

fn verify_erratum(cert: &ProofCertificate) -> Result<()> {
    let rec = cert
        .stages
        .erratum_audit
        .record
        .as_ref()
        .ok_or_else(|| fail("missing erratum record"))?;
    let fresh = square_difference_oracle(rec.n_max)?;
    if fresh != rec.offset {
        return Err(fail(format!(
            "stored offset {} but recomputed {fresh}",
            rec.offset
        )));
    }
    Ok(())
}

fn verify_n1(cert: &ProofCertificate) -> Result<()> {
    let rec = cert
        .stages
        .n1_case
        .record
        .as_ref()
        .ok_or_else(|| fail("missing n1 record"))?;
    let (solutions, smooth) = super::stages::case_n1(rec.m_cap)?;
    let stored: Vec<(u64, u32)> = rec.solutions.iter().map(|s| (s.m, s.x)).collect();
    if stored != solutions || rec.three_smooth_indices != smooth {
        return Err(fail("n = 1 stage does not reproduce"));
    }
    Ok(())
}

fn verify_reduction(cert: &ProofCertificate) -> Result<()> {
    let rec = cert
        .stages
        .reduction
        .record
        .as_ref()
        .ok_or_else(|| fail("missing reduction record"))?;
    let m_cap = parse_biguint(&rec.m_cap)?;
    let six_m = &m_cap * 6u32;
    for row in &rec.rows {
        let q = parse_biguint(&row.q)?;
        if q <= six_m {
            return Err(fail(format!("row n = {}: q <= 6M", row.n)));
        }
        // q must be a certified convergent denominator of gamma_n
        let inst = balancing_instance(row.n, m_cap.clone());
        let gamma = (inst.gamma)(row.digits)?;
        let cf = crate::contfrac::expand_value(&gamma, 100_000)?;
        let conv = convergents(&cf)
            .into_iter()
            .find(|c| c.q == q)
            .ok_or_else(|| fail(format!("row n = {}: q is not a convergent", row.n)))?;
        if conv.k != row.convergent_index {
            return Err(fail(format!(
                "row n = {}: convergent index mismatch",
                row.n
            )));
        }
        // recompute epsilon and the k-bound from the stored q
        let eps = attempt_at(&inst, row.digits, &conv)?
            .ok_or_else(|| fail(format!("row n = {}: epsilon no longer positive", row.n)))?;
        if !row.epsilon.consistent_with(&eps) {
            return Err(fail(format!("row n = {}: epsilon mismatch", row.n)));
        }
        let a = (inst.a_coef)(row.digits)?;
        let qb = HPReal::from_biguint(&q, row.digits);
        let b = HPReal::from_rational(inst.b_base.numer(), inst.b_base.denom(), row.digits)?;
        let v = a.mul(&qb).div(&eps)?.ln()?.div(&b.ln()?)?;
        let k_bound = v
            .ceil_upper()
            .to_biguint()
            .ok_or_else(|| fail("negative k bound"))?;
        if k_bound.to_string() != row.k_bound {
            return Err(fail(format!("row n = {}: k bound mismatch", row.n)));
        }
        let x_cap = parse_biguint(&row.x_cap)?;
        if x_cap + 1u32 != k_bound {
            return Err(fail(format!("row n = {}: x cap mismatch", row.n)));
        }
    }
    if rec.all_caps_within_global {
        let global = BigUint::from(rec.global_x_cap);
        for row in &rec.rows {
            if parse_biguint(&row.x_cap)? > global {
                return Err(fail(format!(
                    "row n = {}: cap above the global bound",
                    row.n
                )));
            }
        }
    }
    Ok(())
}

fn verify_small_search(cert: &ProofCertificate) -> Result<()> {
    let rec = cert
        .stages
        .small_search
        .record
        .as_ref()
        .ok_or_else(|| fail("missing search record"))?;
    // search results are not recomputed; check the recorded ranges, the
    // cell count and each listed solution exactly
    if rec.used_per_n_caps {
        let red = cert
            .stages
            .reduction
            .record
            .as_ref()
            .ok_or_else(|| fail("per-n caps used without a reduction record"))?;
        let mut cells = 0u64;
        for row in &red.rows {
            let cap = parse_biguint(&row.x_cap)?
                .to_u64()
                .unwrap_or(rec.x_hi)
                .min(rec.x_hi);
            if cap >= u64::from(rec.x_lo) {
                cells += cap - u64::from(rec.x_lo) + 1;
            }
        }
        if cells != rec.cells {
            return Err(fail(format!(
                "cell count {} does not match the configured range ({} expected)",
                rec.cells, cells
            )));
        }
    } else {
        let per_n = rec.x_hi - u64::from(rec.x_lo) + 1;
        let cells = (rec.n_hi - rec.n_lo + 1) * per_n;
        if cells != rec.cells {
            return Err(fail("cell count does not match the configured range"));
        }
    }
    for s in rec.family_solutions.iter().chain(&rec.unexpected_solutions) {
        if power_difference(s.n, s.x) != balancing(s.m).value {
            return Err(fail(format!(
                "listed solution ({}, {}, {}) does not satisfy the equation",
                s.m, s.n, s.x
            )));
        }
    }
    Ok(())
}

fn verify_bound_chain(cert: &ProofCertificate, policy: &PrecisionPolicy) -> Result<()> {
    let rec = cert
        .stages
        .bound_chain
        .record
        .as_ref()
        .ok_or_else(|| fail("missing chain record"))?;
    let fresh = bound_chain(rec.n_min, policy)?;
    if !fresh.all_links_hold() {
        return Err(fail("chain no longer certifies"));
    }
    let fresh_names: Vec<&str> = fresh.links.iter().map(|l| l.name).collect();
    let stored_names: Vec<&str> = rec.links.iter().map(|l| l.name.as_str()).collect();
    if fresh_names != stored_names {
        return Err(fail("chain link set changed"));
    }
    for (stored, fresh) in rec.links.iter().zip(fresh.links.iter()) {
        if !stored.holds || !stored.lhs.consistent_with(&fresh.lhs) {
            return Err(fail(format!("link {} mismatch", stored.name)));
        }
    }
    Ok(())
}

fn verify_legendre(cert: &ProofCertificate, policy: &PrecisionPolicy) -> Result<()> {
    let rec = cert
        .stages
        .legendre
        .record
        .as_ref()
        .ok_or_else(|| fail("missing legendre record"))?;
    let x_bound = parse_biguint(&rec.x_bound)?;
    let cf = expand(policy, rec.k_star + 2, |d| {
        constant(Constant::Log4Sqrt2, d)?.div(&constant(Constant::LogAlpha, d)?)
    })?;
    let audit = legendre_audit(&cf, &x_bound)?;
    if audit.k_star != rec.k_star
        || audit.a_max.to_string() != rec.a_max
        || audit.a_max_inclusive.to_string() != rec.a_max_inclusive
        || audit.q_kstar.to_string() != rec.q_kstar
    {
        return Err(fail("legendre audit does not reproduce"));
    }
    let source: Vec<String> = SOURCE_GAMMA_PREFIX.iter().map(|a| a.to_string()).collect();
    if rec.prefix_matches_source != (rec.prefix == source) {
        return Err(fail("prefix flag inconsistent"));
    }
    if !(rec.gap_margin_ok && parse_biguint(&rec.a_max_inclusive)? + 2u32 < BigUint::from(2200u32))
    {
        return Err(fail("gap margin check fails"));
    }
    Ok(())
}

fn verify_final_grid(cert: &ProofCertificate) -> Result<()> {
    let rec = cert
        .stages
        .final_grid
        .record
        .as_ref()
        .ok_or_else(|| fail("missing grid record"))?;
    // cell count from the configured range
    let mut cells = 0u64;
    for x in rec.x_lo..=rec.x_hi {
        let (lo, hi) = crate::bounds::t_range(x)?;
        cells += hi - lo + 1;
    }
    if cells != rec.cells_per_variant || rec.cells_total != 2 * cells {
        return Err(fail("grid cell count does not match the configured range"));
    }
    // re-evaluate the minimum cell from its coordinates
    let d = rec.min_cell.value.digits;
    let variant = match rec.min_cell.sign_variant.as_str() {
        "minus" => super::stages::SignVariant::Minus,
        "plus" => super::stages::SignVariant::Plus,
        other => return Err(fail(format!("unknown sign variant {other}"))),
    };
    let value = super::stages::grid_cell_value(rec.min_cell.x, rec.min_cell.t, variant, d)?;
    if !rec.min_cell.value.consistent_with(&value) {
        return Err(fail("stored minimum cell does not re-evaluate"));
    }
    // threshold claims
    let alpha = constant(Constant::Alpha, d)?;
    let threshold = HPReal::from_int(4, d).div(&alpha.pow_int(38)?)?;
    if rec.min_exceeds_solution_threshold && compare(&value, &threshold) != Ordering3::Greater {
        return Err(fail("solution threshold claim fails on re-evaluation"));
    }
    Ok(())
}

fn verify_degenerate(cert: &ProofCertificate) -> Result<()> {
    let rec = cert
        .stages
        .degenerate_families
        .record
        .as_ref()
        .ok_or_else(|| fail("missing degenerate families record"))?;
    for n in 1..=rec.quadratic_checked_n_max {
        if power_difference(n, 2) != balancing(2 * n + u64::from(rec.quadratic_offset)).value {
            return Err(fail(format!("quadratic family fails at n = {n}")));
        }
    }
    Ok(())
}

/// Re-check a certificate. Search stages are validated structurally; all
/// other claims are re-derived from the stored values.
pub fn verify_certificate(cert: &ProofCertificate) -> Result<VerifyReport> {
    if cert.schema_version != SCHEMA_VERSION {
        return Err(Error::Config(format!(
            "unsupported schema version {}",
            cert.schema_version
        )));
    }
    cert.config.validate()?;
    let policy = cert.config.policy()?;

    let mut checks = vec![
        check("sequence_sanity", verify_sequence_sanity(cert, &policy)),
        check("erratum_audit", verify_erratum(cert)),
        check("n1_case", verify_n1(cert)),
        check("reduction", verify_reduction(cert)),
        check("small_search", verify_small_search(cert)),
        check("bound_chain", verify_bound_chain(cert, &policy)),
        check("legendre", verify_legendre(cert, &policy)),
        check("final_grid", verify_final_grid(cert)),
        check("degenerate_families", verify_degenerate(cert)),
    ];
    let stages_consistent = cert.overall_pass == cert.stages.all_pass();
    checks.push(check(
        "verdict_consistency",
        if stages_consistent {
            Ok(())
        } else {
            Err(fail("overall verdict does not match the stage verdicts"))
        },
    ));
    let ok = checks.iter().all(|c| c.ok);
    Ok(VerifyReport { checks, ok })
}
