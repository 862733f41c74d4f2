//! End-to-end pipeline behavior: certificate emission on failure, the
//! verify round trip, tamper detection, and the CLI surface.

use balancing_prover::prover::{prove, verify_certificate, ProofCertificate, ProveConfig};

#[test]
fn restricted_precision_records_stage_failure_cleanly() {
    // 50 digits cannot certify the expansion out to q > 7e28 (the ball
    // width caps certified denominators near 1e24), so the Legendre stage
    // must fail and say so, while the certificate is still emitted with
    // every other stage populated.
    let config = ProveConfig {
        initial_digits: 50,
        max_digits: 50,
        n_lo: 2,
        n_hi: 3,
        ..ProveConfig::default()
    };
    let cert = prove(&config).unwrap();
    assert!(!cert.overall_pass);
    assert!(!cert.stages.legendre.pass);
    assert!(cert.stages.legendre.error.is_some() || cert.stages.legendre.record.is_some());
    // cheap exact stages are unaffected
    assert!(cert.stages.erratum_audit.pass);
    assert!(cert.stages.n1_case.pass);
    // and the reduction still succeeds for the small n kept in range
    assert!(cert.stages.reduction.pass);
    // the document round-trips
    let json = cert.to_json().unwrap();
    let back = ProofCertificate::from_json(&json).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn verify_accepts_a_fresh_certificate() {
    let cert = prove(&ProveConfig::default()).unwrap();
    let report = verify_certificate(&cert).unwrap();
    for c in &report.checks {
        assert!(
            c.ok,
            "stage {} failed re-verification: {}",
            c.stage, c.detail
        );
    }
    assert!(report.ok);
}

#[test]
fn verify_rejects_a_tampered_certificate() {
    let cert = prove(&ProveConfig::default()).unwrap();
    let json = cert.to_json().unwrap();

    // tamper with a reduction row's k bound
    let row_kb = &cert.stages.reduction.record.as_ref().unwrap().rows[0].k_bound;
    let needle = format!("\"k_bound\": \"{row_kb}\"");
    assert!(json.contains(&needle));
    let tampered = json.replacen(&needle, "\"k_bound\": \"999\"", 1);
    let bad = ProofCertificate::from_json(&tampered).unwrap();
    let report = verify_certificate(&bad).unwrap();
    assert!(!report.ok);
    let reduction_check = report
        .checks
        .iter()
        .find(|c| c.stage == "reduction")
        .unwrap();
    assert!(!reduction_check.ok);
}

#[test]
fn cli_prove_with_config_file() {
    let dir = std::env::temp_dir();
    let cfg_path = dir.join("balancing-prover-test-config.txt");
    let cert_path = dir.join("balancing-prover-test-cert.json");
    std::fs::write(
        &cfg_path,
        "# narrow run\ninitial_digits = 200\nmax_digits = 800\nM = 4e16\nn_lo = 2\nn_hi = 4\nx_cap_global = 77\nm_cap_n1 = 23\ncf_budget = 60\n",
    )
    .unwrap();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_balancing-prover"))
        .args(["prove", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&cert_path)
        .status()
        .unwrap();
    assert!(status.success());
    let cert = ProofCertificate::from_json(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert!(cert.overall_pass);
    assert_eq!(cert.config.n_hi, 4);
    assert_eq!(cert.config.max_digits, 800);
    assert_eq!(cert.stages.reduction.record.unwrap().rows.len(), 3);
}

#[test]
fn cli_search_reports_family_hits() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_balancing-prover"))
        .args([
            "search", "--n-lo", "2", "--n-hi", "3", "--x-lo", "2", "--x-hi", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("solution m=5 n=2 x=2"));
    assert!(text.contains("solution m=7 n=3 x=2"));
    assert!(text.contains("2 cells tested"));
}

#[test]
fn cli_sequence_prints_values_one_per_line() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_balancing-prover"))
        .args(["sequence", "--kind", "C", "--from", "0", "--to", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().collect::<Vec<_>>(),
        vec!["2", "6", "34", "198"]
    );
}

#[test]
fn cli_verify_round_trips_certificates() {
    let dir = std::env::temp_dir();
    let cert_path = dir.join("balancing-prover-verify-cert.json");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_balancing-prover"))
        .args(["prove", "--out"])
        .arg(&cert_path)
        .status()
        .unwrap();
    assert!(status.success());
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_balancing-prover"))
        .args(["verify", "--cert"])
        .arg(&cert_path)
        .status()
        .unwrap();
    assert!(status.success());
}
