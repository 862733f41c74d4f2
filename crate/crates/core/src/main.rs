use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use std::path::PathBuf;
use std::process::ExitCode;

use balancing_prover::bounds::{baker_davenport_reduce, balancing_instance};
use balancing_prover::contfrac::{expand, legendre_audit};
use balancing_prover::numerics::{constant, Constant, PrecisionPolicy};
use balancing_prover::prover::{
    self, parse_sci_biguint, ProofCertificate, ProveConfig, SearchRange,
};
use balancing_prover::sequences::{balancing, lucas_balancing};
use balancing_prover::Result;

#[derive(Parser)]
#[command(
    name = "balancing-prover",
    about = "Certified search and bounds for B_{n+1}^x - B_n^x = B_m over the balancing sequence",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum SequenceKind {
    B,
    C,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact sequence terms, one decimal value per line.
    Sequence {
        #[arg(long, value_enum)]
        kind: SequenceKind,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Run the convergent reduction for one n or the whole range.
    Reduce {
        /// Single index; mutually exclusive with --all.
        #[arg(long, conflicts_with = "all")]
        n: Option<u64>,
        #[arg(long)]
        all: bool,
        /// Multiplier cap, e.g. 4e16.
        #[arg(long = "M", default_value = "4e16")]
        m_cap: String,
        /// Decay base of the right-hand side.
        #[arg(long = "B", default_value = "5.8")]
        b_base: String,
        #[arg(long, default_value_t = 60)]
        cf_budget: usize,
    },
    /// Exhaustively test every (n, x) cell in a rectangle.
    Search {
        #[arg(long, default_value_t = 2)]
        n_lo: u64,
        #[arg(long, default_value_t = 37)]
        n_hi: u64,
        #[arg(long, default_value_t = 3)]
        x_lo: u32,
        #[arg(long, default_value_t = 77)]
        x_hi: u64,
    },
    /// Audit the continued fraction of log(4 sqrt 2)/log alpha.
    Legendre {
        /// Solution bound the convergent denominators must clear, e.g. 7e28.
        #[arg(long, default_value = "7e28")]
        x_cap: String,
    },
    /// Evaluate the final verification grid and print the minimum cell.
    FinalGrid,
    /// Run the whole pipeline and emit the proof certificate.
    Prove {
        /// Flat key = value config file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Certificate output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a stored certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

fn cmd_sequence(kind: SequenceKind, from: u64, to: u64) -> Result<ExitCode> {
    for n in from..=to {
        let term = match kind {
            SequenceKind::B => balancing(n),
            SequenceKind::C => lucas_balancing(n),
        };
        println!("{}", term.value);
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce_one(n: u64, m_cap: &BigUint, cf_budget: usize, policy: &PrecisionPolicy) -> Result<()> {
    let inst = balancing_instance(n, m_cap.clone());
    let out = baker_davenport_reduce(&inst, cf_budget, policy)?;
    println!(
        "n={n} q={} eps={} k_bound={} x_cap={} attempts={}",
        out.q_used,
        out.epsilon.to_f64_lossy(),
        out.k_bound,
        out.x_cap,
        out.attempts
    );
    Ok(())
}

fn cmd_reduce(
    n: Option<u64>,
    all: bool,
    m_cap: &str,
    b_base: &str,
    cf_budget: usize,
) -> Result<ExitCode> {
    if b_base != "5.8" {
        // the instance ties gamma, mu and A together; only the published
        // base is currently wired up
        eprintln!("note: only B = 5.8 is supported for the balancing instance");
    }
    let m_cap = parse_sci_biguint(m_cap)?;
    let policy = PrecisionPolicy::default();
    match (n, all) {
        (Some(n), false) => reduce_one(n, &m_cap, cf_budget, &policy)?,
        (None, true) => {
            for n in 2..=37 {
                reduce_one(n, &m_cap, cf_budget, &policy)?;
            }
        }
        _ => {
            eprintln!("specify exactly one of --n N or --all");
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(n_lo: u64, n_hi: u64, x_lo: u32, x_hi: u64) -> Result<ExitCode> {
    let range = SearchRange {
        n_lo,
        n_hi,
        x_lo,
        x_hi,
        per_n_x_cap: None,
    };
    let (hits, cells) = prover::small_n_search(&range)?;
    for h in &hits {
        println!("solution m={} n={} x={}", h.m, h.n, h.x);
    }
    println!("{} cells tested, {} solution(s) found", cells, hits.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_legendre(x_cap: &str) -> Result<ExitCode> {
    let bound = parse_sci_biguint(x_cap)?;
    let policy = PrecisionPolicy::default();
    let mut count = 70;
    let (cf, audit) = loop {
        let cf = expand(&policy, count, |d| {
            constant(Constant::Log4Sqrt2, d)?.div(&constant(Constant::LogAlpha, d)?)
        })?;
        match legendre_audit(&cf, &bound) {
            Ok(a) => break (cf, a),
            Err(balancing_prover::Error::InsufficientExpansion(_)) if count < 1000 => count += 50,
            Err(e) => return Err(e),
        }
    };
    let prefix: Vec<String> = cf.quotients()[..7.min(cf.len())]
        .iter()
        .map(|a| a.to_string())
        .collect();
    println!("prefix [{}]", prefix.join(", "));
    println!(
        "k_star={} a_max={} a_max_inclusive={} q_kstar={}",
        audit.k_star, audit.a_max, audit.a_max_inclusive, audit.q_kstar
    );
    println!(
        "gap margin: a_max_inclusive + 2 = {} < 2200: {}",
        &audit.a_max_inclusive + 2u32,
        &audit.a_max_inclusive + 2u32 < BigUint::from(2200u32)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_final_grid() -> Result<ExitCode> {
    let policy = PrecisionPolicy::default();
    let scan = prover::final_grid(&policy)?;
    println!(
        "{} cells per variant, {} total",
        scan.cells_per_variant, scan.cells_total
    );
    let c = &scan.min_cell;
    println!(
        "minimum at x={} t={} variant={:?}: {}",
        c.x,
        c.t,
        c.sign_variant,
        c.value.to_f64_lossy()
    );
    println!("all cells certified > 1/10: {}", scan.all_pass);
    println!("no cell interval contains zero: {}", scan.none_contain_zero);
    Ok(ExitCode::SUCCESS)
}

fn cmd_prove(config: Option<PathBuf>, out: Option<PathBuf>) -> Result<ExitCode> {
    let cfg = match config {
        Some(path) => ProveConfig::from_file(&path)?,
        None => ProveConfig::default(),
    };
    let cert = prover::prove(&cfg)?;
    let json = cert.to_json()?;
    match out {
        Some(path) => std::fs::write(path, &json)?,
        None => println!("{json}"),
    }
    eprintln!(
        "overall verdict: {}",
        if cert.overall_pass { "pass" } else { "fail" }
    );
    Ok(if cert.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_verify(cert_path: PathBuf) -> Result<ExitCode> {
    let text = std::fs::read_to_string(cert_path)?;
    let cert = ProofCertificate::from_json(&text)?;
    let report = prover::verify_certificate(&cert)?;
    for c in &report.checks {
        println!(
            "{}: {} ({})",
            c.stage,
            if c.ok { "ok" } else { "FAIL" },
            c.detail
        );
    }
    Ok(if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sequence { kind, from, to } => cmd_sequence(kind, from, to),
        Command::Reduce {
            n,
            all,
            m_cap,
            b_base,
            cf_budget,
        } => cmd_reduce(n, all, &m_cap, &b_base, cf_budget),
        Command::Search {
            n_lo,
            n_hi,
            x_lo,
            x_hi,
        } => cmd_search(n_lo, n_hi, x_lo, x_hi),
        Command::Legendre { x_cap } => cmd_legendre(&x_cap),
        Command::FinalGrid => cmd_final_grid(),
        Command::Prove { config, out } => cmd_prove(config, out),
        Command::Verify { cert } => cmd_verify(cert),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
