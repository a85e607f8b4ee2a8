use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use jordanlp::check::{coords_pairs, pairs_to_coords};
use jordanlp::expect::{lp_contractivity_check, uniqueness_residual, verify_expectation};
use jordanlp::harness::{
    generate_element, run_campaign, with_thread_cap, AlgebraSpec, CampaignConfig, Distribution, StateSpec, SubalgebraSpec,
    EXIT_CONFIG, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATIONS, SCHEMA_VERSION,
};
use jordanlp::interp::{bracket, CoupleSpec, InterpBudget};
use jordanlp::jordan::StateFunctional;
use jordanlp::lp::lp_norm;
use jordanlp::{Error, JordanElement, Result};

#[derive(Parser)]
#[command(
    name = "jordanlp",
    version,
    about = "Lp-norms, conditional expectations and interpolation brackets on finite-dimensional Jordan algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Ball,
    Selfadjoint,
    Positive,
    Idempotent,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Ball => Distribution::Ball,
            DistArg::Selfadjoint => Distribution::Selfadjoint,
            DistArg::Positive => Distribution::Positive,
            DistArg::Idempotent => Distribution::Idempotent,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign and write the JSON report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bracket the interpolation norm of one element.
    InterpNorm {
        /// e.g. `matrix:2`, `spin:3:represented`
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        theta: f64,
        /// A sample seed, or a JSON file with `[re, im]` coordinate pairs.
        #[arg(long)]
        element: String,
        /// `trace`, `ambient_diag:<values>`, `density:<coords>` or JSON.
        #[arg(long, default_value = "trace")]
        state: String,
        /// JSON file overriding the escalation budget.
        #[arg(long)]
        budget: Option<PathBuf>,
    },
    /// Build and verify a conditional expectation onto a subalgebra.
    Expect {
        #[arg(long)]
        algebra: String,
        /// `scalar`, `diagonal`, `spin_span:<k>`, `transpose` or JSON.
        #[arg(long)]
        sub: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit seeded sample elements.
    Gen {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "ball")]
        distribution: DistArg,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
}

fn config_error(e: impl std::fmt::Display) -> Error {
    Error::Config(e.to_string())
}

fn read_element(alg: &jordanlp::JordanAlgebra, source: &str) -> Result<JordanElement> {
    if let Ok(seed) = source.parse::<u64>() {
        return generate_element(alg, Distribution::Ball, seed, 0);
    }
    let text = std::fs::read_to_string(source).map_err(|e| config_error(format!("{source}: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(config_error)?;
    let coords = value.get("coords").unwrap_or(&value);
    let pairs: Vec<[f64; 2]> = serde_json::from_value(coords.clone()).map_err(config_error)?;
    alg.element(pairs_to_coords(&pairs)).map_err(config_error)
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn verify(config: &PathBuf, out: &PathBuf) -> Result<i32> {
    let text = std::fs::read_to_string(config).map_err(|e| config_error(format!("{}: {e}", config.display())))?;
    let cfg = CampaignConfig::from_json(&text)?;
    let report = run_campaign(&cfg)?;
    std::fs::write(out, report.to_json())?;
    let c = &report.counts;
    eprintln!(
        "{} entries: {} pass, {} fail, {} inconclusive, {} unsupported, {} finding ({:.2}s)",
        report.entries.len(),
        c.pass,
        c.fail,
        c.inconclusive,
        c.unsupported,
        c.finding,
        report.runtime_seconds
    );
    Ok(report.exit_code)
}

fn interp_norm(algebra: &str, theta: f64, element: &str, state: &str, budget: Option<&PathBuf>) -> Result<i32> {
    let alg = AlgebraSpec::parse(algebra)?.build().map_err(config_error)?;
    let phi = StateSpec::parse(state)?.build(&alg).map_err(config_error)?;
    let x = read_element(&alg, element)?;
    let spec = CoupleSpec::new(&phi, theta).map_err(config_error)?;
    let budget = match budget {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<InterpBudget>(&text).map_err(config_error)?
        }
        None => InterpBudget::default(),
    };
    let b = with_thread_cap(|| bracket(&x, &spec, &budget))??;
    let l2 = if (theta - 0.5).abs() < 1e-15 { Some(lp_norm(&x, &phi, 2.0)?.value) } else { None };
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "algebra": alg.to_string(),
        "state": state,
        "theta": theta,
        "element": coords_pairs(&x),
        "bracket": b,
        "ratio": b.ratio(),
        "l2_norm": l2,
    }));
    Ok(if b.target_met { EXIT_PASS } else { EXIT_INCONCLUSIVE })
}

fn expect(algebra: &str, sub: &str, samples: usize, seed: u64) -> Result<i32> {
    let alg = AlgebraSpec::parse(algebra)?.build().map_err(config_error)?;
    let q = SubalgebraSpec::parse(sub)?.build(&alg).map_err(config_error)?;
    let tau = StateFunctional::canonical_trace(&alg)?;
    let (report, uniqueness, contractivity) = with_thread_cap(|| -> Result<_> {
        let report = verify_expectation(&q, samples, seed)?;
        let uniqueness = uniqueness_residual(&q, seed)?;
        let contractivity =
            [1.0, 2.0, 3.0].iter().map(|&p| lp_contractivity_check(&q, &tau, p, samples, seed)).collect::<Result<Vec<_>>>()?;
        Ok((report, uniqueness, contractivity))
    })??;
    let passed = report.passed() && uniqueness <= 1e-9 && contractivity.iter().all(|c| c.passed());
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "algebra": alg.to_string(),
        "operator": q.name(),
        "digest": q.digest(),
        "subalgebra_dim": q.sub_basis().len(),
        "checks": report.checks,
        "uniqueness": uniqueness,
        "contractivity": contractivity,
        "passed": passed,
    }));
    Ok(if passed { EXIT_PASS } else { EXIT_VIOLATIONS })
}

fn gen(algebra: &str, seed: u64, dist: Distribution, count: u64) -> Result<i32> {
    let alg = AlgebraSpec::parse(algebra)?.build().map_err(config_error)?;
    let elements =
        (0..count).map(|i| generate_element(&alg, dist, seed, i).map(|x| coords_pairs(&x))).collect::<Result<Vec<_>>>()?;
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "algebra": alg.to_string(),
        "distribution": dist,
        "seed": seed,
        "elements": elements,
    }));
    Ok(EXIT_PASS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { config, out } => verify(config, out),
        Command::InterpNorm { algebra, theta, element, state, budget } => {
            interp_norm(algebra, *theta, element, state, budget.as_ref())
        }
        Command::Expect { algebra, sub, samples, seed } => expect(algebra, sub, *samples, *seed),
        Command::Gen { algebra, seed, distribution, count } => gen(algebra, *seed, (*distribution).into(), *count),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
