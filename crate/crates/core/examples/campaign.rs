//! Runs a small verification campaign in-process and prints the report summary.

use jordanlp::harness::{run_campaign, AlgebraSpec, CampaignConfig, Status, Suite};
use jordanlp::Result;

fn main() -> Result<()> {
    let algebra = AlgebraSpec::parse(&std::env::args().nth(1).unwrap_or_else(|| "spin:3:represented".into()))?;
    let mut cfg = CampaignConfig::new(algebra, vec![Suite::Axioms, Suite::Lp, Suite::Holder, Suite::Embedding]);
    cfg.samples.checks = 100;
    cfg.seed = 42;
    let report = run_campaign(&cfg)?;
    for e in &report.entries {
        let mark = match e.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "open",
            Status::Unsupported => "n/a ",
            Status::Finding => "note",
        };
        let worst = e.max_violation.map_or("-".to_string(), |v| format!("{v:.2e}"));
        println!("{mark} {:<10} {:<36} {worst}", format!("{:?}", e.suite), e.name);
    }
    println!("exit code {} ({:.2}s)", report.exit_code, report.runtime_seconds);
    Ok(())
}
