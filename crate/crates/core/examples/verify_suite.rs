//! End-to-end verification of one scenario, or of the whole default roster.
//!
//! ```text
//! cargo run --release --example verify_suite -- 7 4 4
//! cargo run --release --example verify_suite -- all
//! ```

use tighthilbert::cli::{Format, ReportDocument};
use tighthilbert::scenarios::{build_scenario, paper_suite, verify_scenario_with, SuiteConfig, VerifyOptions};

fn main() -> tighthilbert::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut doc = ReportDocument::new("verify");
    if args.first().map(String::as_str) == Some("all") {
        doc.reports = paper_suite(&SuiteConfig::default());
        for rep in &doc.reports {
            println!("{:40} {}", rep.title, rep.verdict());
        }
        let failed = doc.reports.iter().filter(|r| !r.passed()).count();
        println!("{} reports, {failed} failed", doc.reports.len());
    } else {
        let nums: Vec<u32> = args.iter().filter_map(|a| a.parse().ok()).collect();
        let (p, r, v) = match nums[..] {
            [p, r, v] => (p, r, v as usize),
            _ => (7, 4, 4),
        };
        let s = build_scenario(p, r, v)?;
        doc.reports.push(verify_scenario_with(&s, &VerifyOptions::default()));
        print!("{}", doc.render(Format::Table)?);
    }
    std::process::exit(doc.exit_code());
}
