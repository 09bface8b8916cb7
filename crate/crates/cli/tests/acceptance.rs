//! Runs every acceptance criterion at full size and prints one line each.

use std::process::ExitCode;
use std::time::Instant;

use rmtdiff_cli::verify::{run_criterion, Level, CRITERIA};

fn main() -> ExitCode {
    let only: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC-")).collect();
    let mut failed = 0;
    for id in CRITERIA.iter().filter(|id| only.is_empty() || only.iter().any(|o| o == *id)) {
        let start = Instant::now();
        let c = run_criterion(id, Level::Full);
        println!("{}", c.report_line());
        for d in &c.details {
            println!("    {d}");
        }
        println!("    ({:.1}s)", start.elapsed().as_secs_f64());
        if !c.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
