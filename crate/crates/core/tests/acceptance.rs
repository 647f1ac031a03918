//! Runs every acceptance criterion at full size, one PASS/FAIL line each.

use std::process::ExitCode;

use pgdir::verify::{run_criterion, Level};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=12 {
        let r = run_criterion(id, Level::Full);
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 12/12 passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
