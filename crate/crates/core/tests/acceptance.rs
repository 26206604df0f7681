//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//!
//! Plain `main` instead of the libtest harness so the lines are shown by a
//! normal `cargo test` run. `ROBUSTNET_SEED` overrides the seed.

use std::process::ExitCode;

use robustnet::claims::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("ROBUSTNET_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("acceptance criteria (seed {seed})");
    let results = run_all(seed);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
