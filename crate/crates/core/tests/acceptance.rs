//! The ten acceptance criteria, each with its runtime bound.
//! Prints one line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use radical_hopf::suite::{run_criterion, SuiteConfig, CLAIMS};

const BOUNDS_SECS: [u64; 10] = [10, 60, 30, 5, 60, 10, 120, 10, 120, 300];

fn main() -> ExitCode {
    let config = SuiteConfig::default();
    let mut failures = 0;
    println!("running {} acceptance criteria", CLAIMS.len());
    for (k, bound) in (1..=CLAIMS.len()).zip(BOUNDS_SECS) {
        let start = Instant::now();
        let report = run_criterion(k, &config);
        let elapsed = start.elapsed();
        let within = elapsed < Duration::from_secs(bound);
        let ok = report.passed() && within;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {k:>2} {:<18} {}  {:>8.2}s (bound {bound}s){}",
            CLAIMS[k - 1],
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if report.passed() { String::new() } else { format!("  {}", serde_json::to_string(&report).unwrap()) },
        );
    }
    println!("acceptance: {} passed, {failures} failed", CLAIMS.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
