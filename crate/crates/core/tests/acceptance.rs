//! The acceptance criteria, one line per criterion.

use std::process::ExitCode;

use fsc_core::selftest::{self, SelftestOptions};

fn main() -> ExitCode {
    let results = selftest::run(&SelftestOptions::default());
    for (i, r) in results.iter().enumerate() {
        let status = if r.passed { "pass" } else { "FAIL" };
        println!("criterion {:>2} {status}: {} ({:.2}s) {}", i + 1, r.description, r.elapsed.as_secs_f64(), r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} criteria, {failed} failed", results.len());
    if results.len() == 12 && failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
