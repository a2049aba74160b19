//! Run the whole identity suite and print one line per law.

use anyhow::{bail, Result};
use primatrix::primes::PrimeIndex;
use primatrix::verify::{run_identity_suite, CheckStatus};
use primatrix::Limits;

fn main() -> Result<()> {
    let report = run_identity_suite(PrimeIndex::new(5)?, 200_000, &Limits::default())?;
    for check in &report.checks {
        match check.status {
            CheckStatus::Skipped => {
                println!(
                    "skip  {:28} {}",
                    check.tag,
                    check.note.as_deref().unwrap_or("")
                );
            }
            _ => {
                println!(
                    "{}  {:28} {} = {}",
                    check.status.label(),
                    check.tag,
                    check.lhs,
                    check.rhs
                );
            }
        }
    }
    println!();
    println!(
        "{} checks, {} failed, {} skipped",
        report.checks.len(),
        report.failures(),
        report.skipped()
    );
    if !report.passed() {
        bail!("identity suite reported failures");
    }
    Ok(())
}
