//! The identity suite: every structural law the construction promises,
//! each one recomputed from scratch on both sides and compared exactly.
//!
//! Count identities enumerate rows; transition identities enumerate a
//! whole order step; the two recurrence laws count primes with a classic
//! sieve. Nothing here reuses a formula to check that same formula.

use num_traits::Zero;

use crate::classify::classify_matrix;
use crate::density::{verify_pi_recurrence, verify_rho_recurrence};
use crate::error::Result;
use crate::primes::{nth_prime, PrimeIndex};
use crate::primorial::{phi_primorial, primorial, twin_factorial};
use crate::transition::transition_summary;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// One verified law, both sides rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub tag: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub status: CheckStatus,
    pub note: Option<String>,
}

impl IdentityCheck {
    fn counts(tag: String, lhs: u128, rhs: u128) -> IdentityCheck {
        let status = if lhs == rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        IdentityCheck {
            tag,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            residual: lhs.abs_diff(rhs).to_string(),
            status,
            note: None,
        }
    }

    fn skipped(tag: String, note: &str) -> IdentityCheck {
        IdentityCheck {
            tag,
            lhs: "-".to_string(),
            rhs: "-".to_string(),
            residual: "-".to_string(),
            status: CheckStatus::Skipped,
            note: Some(note.to_string()),
        }
    }
}

/// Full run of the suite across orders 1..=k_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub k_max: PrimeIndex,
    pub x: u64,
    pub checks: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Skipped)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

const NEEDS_ORDER_TWO: &str = "k >= 2 required";

fn rational_check(tag: String, check: &crate::density::RecurrenceCheck) -> IdentityCheck {
    let status = if check.residual.is_zero() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    IdentityCheck {
        tag,
        lhs: check.lhs.to_string(),
        rhs: check.rhs.to_string(),
        residual: check.residual.to_string(),
        status,
        note: None,
    }
}

/// Run every law for each order up to k_max, with recurrences taken at
/// cutoff x. Failures land in the report; errors only reflect budget or
/// domain problems.
pub fn run_identity_suite(k_max: PrimeIndex, x: u64, limits: &Limits) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    for order in 1..=k_max.get() {
        let k = PrimeIndex::new(order)?;
        let summary = classify_matrix(k, limits)?;
        let omega = primorial(k)?.value();
        let phi = phi_primorial(k)?.value();

        checks.push(IdentityCheck::counts(
            format!("uncolored-split[{order}]"),
            summary.alpha as u128,
            summary.alpha_single as u128 + 2 * summary.alpha_twin_pairs as u128,
        ));
        checks.push(IdentityCheck::counts(
            format!("row-partition[{order}]"),
            summary.omega as u128,
            summary.alpha as u128 + summary.beta as u128,
        ));
        checks.push(IdentityCheck::counts(
            format!("row-count-primorial[{order}]"),
            summary.omega as u128,
            omega,
        ));
        checks.push(IdentityCheck::counts(
            format!("uncolored-totient[{order}]"),
            summary.alpha as u128,
            phi,
        ));
        if order >= 2 {
            checks.push(IdentityCheck::counts(
                format!("twin-pair-product[{order}]"),
                summary.alpha_twin_pairs as u128,
                twin_factorial(k)?.value(),
            ));
        } else {
            checks.push(IdentityCheck::skipped(
                format!("twin-pair-product[{order}]"),
                NEEDS_ORDER_TWO,
            ));
        }

        let transition_tags = [
            "colored-from-singles",
            "colored-from-colored",
            "colored-from-twins",
            "singles-from-twins",
            "colored-balance",
            "uncolored-balance",
            "row-growth",
        ];
        if order >= 2 {
            let t = transition_summary(k, limits)?;
            let p = nth_prime(k)? as u128;
            let parent = &t.parent;
            let pairs2 = 2 * parent.alpha_twin_pairs as u128;
            let values: [(u128, u128); 7] = [
                (t.beta_s as u128, parent.alpha_single as u128),
                (t.beta_b as u128, parent.beta as u128 * p),
                (t.beta_t as u128, pairs2),
                (t.alpha_t as u128, pairs2),
                (
                    t.child.beta as u128,
                    parent.alpha_single as u128 + pairs2 + parent.beta as u128 * p,
                ),
                (
                    t.child.alpha as u128,
                    parent.alpha_single as u128 * (p - 1)
                        + pairs2 * p
                        - pairs2,
                ),
                (t.child.omega as u128, parent.omega as u128 * p),
            ];
            for (tag, (lhs, rhs)) in transition_tags.iter().zip(values) {
                checks.push(IdentityCheck::counts(format!("{tag}[{order}]"), lhs, rhs));
            }
        } else {
            for tag in transition_tags {
                checks.push(IdentityCheck::skipped(
                    format!("{tag}[{order}]"),
                    NEEDS_ORDER_TWO,
                ));
            }
        }

        let p_k = nth_prime(k)?;
        if x >= p_k {
            let pi_step = verify_pi_recurrence(k, x, limits)?;
            checks.push(rational_check(
                format!("prime-average-step[{order}]"),
                &pi_step,
            ));
            let rho_step = verify_rho_recurrence(k, x, limits)?;
            checks.push(rational_check(format!("density-step[{order}]"), &rho_step));
        } else {
            let note = format!("cutoff {x} is below p_{order} = {p_k}; step laws start there");
            checks.push(IdentityCheck::skipped(
                format!("prime-average-step[{order}]"),
                &note,
            ));
            checks.push(IdentityCheck::skipped(
                format!("density-step[{order}]"),
                &note,
            ));
        }
    }
    Ok(VerifyReport {
        k_max,
        x,
        checks,
    })
}
