//! Acceptance gate: one test per promised behavior, each printing a PASS
//! line with its measured runtime. Run with:
//!
//!     cargo test --test acceptance -- --nocapture
//!
//! Every comparison here recomputes both sides from scratch; no test
//! trusts a formula to check that same formula.

use std::time::{Duration, Instant};

use primatrix::classify::{classify_matrix, classify_row, twin_row_pairs};
use primatrix::density::{density_report, verify_pi_recurrence, verify_rho_recurrence};
use primatrix::matrix::MatrixSpec;
use primatrix::primes::{nth_prime, primes_up_to as classic_primes, PrimeIndex};
use primatrix::primorial::{phi_primorial, primorial, twin_factorial};
use primatrix::sieve::{primes_up_to, twins_in_pair, twins_up_to, SieveConfig, TwinPair};
use primatrix::transition::{transition_summary, uncolored_child_count};
use primatrix::verify::run_identity_suite;
use primatrix::Limits;

fn idx(k: u32) -> PrimeIndex {
    PrimeIndex::new(k).unwrap()
}

#[test]
fn uncolored_counts_match_totients() {
    let start = Instant::now();
    let expect: [(u32, u64); 7] = [
        (1, 1),
        (2, 2),
        (3, 8),
        (4, 48),
        (5, 480),
        (6, 5760),
        (7, 92160),
    ];
    for (k, alpha) in expect {
        let s = classify_matrix(idx(k), &Limits::default()).unwrap();
        assert_eq!(s.alpha, alpha, "k={k}");
        assert_eq!(s.alpha as u128, phi_primorial(idx(k)).unwrap().value());
        assert_eq!(s.omega as u128, primorial(idx(k)).unwrap().value());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("PASS uncolored row counts match the totient product for k=1..7 ({elapsed:?})");
}

#[test]
fn twin_row_counts_match_products() {
    let start = Instant::now();
    let expect: [(u32, u64); 6] = [(2, 1), (3, 3), (4, 15), (5, 135), (6, 1485), (7, 22275)];
    for (k, pairs) in expect {
        let s = classify_matrix(idx(k), &Limits::default()).unwrap();
        assert_eq!(s.alpha_twin_pairs, pairs, "k={k}");
        assert_eq!(
            s.alpha_twin_pairs as u128,
            twin_factorial(idx(k)).unwrap().value()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("PASS twin row pair counts match the twin product for k=2..7 ({elapsed:?})");
}

#[test]
fn transition_identities_hold() {
    let start = Instant::now();
    for k in 2..=6u32 {
        let t = transition_summary(idx(k), &Limits::default()).unwrap();
        let p = nth_prime(idx(k)).unwrap();
        let parent = &t.parent;
        assert_eq!(t.beta_s, parent.alpha_single, "k={k} singles side");
        assert_eq!(t.beta_b, parent.beta * p, "k={k} colored side");
        assert_eq!(t.beta_t, 2 * parent.alpha_twin_pairs, "k={k} twin side");
        assert_eq!(t.alpha_t, 2 * parent.alpha_twin_pairs, "k={k} demoted twins");
        assert_eq!(
            t.child.beta,
            parent.alpha_single + 2 * parent.alpha_twin_pairs + parent.beta * p,
            "k={k} colored balance"
        );
        assert_eq!(
            t.child.alpha,
            parent.alpha_single * (p - 1) + 2 * parent.alpha_twin_pairs * p
                - 2 * parent.alpha_twin_pairs,
            "k={k} uncolored balance"
        );
        assert_eq!(t.child.omega, parent.omega * p, "k={k} row growth");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("PASS all seven order-step identities hold by enumeration for k=2..6 ({elapsed:?})");
}

#[test]
fn every_uncolored_parent_keeps_all_but_one_child() {
    let start = Instant::now();
    for k in 2..=6u32 {
        let p = nth_prime(idx(k)).unwrap();
        let parent_omega = primorial(idx(k - 1)).unwrap().value() as u64;
        let parent_spec = MatrixSpec::new(idx(k - 1)).unwrap();
        let mut checked = 0u64;
        for row in 1..=parent_omega {
            let desc = classify_row(&parent_spec, row as u128).unwrap();
            if !desc.class.is_uncolored() {
                continue;
            }
            let kept = uncolored_child_count(idx(k), row as u128).unwrap();
            assert_eq!(kept, p - 1, "k={k} parent row {row}");
            checked += 1;
        }
        assert_eq!(
            checked as u128,
            phi_primorial(idx(k - 1)).unwrap().value(),
            "k={k} coverage"
        );
    }
    let elapsed = start.elapsed();
    println!(
        "PASS every uncolored parent row keeps exactly p_k - 1 uncolored children, k=2..6 \
         ({elapsed:?})"
    );
}

#[test]
fn row_sieve_matches_classic_sieve() {
    let reference = classic_primes(1_000_000);
    assert_eq!(reference.len(), 78_498);
    for k in 1..=6u32 {
        let start = Instant::now();
        let mut config = SieveConfig::new(idx(k), 1_000_000);
        config.threads = 2;
        let wheel = primes_up_to(&config).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(wheel, reference, "k={k}");
        assert!(elapsed < Duration::from_secs(10), "k={k} took {elapsed:?}");
        println!(
            "PASS row sieve reproduces all 78498 primes to 10^6 at order {k} ({elapsed:?})"
        );
    }
}

#[test]
fn twin_lists_identical_across_orders() {
    let start = Instant::now();
    let reference = twins_up_to(&SieveConfig::new(idx(2), 1_000_000)).unwrap();
    assert_eq!(reference.len(), 8_169);
    assert_eq!(reference[0], TwinPair { low: 3, high: 5 });
    assert_eq!(reference[1], TwinPair { low: 5, high: 7 });
    for k in 3..=6u32 {
        let twins = twins_up_to(&SieveConfig::new(idx(k), 1_000_000)).unwrap();
        assert_eq!(twins, reference, "k={k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "PASS all 8169 twin pairs to 10^6, including (3,5) and (5,7), at every order 2..6 \
         ({elapsed:?})"
    );
}

#[test]
fn matrix_prime_counts() {
    let start = Instant::now();
    for k in 1..=6u32 {
        let report = density_report(&SieveConfig::new(idx(k), 1_000_000)).unwrap();
        assert_eq!(report.pi_total, 78_498 - k as u64, "k={k}");
    }
    let elapsed = start.elapsed();
    println!(
        "PASS the uncolored rows hold exactly pi(10^6) - k primes for k=1..6 ({elapsed:?})"
    );
}

#[test]
fn step_laws_exact_and_density_monotone() {
    let start = Instant::now();
    let limits = Limits::default();
    use num_traits::Zero;
    for k in 2..=6u32 {
        let pi_step = verify_pi_recurrence(idx(k), 1_000_000, &limits).unwrap();
        assert!(pi_step.residual.is_zero(), "k={k} prime step");
        let rho_step = verify_rho_recurrence(idx(k), 1_000_000, &limits).unwrap();
        assert!(rho_step.residual.is_zero(), "k={k} density step");
    }
    let mut last = num_rational::BigRational::zero();
    for k in 1..=6u32 {
        let report = density_report(&SieveConfig::new(idx(k), 1_000_000)).unwrap();
        assert!(report.rho_av_idealized > last, "k={k} monotone");
        last = report.rho_av_idealized;
    }
    let elapsed = start.elapsed();
    println!(
        "PASS both step laws have residual exactly 0 at 10^6 for k=2..6 and the average \
         density rises with the order ({elapsed:?})"
    );
}

#[test]
fn every_twin_row_pair_bears_twins() {
    let start = Instant::now();
    let limits = Limits::default();

    let pairs4 = twin_row_pairs(idx(4), &limits).unwrap();
    assert_eq!(pairs4.len(), 15);
    let mut latest = (0u64, TwinPair { low: 0, high: 0 });
    for pair in pairs4 {
        let twins = twins_in_pair(idx(4), pair, 1_000_000).unwrap();
        let first = *twins.first().unwrap_or_else(|| {
            panic!("order-4 pair {pair:?} has no twin under 10^6")
        });
        if first.low > latest.1.low {
            latest = (pair.0, first);
        }
    }
    assert_eq!(latest.1, TwinPair { low: 1_427, high: 1_429 });

    let pairs5 = twin_row_pairs(idx(5), &limits).unwrap();
    assert_eq!(pairs5.len(), 135);
    for pair in pairs5 {
        let twins = twins_in_pair(idx(5), pair, 10_000_000).unwrap();
        assert!(
            !twins.is_empty(),
            "order-5 pair {pair:?} has no twin under 10^7"
        );
    }
    let elapsed = start.elapsed();
    println!(
        "PASS all 15 order-4 pairs carry a twin under 10^6 (latest starter: rows ({}, {}) \
         at (1427, 1429)) and all 135 order-5 pairs carry one under 10^7 ({elapsed:?})",
        latest.0,
        latest.0 + 2
    );
}

#[test]
fn full_identity_suite_green() {
    let start = Instant::now();
    let report = run_identity_suite(idx(6), 1_000_000, &Limits::default()).unwrap();
    assert_eq!(report.failures(), 0, "failing checks: {:#?}", report);
    assert_eq!(report.checks.len(), 6 * 14);
    let elapsed = start.elapsed();
    println!(
        "PASS identity suite: {} checks across orders 1..6, 0 failures, {} skipped at \
         order 1 ({elapsed:?})",
        report.checks.len(),
        report.skipped()
    );
}
