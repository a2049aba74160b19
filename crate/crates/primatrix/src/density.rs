//! Column censuses, average densities, and the step recurrences that tie
//! consecutive orders together.
//!
//! All identity arithmetic runs on exact rationals; floating point only
//! enters through the logarithmic integral and the residue-class
//! comparison built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::classify::uncolored_bits;
use crate::error::{Error, Result};
use crate::primes::{primes_up_to as classic_primes, PrimeIndex};
use crate::sieve::{chunked, scan_row, SieveConfig};
use crate::Limits;

/// What one row holds up to the cutoff: m columns, pi primes, n composites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowCensus {
    pub row: u64,
    pub first_term: u64,
    pub m: u64,
    pub pi: u64,
    pub n: u64,
}

/// Whole-matrix census with exact average densities.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub k: PrimeIndex,
    pub x: u64,
    /// Uncolored row count, the denominator of every average.
    pub alpha: u64,
    /// Primes found across the uncolored rows.
    pub pi_total: u64,
    /// Columns, i.e. elements up to the cutoff, across the uncolored rows.
    pub m_total: u64,
    pub n_total: u64,
    pub pi_av: BigRational,
    pub n_av: BigRational,
    pub m_av_exact: BigRational,
    /// Cutoff over difference; what m_av tends to for deep cutoffs.
    pub m_av_idealized: BigRational,
    pub rho_av_exact: BigRational,
    pub rho_av_idealized: BigRational,
}

/// One step of a recurrence in exact arithmetic; residual 0 means the two
/// sides agree.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCheck {
    pub k: PrimeIndex,
    pub x: u64,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub residual: BigRational,
}

/// Comparison of one uncolored residue class against the equidistribution
/// prediction li(x) / phi(d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueComparison {
    pub first_term: u64,
    pub actual: u64,
    pub expected: f64,
    pub rel_err: f64,
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_u128(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Census of a single row, colored rows included. A colored row can hold
/// at most one prime: the wheel prime sharing its residue, if it sits in
/// the row at all.
pub fn row_census(k: PrimeIndex, row: u64, x: u64) -> Result<RowCensus> {
    let config = SieveConfig::new(k, x);
    let plan = config.plan()?;
    if row < 1 || row > plan.d {
        return Err(Error::range(format!(
            "row {row} outside 1..={} for order {k}",
            plan.d
        )));
    }
    let l = row + 1;
    let m = if l > x { 0 } else { (x - l) / plan.d + 1 };
    let pi = if l.gcd(&plan.d) != 1 {
        plan.wheel_primes
            .iter()
            .filter(|&&p| p <= x && p >= l && (p - l) % plan.d == 0)
            .count() as u64
    } else {
        let mut count = 0u64;
        scan_row(l, plan.d, x, &plan.base, config.segment_size, |_| {
            count += 1
        });
        count
    };
    Ok(RowCensus {
        row,
        first_term: l,
        m,
        pi,
        n: m - pi,
    })
}

/// Eager census table over every row of the matrix; budgeted like the
/// other whole-matrix enumerations.
pub fn row_censuses(config: &SieveConfig) -> Result<Vec<RowCensus>> {
    let plan = config.plan()?;
    if plan.d > config.limits.max_rows {
        return Err(Error::budget(format!(
            "order {} has {} rows, over the {} row budget",
            config.k, plan.d, config.limits.max_rows
        )));
    }
    let x = config.cutoff_x;
    let rows: Vec<u64> = (1..=plan.d).collect();
    let censuses = chunked(&rows, config.threads, |slice| {
        let mut local = Vec::with_capacity(slice.len());
        for &row in slice {
            let l = row + 1;
            let m = if l > x { 0 } else { (x - l) / plan.d + 1 };
            let pi = if l.gcd(&plan.d) != 1 {
                plan.wheel_primes
                    .iter()
                    .filter(|&&p| p <= x && p >= l && (p - l) % plan.d == 0)
                    .count() as u64
            } else {
                let mut count = 0u64;
                scan_row(l, plan.d, x, &plan.base, config.segment_size, |_| {
                    count += 1
                });
                count
            };
            local.push(RowCensus {
                row,
                first_term: l,
                m,
                pi,
                n: m - pi,
            });
        }
        local
    });
    let mut censuses = censuses;
    censuses.sort_unstable_by_key(|c| c.row);
    Ok(censuses)
}

/// Census totals and exact average densities over the uncolored rows.
pub fn density_report(config: &SieveConfig) -> Result<DensityReport> {
    if config.cutoff_x < 2 {
        return Err(Error::domain(format!(
            "cutoff {} leaves every row empty; need at least 2",
            config.cutoff_x
        )));
    }
    let plan = config.plan()?;
    let x = config.cutoff_x;
    let bits = uncolored_bits(plan.d, &plan.wheel_primes);
    let mut residues = Vec::new();
    for row in 1..=plan.d {
        if bits.get(row - 1) {
            residues.push(row + 1);
        }
    }
    let alpha = residues.len() as u64;

    let totals = chunked(&residues, config.threads, |slice| {
        let mut pi = 0u64;
        let mut m = 0u64;
        for &l in slice {
            if l <= x {
                m += (x - l) / plan.d + 1;
            }
            scan_row(l, plan.d, x, &plan.base, config.segment_size, |_| pi += 1);
        }
        vec![(pi, m)]
    });
    let (pi_total, m_total) = totals
        .into_iter()
        .fold((0u64, 0u64), |(p, m), (dp, dm)| (p + dp, m + dm));

    if m_total == 0 {
        return Err(Error::domain(format!(
            "cutoff {x} reaches no element of order {}; raise it past the difference",
            config.k
        )));
    }

    let alpha_r = rat(alpha);
    let d_r = rat(plan.d);
    let x_r = rat(x);
    let pi_av = rat(pi_total) / alpha_r.clone();
    let m_av_exact = rat(m_total) / alpha_r.clone();
    let m_av_idealized = x_r.clone() / d_r.clone();
    let rho_av_exact = rat(pi_total) / rat(m_total);
    let rho_av_idealized = rat(pi_total) * d_r / (alpha_r.clone() * x_r);

    Ok(DensityReport {
        k: config.k,
        x,
        alpha,
        pi_total,
        m_total,
        n_total: m_total - pi_total,
        pi_av,
        n_av: rat(m_total - pi_total) / alpha_r,
        m_av_exact,
        m_av_idealized,
        rho_av_exact,
        rho_av_idealized,
    })
}

/// Primes up to x sitting in uncolored rows of the order-k matrix, counted
/// from a classic sieve; order 0 means the bare number line.
fn matrix_prime_count(order: u32, primes: &[u64]) -> Result<(u64, u128, u128)> {
    if order == 0 {
        return Ok((primes.len() as u64, 1, 1));
    }
    let k = PrimeIndex::new(order)?;
    let d = crate::primorial::primorial(k)?.value();
    let phi = crate::primorial::phi_primorial(k)?.value();
    let count = primes.iter().filter(|&&p| d % p as u128 != 0).count() as u64;
    Ok((count, d, phi))
}

fn classic_primes_budgeted(x: u64, limits: &Limits) -> Result<Vec<u64>> {
    if x > limits.max_x {
        return Err(Error::budget(format!(
            "cutoff {x} is over the {} cutoff budget",
            limits.max_x
        )));
    }
    Ok(classic_primes(x))
}

/// Step law for the matrix prime count: going from order k-1 to k loses
/// exactly the one prime p_k once the cutoff has passed it. The residual
/// is (lhs - rhs) / phi(d_k), zero when the law holds.
pub fn verify_pi_recurrence(k: PrimeIndex, x: u64, limits: &Limits) -> Result<RecurrenceCheck> {
    let primes = classic_primes_budgeted(x, limits)?;
    let (pi_k, _, phi_k) = matrix_prime_count(k.get(), &primes)?;
    let (pi_prev, _, _) = matrix_prime_count(k.get() - 1, &primes)?;
    let lhs = rat(pi_k);
    let rhs = rat(pi_prev) - rat(1);
    let residual = (lhs.clone() - rhs.clone()) / rat_u128(phi_k);
    Ok(RecurrenceCheck {
        k,
        x,
        lhs,
        rhs,
        residual,
    })
}

/// Step law for the idealized average density rho = pi * d / (alpha * x):
/// each order step scales it by p_k / (p_k - 1) and by the prime-count
/// step (pi_prev - 1) / pi_prev. Residual zero when both laws hold.
pub fn verify_rho_recurrence(k: PrimeIndex, x: u64, limits: &Limits) -> Result<RecurrenceCheck> {
    let primes = classic_primes_budgeted(x, limits)?;
    let (pi_k, d_k, phi_k) = matrix_prime_count(k.get(), &primes)?;
    let (pi_prev, d_prev, phi_prev) = matrix_prime_count(k.get() - 1, &primes)?;
    if pi_prev == 0 {
        return Err(Error::domain(format!(
            "no primes up to {x}; the density step needs a nonempty count"
        )));
    }
    let p_k = crate::primes::nth_prime(k)?;
    let x_r = rat(x);
    let lhs = rat(pi_k) * rat_u128(d_k) / (rat_u128(phi_k) * x_r.clone());
    let rho_prev = rat(pi_prev) * rat_u128(d_prev) / (rat_u128(phi_prev) * x_r);
    let rhs = rho_prev * rat(p_k) / rat(p_k - 1) * (rat(pi_prev) - rat(1)) / rat(pi_prev);
    let residual = lhs.clone() - rhs.clone();
    Ok(RecurrenceCheck {
        k,
        x,
        lhs,
        rhs,
        residual,
    })
}

/// Gap between the exact-count average density and its idealized form at
/// one cutoff; shrinks as the cutoff deepens.
pub fn rho_exact_deviation(config: &SieveConfig) -> Result<BigRational> {
    let report = density_report(config)?;
    Ok((report.rho_av_exact - report.rho_av_idealized).abs())
}

/// Logarithmic integral from 2: the integral of dt / ln t over [2, x].
pub fn li(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 2.0 {
        return Err(Error::domain(format!(
            "logarithmic integral taken from 2; got x = {x}"
        )));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let f = |t: f64| t.ln().recip();
    Ok(adaptive_simpson(&f, 2.0, x))
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    let eps = (whole.abs() * 1e-13).max(1e-15);
    simpson_refine(f, a, fa, m, fm, b, fb, whole, eps, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_refine(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let (left, lm, flm) = simpson(f, a, fa, m, fm);
    let (right, rm, frm) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_refine(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1)
        + simpson_refine(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1)
}

/// Actual prime counts per uncolored residue class against the shared
/// equidistribution prediction li(x) / alpha, ascending by first term.
pub fn siegel_walfisz_compare(config: &SieveConfig) -> Result<Vec<ResidueComparison>> {
    let plan = config.plan()?;
    let x = config.cutoff_x;
    let primes = classic_primes_budgeted(x, &config.limits)?;
    let bits = uncolored_bits(plan.d, &plan.wheel_primes);
    let mut counts: Vec<u64> = vec![0; plan.d as usize];
    for &p in &primes {
        if plan.d % p != 0 {
            counts[(p % plan.d) as usize] += 1;
        }
    }
    let alpha = bits.count();
    let expected = li(x as f64)? / alpha as f64;
    let mut out = Vec::new();
    for row in 1..=plan.d {
        if !bits.get(row - 1) {
            continue;
        }
        let l = row + 1;
        let actual = counts[(l % plan.d) as usize];
        let rel_err = (actual as f64 - expected).abs() / (actual.max(1) as f64);
        out.push(ResidueComparison {
            first_term: l,
            actual,
            expected,
            rel_err,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn idx(k: u32) -> PrimeIndex {
        PrimeIndex::new(k).unwrap()
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn census_examples() {
        let c = row_census(idx(2), 4, 50).unwrap();
        assert_eq!((c.first_term, c.m, c.pi, c.n), (5, 8, 7, 1));
        let c = row_census(idx(2), 3, 50).unwrap();
        assert_eq!((c.first_term, c.m, c.pi, c.n), (4, 8, 0, 8));
        let c = row_census(idx(2), 2, 50).unwrap();
        assert_eq!((c.first_term, c.m, c.pi, c.n), (3, 8, 1, 7));
        let c = row_census(idx(1), 2, 10).unwrap();
        assert_eq!((c.first_term, c.m, c.pi, c.n), (3, 4, 3, 1));
    }

    #[test]
    fn census_bounds() {
        assert!(matches!(
            row_census(idx(2), 0, 50),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            row_census(idx(2), 7, 50),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn census_of_empty_row() {
        let c = row_census(idx(4), 210, 50).unwrap();
        assert_eq!((c.first_term, c.m, c.pi, c.n), (211, 0, 0, 0));
    }

    #[test]
    fn report_totals_at_order_two() {
        let r = density_report(&SieveConfig::new(idx(2), 30)).unwrap();
        assert_eq!(r.alpha, 2);
        assert_eq!(r.pi_total, 8);
        assert_eq!(r.m_total, 9);
        assert_eq!(r.n_total, 1);
        assert_eq!(r.pi_av, frac(4, 1));
        assert_eq!(r.m_av_exact, frac(9, 2));
        assert_eq!(r.m_av_idealized, frac(5, 1));
        assert_eq!(r.rho_av_exact, frac(8, 9));
        assert_eq!(r.rho_av_idealized, frac(4, 5));
    }

    #[test]
    fn report_census_table_sums_match() {
        let config = SieveConfig::new(idx(3), 1_000);
        let report = density_report(&config).unwrap();
        let rows = row_censuses(&config).unwrap();
        assert_eq!(rows.len() as u64, 30);
        let uncolored: Vec<_> = rows
            .iter()
            .filter(|c| c.first_term.gcd(&30) == 1)
            .collect();
        assert_eq!(uncolored.len() as u64, report.alpha);
        assert_eq!(
            uncolored.iter().map(|c| c.pi).sum::<u64>(),
            report.pi_total
        );
        assert_eq!(uncolored.iter().map(|c| c.m).sum::<u64>(), report.m_total);
        for c in rows.iter() {
            assert_eq!(c.m, c.pi + c.n);
        }
    }

    #[test]
    fn whole_matrix_column_count_covers_every_integer() {
        // columns across all rows partition 2..=x
        let rows = row_censuses(&SieveConfig::new(idx(3), 500)).unwrap();
        let total: u64 = rows.iter().map(|c| c.m).sum();
        assert_eq!(total, 499);
    }

    #[test]
    fn pi_recurrence_is_exact_past_the_new_prime() {
        let lim = Limits::default();
        for k in 1..=6u32 {
            let check = verify_pi_recurrence(idx(k), 1_000_000, &lim).unwrap();
            assert!(check.residual.is_zero(), "k={k}");
        }
        let small = verify_pi_recurrence(idx(2), 30, &lim).unwrap();
        assert!(small.residual.is_zero());
        assert_eq!(small.lhs, frac(8, 1));
    }

    #[test]
    fn pi_recurrence_before_the_new_prime_misses() {
        let check = verify_pi_recurrence(idx(3), 4, &Limits::default()).unwrap();
        assert!(!check.residual.is_zero());
    }

    #[test]
    fn rho_recurrence_is_exact() {
        let lim = Limits::default();
        let check = verify_rho_recurrence(idx(2), 30, &lim).unwrap();
        assert_eq!(check.lhs, frac(4, 5));
        assert!(check.residual.is_zero());
        for k in 1..=6u32 {
            let check = verify_rho_recurrence(idx(k), 1_000_000, &lim).unwrap();
            assert!(check.residual.is_zero(), "k={k}");
        }
    }

    #[test]
    fn exact_density_approaches_the_idealized_form() {
        for k in 2..=4u32 {
            let dev = rho_exact_deviation(&SieveConfig::new(idx(k), 1_000_000)).unwrap();
            assert!(dev < frac(1, 1000), "k={k} dev={dev}");
        }
        let shallow = rho_exact_deviation(&SieveConfig::new(idx(2), 1_000)).unwrap();
        let deep = rho_exact_deviation(&SieveConfig::new(idx(2), 1_000_000)).unwrap();
        assert!(deep < shallow);
    }

    #[test]
    fn li_frozen_values() {
        let cases = [
            (10.0, 5.120435724669805),
            (100.0, 29.080977803962137),
            (10_000.0, 1245.0920521192709),
            (1_000_000.0, 78626.50399568206),
            (10_000_000.0, 664917.3598847888),
            (100_000_000.0, 5762208.330284251),
        ];
        for (x, expect) in cases {
            let got = li(x).unwrap();
            assert!(
                ((got - expect) / expect).abs() < 1e-9,
                "li({x}) = {got}, expected {expect}"
            );
        }
        assert_eq!(li(2.0).unwrap(), 0.0);
    }

    #[test]
    fn li_domain() {
        assert!(matches!(li(1.5), Err(Error::Domain(_))));
        assert!(matches!(li(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(li(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn li_agrees_with_the_series_form() {
        // li(x) = Ei(ln x) - Ei(ln 2) with Ei the alternating-free series
        // gamma + ln z + sum z^n / (n * n!)
        fn ei(z: f64) -> f64 {
            let gamma = 0.577_215_664_901_532_9_f64;
            let mut sum = gamma + z.ln();
            let mut term = 1.0_f64;
            for n in 1..200 {
                term *= z / n as f64;
                sum += term / n as f64;
            }
            sum
        }
        for x in [10.0, 1_000.0, 100_000.0, 10_000_000.0] {
            let series = ei((x as f64).ln()) - ei(2.0_f64.ln());
            let got = li(x).unwrap();
            assert!(
                ((got - series) / series).abs() < 1e-9,
                "x={x} got={got} series={series}"
            );
        }
    }

    #[test]
    fn residue_classes_split_the_primes_evenly() {
        let rows = siegel_walfisz_compare(&SieveConfig::new(idx(2), 1_000_000)).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].first_term, 5);
        assert_eq!(rows[0].actual, 39_265);
        assert_eq!(rows[1].first_term, 7);
        assert_eq!(rows[1].actual, 39_231);
        for r in &rows {
            assert!((r.expected - 39_313.25).abs() < 0.01, "{}", r.expected);
            assert!(r.rel_err < 0.01);
        }
        let total: u64 = rows.iter().map(|r| r.actual).sum();
        assert_eq!(total, 78_496);
    }

    #[test]
    fn report_rejects_trivial_cutoffs() {
        assert!(matches!(
            density_report(&SieveConfig::new(idx(2), 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn report_monotone_density_in_the_order() {
        let mut last = BigRational::zero();
        for k in 1..=4u32 {
            let r = density_report(&SieveConfig::new(idx(k), 100_000)).unwrap();
            assert!(r.rho_av_idealized > last, "k={k}");
            last = r.rho_av_idealized;
        }
    }
}
