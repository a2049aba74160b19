//! Segmented prime sieve that walks the uncolored rows of the order-k
//! matrix instead of the full number line.
//!
//! Every prime above p_k sits in an uncolored row, so only phi(d) of the d
//! residue classes mod the difference ever need scanning. Within one row
//! the elements are l + n*d for n >= 0; a classic base prime q strikes the
//! row along an arithmetic progression in n, entered via one modular
//! inverse. Rows are independent, which is what makes the row-level
//! parallelism safe.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::classify::{twin_row_pairs, uncolored_bits};
use crate::error::{Error, Result};
use crate::primes::{is_prime_trial, PrimeIndex};
use crate::Limits;

pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 20;

/// Parameters for one sieve run.
#[derive(Debug, Clone)]
pub struct SieveConfig {
    pub k: PrimeIndex,
    pub cutoff_x: u64,
    /// Bits per row segment; small values only change memory traffic,
    /// never the output.
    pub segment_size: usize,
    pub threads: usize,
    pub limits: Limits,
}

impl SieveConfig {
    pub fn new(k: PrimeIndex, cutoff_x: u64) -> SieveConfig {
        SieveConfig {
            k,
            cutoff_x,
            segment_size: DEFAULT_SEGMENT_SIZE,
            threads: 1,
            limits: Limits::default(),
        }
    }

    /// Below 100 diffs of headroom the run is dominated by the first few
    /// columns and row statistics say little; still correct, just shallow.
    pub fn cutoff_warning(&self) -> Option<String> {
        let d = crate::primorial::primorial(self.k).ok()?.value();
        if (self.cutoff_x as u128) < 100 * d {
            Some(format!(
                "cutoff {} is under 100 times the difference {d}; \
                 row statistics at order {} need a deeper cutoff to mean much",
                self.cutoff_x, self.k
            ))
        } else {
            None
        }
    }

    pub(crate) fn plan(&self) -> Result<WheelPlan> {
        if self.segment_size == 0 {
            return Err(Error::domain("segment size must be at least 1 bit"));
        }
        if self.threads == 0 {
            return Err(Error::domain("thread count must be at least 1"));
        }
        if self.cutoff_x > self.limits.max_x {
            return Err(Error::budget(format!(
                "cutoff {} is over the {} cutoff budget",
                self.cutoff_x, self.limits.max_x
            )));
        }
        let d_wide = crate::primorial::primorial(self.k)?.value();
        if d_wide > self.limits.max_x as u128 {
            return Err(Error::budget(format!(
                "order {} difference {d_wide} is over the {} cutoff budget; \
                 use a lower order",
                self.k, self.limits.max_x
            )));
        }
        let d = d_wide as u64;
        let wheel_primes = crate::primes::first_primes(self.k)?;
        let p_k = *wheel_primes.last().expect("order >= 1");
        let base = crate::primes::primes_up_to(self.cutoff_x.isqrt())
            .into_iter()
            .filter(|&q| q > p_k)
            .map(|q| BasePrime {
                q,
                q_squared: q * q,
                inv_d: mod_inverse(d % q, q),
            })
            .collect();
        Ok(WheelPlan {
            d,
            wheel_primes,
            base,
        })
    }
}

/// One twin prime pair, high = low + 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwinPair {
    pub low: u64,
    pub high: u64,
}

pub(crate) struct WheelPlan {
    pub(crate) d: u64,
    pub(crate) wheel_primes: Vec<u64>,
    pub(crate) base: Vec<BasePrime>,
}

pub(crate) struct BasePrime {
    q: u64,
    q_squared: u64,
    /// Inverse of the difference mod q; q never divides the difference
    /// because every base prime exceeds p_k.
    inv_d: u64,
}

/// Extended Euclid inverse of a mod m, for prime m and gcd(a, m) = 1.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// Fill `words` with one survivor bit per n in [n_lo, n_hi): set means no
/// base prime q with q*q <= l + n*d divides the element.
fn fill_segment(
    l: u64,
    d: u64,
    base: &[BasePrime],
    n_lo: u64,
    n_hi: u64,
    words: &mut Vec<u64>,
) {
    let len = (n_hi - n_lo) as usize;
    words.clear();
    words.resize(len.div_ceil(64), u64::MAX);
    let rem = len % 64;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last = u64::MAX >> (64 - rem);
        }
    }
    for bp in base {
        let q = bp.q;
        // n must satisfy l + n*d ≡ 0 (mod q); one solution class per q
        let n0 = (q - (l % q) * bp.inv_d % q) % q;
        let min_by_square = if bp.q_squared > l {
            (bp.q_squared - l).div_ceil(d)
        } else {
            0
        };
        let lo = n_lo.max(min_by_square);
        if lo >= n_hi {
            continue;
        }
        let mut n = lo + (n0 + q - lo % q) % q;
        while n < n_hi {
            let bit = (n - n_lo) as usize;
            words[bit / 64] &= !(1u64 << (bit % 64));
            n += q;
        }
    }
}

fn for_each_set_bit(words: &[u64], n_lo: u64, mut f: impl FnMut(u64)) {
    for (wi, &word) in words.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            let b = w.trailing_zeros() as u64;
            f(n_lo + wi as u64 * 64 + b);
            w &= w - 1;
        }
    }
}

/// Walk the survivors of one row in ascending n order.
pub(crate) fn scan_row(
    l: u64,
    d: u64,
    x: u64,
    base: &[BasePrime],
    segment_size: usize,
    mut on_survivor: impl FnMut(u64),
) {
    if l > x {
        return;
    }
    let n_max = (x - l) / d;
    let mut words = Vec::new();
    let mut n_lo = 0u64;
    loop {
        let n_hi = n_lo.saturating_add(segment_size as u64).min(n_max + 1);
        fill_segment(l, d, base, n_lo, n_hi, &mut words);
        for_each_set_bit(&words, n_lo, |n| on_survivor(l + n * d));
        if n_hi > n_max {
            break;
        }
        n_lo = n_hi;
    }
}

/// Walk the surviving column pairs of one twin row pair: both l + n*d and
/// l + 2 + n*d prime, the high member still under the cutoff.
fn scan_pair(
    l_low: u64,
    d: u64,
    x: u64,
    base: &[BasePrime],
    segment_size: usize,
    mut on_pair: impl FnMut(TwinPair),
) {
    let l_high = l_low + 2;
    if l_high > x {
        return;
    }
    let n_max = (x - l_high) / d;
    let mut low_words = Vec::new();
    let mut high_words = Vec::new();
    let mut n_lo = 0u64;
    loop {
        let n_hi = n_lo.saturating_add(segment_size as u64).min(n_max + 1);
        fill_segment(l_low, d, base, n_lo, n_hi, &mut low_words);
        fill_segment(l_high, d, base, n_lo, n_hi, &mut high_words);
        for (w, &h) in low_words.iter_mut().zip(high_words.iter()) {
            *w &= h;
        }
        for_each_set_bit(&low_words, n_lo, |n| {
            let low = l_low + n * d;
            on_pair(TwinPair { low, high: low + 2 });
        });
        if n_hi > n_max {
            break;
        }
        n_lo = n_hi;
    }
}

pub(crate) fn chunked<T: Sync, U: Send>(
    items: &[T],
    threads: usize,
    work: impl Fn(&[T]) -> Vec<U> + Sync,
) -> Vec<U> {
    if items.is_empty() {
        return Vec::new();
    }
    let chunk = items.len().div_ceil(threads.max(1));
    if threads <= 1 || items.len() <= 1 {
        return work(items);
    }
    let mut out = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|slice| scope.spawn(|| work(slice)))
            .collect();
        for h in handles {
            out.extend(h.join().expect("sieve worker panicked"));
        }
    });
    out
}

/// Every prime up to the cutoff, found by scanning only uncolored rows.
/// The wheel primes themselves are prepended since they sit in colored
/// rows (or outside the matrix entirely for the difference's factors).
pub fn primes_up_to(config: &SieveConfig) -> Result<Vec<u64>> {
    let plan = config.plan()?;
    if config.cutoff_x < 2 {
        return Ok(Vec::new());
    }
    let mut out: Vec<u64> = plan
        .wheel_primes
        .iter()
        .copied()
        .filter(|&p| p <= config.cutoff_x)
        .collect();

    let bits = uncolored_bits(plan.d, &plan.wheel_primes);
    let mut residues = Vec::new();
    for row in 1..=plan.d {
        if bits.get(row - 1) {
            residues.push(row + 1);
        }
    }

    let found = chunked(&residues, config.threads, |rows| {
        let mut local = Vec::new();
        for &l in rows {
            scan_row(
                l,
                plan.d,
                config.cutoff_x,
                &plan.base,
                config.segment_size,
                |z| local.push(z),
            );
        }
        local
    });
    out.extend(found);
    out.sort_unstable();
    Ok(out)
}

/// Every twin prime pair with both members up to the cutoff.
///
/// Pairs touching a wheel prime are checked directly; all remaining pairs
/// have both members coprime to the difference and therefore sit column
/// for column in twin row pairs, which are scanned with paired bitmaps.
pub fn twins_up_to(config: &SieveConfig) -> Result<Vec<TwinPair>> {
    let plan = config.plan()?;
    let x = config.cutoff_x;
    let mut set: BTreeSet<TwinPair> = BTreeSet::new();

    for &p in &plan.wheel_primes {
        for cand in [p.checked_sub(2).map(|a| (a, p)), Some((p, p + 2))]
            .into_iter()
            .flatten()
        {
            let (a, b) = cand;
            if a >= 2 && b <= x && is_prime_trial(a) && is_prime_trial(b) {
                set.insert(TwinPair { low: a, high: b });
            }
        }
    }

    if config.k.get() == 1 {
        // one uncolored row of all odd numbers; twins are adjacent columns
        let mut prev: Option<u64> = None;
        scan_row(3, plan.d, x, &plan.base, config.segment_size, |z| {
            if prev == Some(z - 2) {
                set.insert(TwinPair { low: z - 2, high: z });
            }
            prev = Some(z);
        });
    } else {
        let pairs = twin_row_pairs(config.k, &config.limits)?;
        let found = chunked(&pairs, config.threads, |slice| {
            let mut local = Vec::new();
            for &(row_low, _) in slice {
                scan_pair(
                    row_low + 1,
                    plan.d,
                    x,
                    &plan.base,
                    config.segment_size,
                    |pair| local.push(pair),
                );
            }
            local
        });
        set.extend(found);
    }
    Ok(set.into_iter().collect())
}

/// Twin prime pairs lying in one specific twin row pair, up to the cutoff.
pub fn twins_in_pair(k: PrimeIndex, pair: (u64, u64), x: u64) -> Result<Vec<TwinPair>> {
    if k.get() < 2 {
        return Err(Error::domain(
            "twin row pairs need order >= 2; order 1 keeps twins in one row",
        ));
    }
    let config = SieveConfig::new(k, x);
    let plan = config.plan()?;
    let (row_low, row_high) = pair;
    if row_high != row_low + 2 {
        return Err(Error::domain(format!(
            "({row_low}, {row_high}) is not an index-distance-2 pair"
        )));
    }
    if row_low < 1 || row_high > plan.d {
        return Err(Error::range(format!(
            "rows ({row_low}, {row_high}) outside 1..={}",
            plan.d
        )));
    }
    let (l_low, l_high) = (row_low + 1, row_high + 1);
    if l_low.gcd(&plan.d) != 1 || l_high.gcd(&plan.d) != 1 {
        return Err(Error::domain(format!(
            "({row_low}, {row_high}) is not a twin row pair of order {k}"
        )));
    }
    let mut out = Vec::new();
    scan_pair(l_low, plan.d, x, &plan.base, config.segment_size, |p| {
        out.push(p)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_up_to as classic_primes;

    fn idx(k: u32) -> PrimeIndex {
        PrimeIndex::new(k).unwrap()
    }

    fn wheel(k: u32, x: u64) -> Vec<u64> {
        primes_up_to(&SieveConfig::new(idx(k), x)).unwrap()
    }

    fn classic_twins(x: u64) -> Vec<TwinPair> {
        let ps = classic_primes(x);
        ps.windows(2)
            .filter(|w| w[1] - w[0] == 2)
            .map(|w| TwinPair {
                low: w[0],
                high: w[1],
            })
            .collect()
    }

    #[test]
    fn small_cutoffs() {
        assert_eq!(wheel(2, 30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(wheel(2, 2), vec![2]);
        assert_eq!(wheel(2, 1), Vec::<u64>::new());
        assert_eq!(wheel(2, 0), Vec::<u64>::new());
        assert_eq!(wheel(4, 5), vec![2, 3, 5]);
    }

    #[test]
    fn matches_classic_sieve_across_orders() {
        let expect = classic_primes(10_000);
        for k in 1..=5u32 {
            assert_eq!(wheel(k, 10_000), expect, "k={k}");
        }
    }

    #[test]
    fn segment_size_does_not_change_output() {
        let mut config = SieveConfig::new(idx(3), 50_000);
        let reference = primes_up_to(&config).unwrap();
        for seg in [64usize, 1_000, 4_096] {
            config.segment_size = seg;
            assert_eq!(primes_up_to(&config).unwrap(), reference, "seg={seg}");
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut config = SieveConfig::new(idx(4), 100_000);
        let reference = primes_up_to(&config).unwrap();
        for threads in [2usize, 3, 8] {
            config.threads = threads;
            assert_eq!(primes_up_to(&config).unwrap(), reference, "threads={threads}");
        }
    }

    #[test]
    fn budget_errors() {
        assert!(matches!(
            primes_up_to(&SieveConfig::new(idx(9), 1_000)),
            Err(Error::Budget(_))
        ));
        let config = SieveConfig {
            cutoff_x: 200_000_000,
            ..SieveConfig::new(idx(2), 0)
        };
        assert!(matches!(primes_up_to(&config), Err(Error::Budget(_))));
    }

    #[test]
    fn config_validation() {
        let mut config = SieveConfig::new(idx(2), 100);
        config.segment_size = 0;
        assert!(matches!(primes_up_to(&config), Err(Error::Domain(_))));
        let mut config = SieveConfig::new(idx(2), 100);
        config.threads = 0;
        assert!(matches!(primes_up_to(&config), Err(Error::Domain(_))));
    }

    #[test]
    fn shallow_cutoff_warning_threshold() {
        assert!(SieveConfig::new(idx(3), 2_999).cutoff_warning().is_some());
        assert!(SieveConfig::new(idx(3), 3_000).cutoff_warning().is_none());
    }

    #[test]
    fn twin_pairs_up_to_one_hundred() {
        let expect = vec![
            TwinPair { low: 3, high: 5 },
            TwinPair { low: 5, high: 7 },
            TwinPair { low: 11, high: 13 },
            TwinPair { low: 17, high: 19 },
            TwinPair { low: 29, high: 31 },
            TwinPair { low: 41, high: 43 },
            TwinPair { low: 59, high: 61 },
            TwinPair { low: 71, high: 73 },
        ];
        for k in 1..=4u32 {
            let got = twins_up_to(&SieveConfig::new(idx(k), 100)).unwrap();
            assert_eq!(got, expect, "k={k}");
        }
    }

    #[test]
    fn twins_match_classic_across_orders() {
        let expect = classic_twins(10_000);
        for k in 1..=4u32 {
            let got = twins_up_to(&SieveConfig::new(idx(k), 10_000)).unwrap();
            assert_eq!(got, expect, "k={k}");
        }
    }

    #[test]
    fn twins_respect_the_cutoff_on_the_high_member() {
        let got = twins_up_to(&SieveConfig::new(idx(2), 4)).unwrap();
        assert!(got.is_empty());
        let got = twins_up_to(&SieveConfig::new(idx(2), 5)).unwrap();
        assert_eq!(got, vec![TwinPair { low: 3, high: 5 }]);
    }

    #[test]
    fn twins_thread_and_segment_independence() {
        let reference = twins_up_to(&SieveConfig::new(idx(3), 30_000)).unwrap();
        let mut config = SieveConfig::new(idx(3), 30_000);
        config.threads = 4;
        config.segment_size = 97;
        assert_eq!(twins_up_to(&config).unwrap(), reference);
    }

    #[test]
    fn twins_in_one_row_pair() {
        let got = twins_in_pair(idx(2), (4, 6), 50).unwrap();
        let lows: Vec<u64> = got.iter().map(|t| t.low).collect();
        assert_eq!(lows, vec![5, 11, 17, 29, 41]);
        let got = twins_in_pair(idx(3), (16, 18), 100).unwrap();
        assert_eq!(got, vec![TwinPair { low: 17, high: 19 }]);
    }

    #[test]
    fn twins_in_pair_validates() {
        assert!(matches!(
            twins_in_pair(idx(2), (3, 5), 100),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            twins_in_pair(idx(2), (4, 7), 100),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            twins_in_pair(idx(1), (4, 6), 100),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            twins_in_pair(idx(2), (6, 8), 100),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn pair_scan_members_union_to_row_scan() {
        // every prime in rows 4 and 6 of the order-2 matrix shows up in
        // some pair exactly when its partner column is prime too
        let config = SieveConfig::new(idx(2), 1_000);
        let all = primes_up_to(&config).unwrap();
        let twins = twins_up_to(&config).unwrap();
        for t in &twins {
            assert!(all.binary_search(&t.low).is_ok());
            assert!(all.binary_search(&t.high).is_ok());
        }
    }
}
