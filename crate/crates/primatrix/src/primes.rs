//! Prime sequence backing: a classical bit-packed sieve and the 1-based
//! index type the rest of the crate keys everything on.

use crate::error::{Error, Result};
use std::fmt;

/// Default ceiling for the bootstrap sieve behind [`nth_prime`].
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// 1-based position in the prime sequence: index 1 is 2, index 4 is 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIndex(u32);

impl PrimeIndex {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("prime index is 1-based; 0 is invalid"));
        }
        Ok(PrimeIndex(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Index one step down, if there is one.
    pub fn pred(self) -> Option<PrimeIndex> {
        (self.0 > 1).then(|| PrimeIndex(self.0 - 1))
    }

    pub fn succ(self) -> PrimeIndex {
        PrimeIndex(self.0 + 1)
    }
}

impl fmt::Display for PrimeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for PrimeIndex {
    type Error = Error;

    fn try_from(k: u32) -> Result<Self> {
        PrimeIndex::new(k)
    }
}

/// Plain sieve of Eratosthenes over `0..=limit`, one bit per integer.
///
/// This is the crate's ground truth for primality at desk scale: the wheel
/// sieve is tested against it and the density censuses read from it.
pub struct Sieve {
    limit: u64,
    words: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Sieve {
        let nbits = limit as usize + 1;
        let words = vec![u64::MAX; nbits.div_ceil(64)];
        let mut s = Sieve { limit, words };
        s.clear(0);
        if limit >= 1 {
            s.clear(1);
        }
        let mut p = 2u64;
        while p * p <= limit {
            if s.is_prime(p) {
                let mut m = p * p;
                while m <= limit {
                    s.clear(m);
                    m += p;
                }
            }
            p += 1;
        }
        // Shed the tail bits past `limit` so popcounts stay honest.
        let spare = words_spare_bits(nbits);
        if spare > 0 {
            if let Some(last) = s.words.last_mut() {
                *last &= u64::MAX >> spare;
            }
        }
        s
    }

    #[inline]
    fn clear(&mut self, n: u64) {
        self.words[(n / 64) as usize] &= !(1u64 << (n % 64));
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit, "sieve queried past its limit");
        self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.is_prime(n))
    }
}

fn words_spare_bits(nbits: usize) -> u32 {
    let rem = nbits % 64;
    if rem == 0 {
        0
    } else {
        64 - rem as u32
    }
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    Sieve::new(limit).iter().collect()
}

/// The k-th prime, sieving no further than [`DEFAULT_SIEVE_BOUND`].
pub fn nth_prime(k: PrimeIndex) -> Result<u64> {
    nth_prime_within(k, DEFAULT_SIEVE_BOUND)
}

/// The k-th prime, sieving no further than `bound`.
///
/// The sieve grows on demand in doubling steps, so small indices never pay
/// for the full bound.
pub fn nth_prime_within(k: PrimeIndex, bound: u64) -> Result<u64> {
    let k = k.get() as usize;
    // p_k < k (ln k + ln ln k) for k >= 6; below that 16 covers everything.
    let mut guess = if k >= 6 {
        let kf = k as f64;
        (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 1
    } else {
        16
    };
    loop {
        if guess > bound {
            guess = bound;
        }
        let primes = primes_up_to(guess);
        if primes.len() >= k {
            return Ok(primes[k - 1]);
        }
        if guess == bound {
            return Err(Error::budget(format!(
                "prime index {k} not reachable with sieve bound {bound}"
            )));
        }
        guess = (guess * 2).min(bound);
    }
}

/// The first k primes, ascending.
pub fn first_primes(k: PrimeIndex) -> Result<Vec<u64>> {
    let pk = nth_prime(k)?;
    let mut v = primes_up_to(pk);
    v.truncate(k.get() as usize);
    Ok(v)
}

/// Trial-division primality. Deliberately independent of the sieves; used
/// where a handful of small numbers need checking on a second route.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
