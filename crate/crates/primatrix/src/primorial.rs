//! Shifted primorial products on checked 128-bit integers.
//!
//! Three products over the first k primes drive all the row counting:
//! `p_k#` (row count and progression difference), the totient product
//! `(p_1 - 1)(p_2 - 1)...(p_k - 1)` (uncolored rows), and the twin product
//! `(p_2 - 2)(p_3 - 2)...(p_k - 2)` (twin-row pairs). They are equalities,
//! not estimates, so overflow is a hard error rather than a wrap.

use crate::error::{Error, Result};
use crate::primes::{first_primes, PrimeIndex};
use std::fmt;

/// Exact product of shifted primes. Always >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecialFactorial(u128);

impl SpecialFactorial {
    pub fn value(self) -> u128 {
        self.0
    }
}

impl fmt::Display for SpecialFactorial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn checked_product(factors: impl Iterator<Item = u128>, what: &'static str) -> Result<SpecialFactorial> {
    let mut acc: u128 = 1;
    for f in factors {
        acc = acc.checked_mul(f).ok_or(Error::Overflow(what))?;
    }
    Ok(SpecialFactorial(acc))
}

/// `p_k#`: the product of the first k primes.
pub fn primorial(k: PrimeIndex) -> Result<SpecialFactorial> {
    let primes = first_primes(k)?;
    checked_product(primes.iter().map(|&p| p as u128), "primorial")
}

/// Euler's totient of `p_k#`, as the product of `(p_i - 1)`.
pub fn phi_primorial(k: PrimeIndex) -> Result<SpecialFactorial> {
    let primes = first_primes(k)?;
    checked_product(primes.iter().map(|&p| p as u128 - 1), "totient product")
}

/// The twin product `(p_2 - 2)(p_3 - 2)...(p_k - 2)`; needs k >= 2.
///
/// The factor for `p_1 = 2` would be zero, which is exactly why the product
/// starts at index 2: twin rows do not exist in the order-1 matrix.
pub fn twin_factorial(k: PrimeIndex) -> Result<SpecialFactorial> {
    if k.get() < 2 {
        return Err(Error::domain(format!(
            "twin product needs index >= 2, got {k}"
        )));
    }
    let primes = first_primes(k)?;
    checked_product(primes[1..].iter().map(|&p| p as u128 - 2), "twin product")
}
