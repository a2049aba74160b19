//! Sieve primes by scanning only the uncolored rows, and race the result
//! against a classic sieve over the full number line.

use std::time::Instant;

use anyhow::Result;
use primatrix::primes::{primes_up_to as classic, PrimeIndex};
use primatrix::sieve::{primes_up_to, SieveConfig};

fn main() -> Result<()> {
    let x = 10_000_000u64;

    let start = Instant::now();
    let reference = classic(x);
    let classic_ms = start.elapsed().as_secs_f64() * 1e3;
    println!("classic sieve: {} primes in {classic_ms:.1} ms", reference.len());

    for order in [2u32, 4, 6] {
        let mut config = SieveConfig::new(PrimeIndex::new(order)?, x);
        config.threads = 4;
        let start = Instant::now();
        let primes = primes_up_to(&config)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        assert_eq!(primes, reference);
        println!(
            "order {order} rows:  {} primes in {ms:.1} ms ({} uncolored residues of {})",
            primes.len(),
            primatrix::primorial::phi_primorial(config.k)?.value(),
            primatrix::primorial::primorial(config.k)?.value(),
        );
    }

    println!();
    println!("same primes every time; the rows only decide how much of the");
    println!("number line never gets touched.");
    Ok(())
}
