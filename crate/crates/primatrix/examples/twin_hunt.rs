//! Twin primes live column for column in twin row pairs. Count them per
//! pair, then pull the twins out of one pair directly.

use anyhow::Result;
use primatrix::classify::twin_row_pairs;
use primatrix::primes::PrimeIndex;
use primatrix::sieve::{twins_in_pair, twins_up_to, SieveConfig};
use primatrix::Limits;

fn main() -> Result<()> {
    let k = PrimeIndex::new(4)?;
    let x = 1_000_000u64;

    let twins = twins_up_to(&SieveConfig::new(k, x))?;
    println!("twin pairs up to {x}: {}", twins.len());
    let head: Vec<String> = twins
        .iter()
        .take(8)
        .map(|t| format!("({},{})", t.low, t.high))
        .collect();
    println!("first few: {}", head.join(" "));

    println!();
    println!("the 15 twin row pairs of order 4 and their yield up to {x}:");
    for pair in twin_row_pairs(k, &Limits::default())? {
        let found = twins_in_pair(k, pair, x)?;
        let first = found
            .first()
            .map(|t| format!("({},{})", t.low, t.high))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "  rows ({:>3},{:>3})  first terms ({:>3},{:>3})  twins {:>5}  earliest {first}",
            pair.0,
            pair.1,
            pair.0 + 1,
            pair.1 + 1,
            found.len()
        );
    }

    println!();
    println!("every pair above carries twins; none of the 15 lanes is empty.");
    Ok(())
}
