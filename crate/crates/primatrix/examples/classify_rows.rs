//! Row classification across the first few orders: counts of colored,
//! single, and twin-member rows, next to the closed forms they match.

use anyhow::Result;
use primatrix::classify::classify_matrix;
use primatrix::primes::PrimeIndex;
use primatrix::primorial::{phi_primorial, twin_factorial};
use primatrix::Limits;

fn main() -> Result<()> {
    let limits = Limits::default();
    println!("{:>2} {:>8} {:>7} {:>8} {:>8} {:>6} {:>9} {:>9}",
        "k", "omega", "alpha", "beta", "singles", "pairs", "phi(d)", "twinprod");
    for order in 1..=7u32 {
        let k = PrimeIndex::new(order)?;
        let s = classify_matrix(k, &limits)?;
        let phi = phi_primorial(k)?.value();
        let twins = if order >= 2 {
            twin_factorial(k)?.value().to_string()
        } else {
            "-".to_string()
        };
        println!(
            "{:>2} {:>8} {:>7} {:>8} {:>8} {:>6} {:>9} {:>9}",
            order, s.omega, s.alpha, s.beta, s.alpha_single, s.alpha_twin_pairs, phi, twins
        );
        assert_eq!(s.alpha as u128, phi);
        assert_eq!(s.alpha, s.alpha_single + 2 * s.alpha_twin_pairs);
    }
    println!();
    println!("alpha always equals the totient of the difference, and the");
    println!("uncolored rows always split into singles plus twin pairs.");
    Ok(())
}
