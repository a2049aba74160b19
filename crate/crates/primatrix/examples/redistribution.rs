//! Follow every row of the order-2 matrix into its five children at
//! order 3, then tally a few larger steps.

use anyhow::Result;
use primatrix::primes::PrimeIndex;
use primatrix::transition::{row_children, transition_summary};
use primatrix::Limits;

fn main() -> Result<()> {
    let k3 = PrimeIndex::new(3)?;
    println!("order 2 -> order 3, row by row:");
    for parent in 1..=6u128 {
        let fate = row_children(k3, parent)?;
        let children: Vec<String> = fate
            .children
            .iter()
            .map(|c| format!("{}({})", c.row, c.class.label()))
            .collect();
        println!(
            "  row {parent} [{}] -> {}",
            fate.parent_class.label(),
            children.join(" ")
        );
    }

    println!();
    println!("tallies per step (colored children by parent class):");
    println!(
        "{:>2} {:>10} {:>10} {:>10} {:>12}",
        "k", "beta_s", "beta_b", "beta_t", "alpha_t"
    );
    let limits = Limits::default();
    for order in 2..=6u32 {
        let k = PrimeIndex::new(order)?;
        let t = transition_summary(k, &limits)?;
        println!(
            "{:>2} {:>10} {:>10} {:>10} {:>12}",
            order, t.beta_s, t.beta_b, t.beta_t, t.alpha_t
        );
        assert_eq!(t.beta_s, t.parent.alpha_single);
        assert_eq!(t.beta_t, t.alpha_t);
    }
    println!();
    println!("each twin pair sends exactly two colored members down, and the");
    println!("same number of its uncolored children land as singles.");
    Ok(())
}
