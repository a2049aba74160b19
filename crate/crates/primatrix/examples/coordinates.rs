//! Element and locate are inverses: any integer >= 2 has exactly one cell
//! in each order, and column 1 of a row never moves once the order grows
//! past the row's first term.

use anyhow::Result;
use primatrix::matrix::{element, first_column_stable, locate, Coordinates, MatrixSpec};
use primatrix::primes::PrimeIndex;

fn main() -> Result<()> {
    let k4 = MatrixSpec::new(PrimeIndex::new(4)?)?;
    println!(
        "order 4: {} rows, difference {}",
        k4.row_count(),
        k4.difference()
    );

    for z in [2u128, 29, 97, 210, 211, 1_000_003] {
        let c = locate(&k4, z)?;
        let back = element(&k4, c)?;
        println!("  {z:>9} sits at row {:>3}, column {:>6}", c.row, c.column);
        assert_eq!(back, z);
    }

    let c = Coordinates { row: 6, column: 3 };
    println!();
    println!("  row 6 column 3 holds {}", element(&k4, c)?);

    println!();
    println!("first-column stability when the order steps from 2 to 3:");
    for z in [5u128, 7, 11, 29, 31] {
        let stable = first_column_stable(PrimeIndex::new(2)?, z)?;
        println!("  {z:>3} stays in column 1: {stable}");
    }
    println!();
    println!("5 and 7 open rows in both orders; 11, 29, and 31 open rows of");
    println!("the order-3 matrix but sit in later columns at order 2.");
    Ok(())
}
