//! Coordinate arithmetic for the virtual matrix of order k.
//!
//! Row `i` (1-based) holds the arithmetic progression whose first term is
//! `l = i + 1` and whose difference is the primorial `d = p_k#`; the cell at
//! column `j` is `(i + 1) + d * (j - 1)`. Every integer >= 2 lands in
//! exactly one cell. The number 1 sits outside the matrix and has no
//! coordinates. Nothing is ever stored; a matrix is its arithmetic.

use crate::error::{Error, Result};
use crate::primes::PrimeIndex;
use crate::primorial::{primorial, SpecialFactorial};

/// Shape of the order-k matrix: difference and row count are both `p_k#`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixSpec {
    k: PrimeIndex,
    difference: SpecialFactorial,
    row_count: SpecialFactorial,
}

impl MatrixSpec {
    pub fn new(k: PrimeIndex) -> Result<Self> {
        let d = primorial(k)?;
        Ok(MatrixSpec {
            k,
            difference: d,
            row_count: d,
        })
    }

    pub fn k(&self) -> PrimeIndex {
        self.k
    }

    /// The progression difference `d = p_k#`.
    pub fn difference(&self) -> u128 {
        self.difference.value()
    }

    /// Number of rows; equal to the difference by construction.
    pub fn row_count(&self) -> u128 {
        self.row_count.value()
    }

    /// First term `l = row + 1` of a row's progression.
    pub fn first_term(&self, row: u128) -> Result<u128> {
        self.check_row(row)?;
        Ok(row + 1)
    }

    pub(crate) fn check_row(&self, row: u128) -> Result<()> {
        if row < 1 || row > self.row_count() {
            return Err(Error::range(format!(
                "row {row} outside 1..={} for order {}",
                self.row_count(),
                self.k
            )));
        }
        Ok(())
    }
}

/// 1-based (row, column) cell address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coordinates {
    pub row: u128,
    pub column: u128,
}

/// Value of the cell at `coords`: `(row + 1) + d * (column - 1)`.
pub fn element(spec: &MatrixSpec, coords: Coordinates) -> Result<u128> {
    spec.check_row(coords.row)?;
    if coords.column < 1 {
        return Err(Error::range("column indices start at 1".to_string()));
    }
    let d = spec.difference();
    let offset = d
        .checked_mul(coords.column - 1)
        .ok_or(Error::Overflow("cell value"))?;
    (coords.row + 1)
        .checked_add(offset)
        .ok_or(Error::Overflow("cell value"))
}

/// Cell holding the integer `z`; rejects `z < 2`, which has no cell.
pub fn locate(spec: &MatrixSpec, z: u128) -> Result<Coordinates> {
    if z < 2 {
        return Err(Error::domain(format!(
            "{z} has no coordinates; the matrix starts at 2"
        )));
    }
    let d = spec.difference();
    Ok(Coordinates {
        row: (z - 2) % d + 1,
        column: (z - 2) / d + 1,
    })
}

/// Does `z` keep its cell when the order steps from k to k+1?
///
/// Guaranteed true for every first-column entry: the order-(k+1) difference
/// is a multiple of the order-k one, and first-column values are at most
/// `d_k + 1`.
pub fn first_column_stable(k: PrimeIndex, z: u128) -> Result<bool> {
    let here = locate(&MatrixSpec::new(k)?, z)?;
    let next = locate(&MatrixSpec::new(k.succ())?, z)?;
    Ok(here == next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: u32) -> MatrixSpec {
        MatrixSpec::new(PrimeIndex::new(k).unwrap()).unwrap()
    }

    #[test]
    fn element_examples() {
        let a2 = spec(2);
        assert_eq!(element(&a2, Coordinates { row: 4, column: 5 }).unwrap(), 29);
        assert_eq!(element(&a2, Coordinates { row: 1, column: 1 }).unwrap(), 2);
        let a3 = spec(3);
        assert_eq!(element(&a3, Coordinates { row: 30, column: 2 }).unwrap(), 61);
    }

    #[test]
    fn locate_examples() {
        let a2 = spec(2);
        assert_eq!(locate(&a2, 29).unwrap(), Coordinates { row: 4, column: 5 });
        assert_eq!(locate(&a2, 2).unwrap(), Coordinates { row: 1, column: 1 });
        let a3 = spec(3);
        assert_eq!(locate(&a3, 7).unwrap(), Coordinates { row: 6, column: 1 });
    }

    #[test]
    fn one_has_no_cell() {
        let err = locate(&spec(2), 1).unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "got {err:?}");
        assert!(locate(&spec(2), 0).is_err());
    }

    #[test]
    fn bad_coordinates_are_rejected() {
        let a2 = spec(2);
        assert!(matches!(
            element(&a2, Coordinates { row: 7, column: 1 }),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            element(&a2, Coordinates { row: 0, column: 1 }),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            element(&a2, Coordinates { row: 1, column: 0 }),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn element_overflow_is_detected() {
        let a2 = spec(2);
        let err = element(
            &a2,
            Coordinates {
                row: 1,
                column: u128::MAX,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Overflow(_)), "got {err:?}");
    }

    #[test]
    fn stability_examples() {
        let k1 = PrimeIndex::new(1).unwrap();
        let k2 = PrimeIndex::new(2).unwrap();
        assert!(first_column_stable(k2, 7).unwrap());
        assert!(!first_column_stable(k2, 29).unwrap());
        assert!(first_column_stable(k1, 3).unwrap());
    }

    #[test]
    fn exhaustive_roundtrip_small_orders() {
        for k in 1..=4u32 {
            let s = spec(k);
            for z in 2..=2_000u128 {
                let c = locate(&s, z).unwrap();
                assert!(c.row >= 1 && c.row <= s.row_count());
                assert!(c.column >= 1);
                assert_eq!(element(&s, c).unwrap(), z, "k={k} z={z}");
            }
        }
    }

    #[test]
    fn row_progression_step_is_the_difference() {
        let a3 = spec(3);
        for row in 1..=30u128 {
            for col in 1..=5u128 {
                let a = element(&a3, Coordinates { row, column: col }).unwrap();
                let b = element(
                    &a3,
                    Coordinates {
                        row,
                        column: col + 1,
                    },
                )
                .unwrap();
                assert_eq!(b - a, a3.difference());
            }
        }
    }
}
