//! Row classification for the order-k matrix.
//!
//! A row is colored when its first term shares a factor with the difference;
//! such rows hold at most one prime. Uncolored rows split further: a row is
//! a twin member when the row exactly two indices away (no wraparound) is
//! also uncolored, and single otherwise. Twin primes larger than the wheel
//! primes can only sit in twin-member rows, column for column.

use crate::error::{Error, Result};
use crate::matrix::MatrixSpec;
use crate::primes::{first_primes, PrimeIndex};
use crate::Limits;
use num_integer::Integer;

/// How one row relates to the prime structure of its matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowClass {
    /// First term shares a factor with the difference.
    Colored,
    /// Uncolored with no uncolored row at index distance 2.
    Single,
    /// Uncolored, paired with the uncolored row `partner` two indices away.
    TwinMember { partner: u128 },
}

impl RowClass {
    pub fn is_uncolored(self) -> bool {
        !matches!(self, RowClass::Colored)
    }

    pub fn label(self) -> &'static str {
        match self {
            RowClass::Colored => "colored",
            RowClass::Single => "single",
            RowClass::TwinMember { .. } => "twin-member",
        }
    }
}

/// One classified row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowDescriptor {
    pub row: u128,
    pub first_term: u128,
    pub class: RowClass,
}

/// Count vector for a whole matrix order.
///
/// Invariants (checked by the test suite, not trusted):
/// `alpha = alpha_single + 2 * alpha_twin_pairs`, `omega = alpha + beta`,
/// `omega = p_k#`, `alpha` equals the totient product, and for k >= 2
/// `alpha_twin_pairs` equals the twin product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassificationSummary {
    pub k: PrimeIndex,
    pub omega: u64,
    pub alpha: u64,
    pub beta: u64,
    pub alpha_single: u64,
    pub alpha_twin_pairs: u64,
}

/// Classify a single row by coordinate arithmetic alone; works for any
/// order whose primorial fits 128 bits, regardless of enumeration budgets.
pub fn classify_row(spec: &MatrixSpec, row: u128) -> Result<RowDescriptor> {
    spec.check_row(row)?;
    let d = spec.difference();
    let l = row + 1;
    let uncolored = |first: u128| first.gcd(&d) == 1;

    let class = if !uncolored(l) {
        RowClass::Colored
    } else {
        let below = row >= 3 && uncolored(l - 2);
        let above = row + 2 <= spec.row_count() && uncolored(l + 2);
        // Three uncolored rows in a row-index arithmetic span of 4 would
        // need three consecutive odd residues all coprime to d; one of them
        // is divisible by 3 whenever 3 | d, and order 1 has only two rows.
        assert!(
            !(below && above),
            "uncolored chain at row {row} of order {}",
            spec.k()
        );
        if below {
            RowClass::TwinMember { partner: row - 2 }
        } else if above {
            RowClass::TwinMember { partner: row + 2 }
        } else {
            RowClass::Single
        }
    };

    Ok(RowDescriptor {
        row,
        first_term: l,
        class,
    })
}

/// Classify every row of the order-k matrix and return the count vector.
pub fn classify_matrix(k: PrimeIndex, limits: &Limits) -> Result<ClassificationSummary> {
    let (omega, primes) = enumeration_scope(k, limits)?;
    let bits = uncolored_bits(omega, &primes);
    Ok(summarize_bits(k, omega, &bits))
}

/// All twin-row pairs `(low, low + 2)` of the order-k matrix, ascending.
pub fn twin_row_pairs(k: PrimeIndex, limits: &Limits) -> Result<Vec<(u64, u64)>> {
    if k.get() < 2 {
        return Err(Error::domain(format!(
            "twin rows need order >= 2, got {k}; order 1 has only two rows"
        )));
    }
    let (omega, primes) = enumeration_scope(k, limits)?;
    let bits = uncolored_bits(omega, &primes);
    let mut pairs = Vec::new();
    for low in 1..=omega.saturating_sub(2) {
        if bits.get(low - 1) && bits.get(low + 1) {
            pairs.push((low, low + 2));
        }
    }
    Ok(pairs)
}

/// Eager descriptor table for every row; meant for small orders.
pub fn row_descriptors(k: PrimeIndex, limits: &Limits) -> Result<Vec<RowDescriptor>> {
    let (omega, primes) = enumeration_scope(k, limits)?;
    let bits = uncolored_bits(omega, &primes);
    let mut rows = Vec::with_capacity(omega as usize);
    for row in 1..=omega {
        let class = class_from_bits(&bits, row, omega);
        rows.push(RowDescriptor {
            row: row as u128,
            first_term: row as u128 + 1,
            class,
        });
    }
    Ok(rows)
}

/// Budget check shared by every whole-matrix enumeration: the row count is
/// the primorial, so it must fit the row budget (and u64 row arithmetic).
pub(crate) fn enumeration_scope(k: PrimeIndex, limits: &Limits) -> Result<(u64, Vec<u64>)> {
    let omega = crate::primorial::primorial(k)?.value();
    if omega > limits.max_rows as u128 {
        return Err(Error::budget(format!(
            "order {k} has {omega} rows, over the {} row budget",
            limits.max_rows
        )));
    }
    Ok((omega as u64, first_primes(k)?))
}

/// Fixed-size bit set over `1..=len` used for uncolored-row flags.
pub(crate) struct Bits {
    words: Vec<u64>,
    len: u64,
}

impl Bits {
    fn ones(len: u64) -> Bits {
        let nwords = (len as usize).div_ceil(64);
        let mut words = vec![u64::MAX; nwords];
        let rem = (len % 64) as u32;
        if rem != 0 {
            if let Some(last) = words.last_mut() {
                *last = u64::MAX >> (64 - rem);
            }
        }
        Bits { words, len }
    }

    #[inline]
    fn clear(&mut self, i: u64) {
        self.words[(i / 64) as usize] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub(crate) fn get(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub(crate) fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub(crate) fn len(&self) -> u64 {
        self.len
    }
}

/// Bit `row - 1` is set iff row `row` is uncolored, i.e. its first term
/// `row + 1` is divisible by none of the wheel primes. Filled by striding
/// each prime over the first terms `2..=omega + 1`.
pub(crate) fn uncolored_bits(omega: u64, primes: &[u64]) -> Bits {
    let mut bits = Bits::ones(omega);
    for &p in primes {
        let mut l = p;
        while l <= omega + 1 {
            // first term l sits at row l - 1, stored at bit l - 2
            if l >= 2 {
                bits.clear(l - 2);
            }
            l += p;
        }
    }
    bits
}

pub(crate) fn class_from_bits(bits: &Bits, row: u64, omega: u64) -> RowClass {
    if !bits.get(row - 1) {
        return RowClass::Colored;
    }
    let below = row >= 3 && bits.get(row - 3);
    let above = row + 2 <= omega && bits.get(row + 1);
    assert!(!(below && above), "uncolored chain at row {row}");
    if below {
        RowClass::TwinMember {
            partner: row as u128 - 2,
        }
    } else if above {
        RowClass::TwinMember {
            partner: row as u128 + 2,
        }
    } else {
        RowClass::Single
    }
}

pub(crate) fn summarize_bits(k: PrimeIndex, omega: u64, bits: &Bits) -> ClassificationSummary {
    debug_assert_eq!(bits.len(), omega);
    let alpha = bits.count();
    let mut pairs = 0u64;
    let mut singles = 0u64;
    for row in 1..=omega {
        if !bits.get(row - 1) {
            continue;
        }
        let below = row >= 3 && bits.get(row - 3);
        let above = row + 2 <= omega && bits.get(row + 1);
        assert!(!(below && above), "uncolored chain at row {row}");
        if above {
            pairs += 1;
        }
        if !below && !above {
            singles += 1;
        }
    }
    ClassificationSummary {
        k,
        omega,
        alpha,
        beta: omega - alpha,
        alpha_single: singles,
        alpha_twin_pairs: pairs,
    }
}
