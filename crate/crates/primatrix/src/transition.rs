//! Redistribution of rows when the order steps from k-1 to k.
//!
//! Each row of the order k-1 matrix splits into p_k child rows: the child
//! first terms are `l + m * d` for m in 0..p_k, where d is the parent
//! difference. Colored parents produce only colored children. Every
//! uncolored parent produces exactly one colored child (the one whose first
//! term p_k divides) and p_k - 1 uncolored ones. The counts gathered here
//! are observational; the balance identities they satisfy are checked by
//! the verification suite against formula values.

use crate::classify::{
    class_from_bits, summarize_bits, uncolored_bits, ClassificationSummary, RowClass,
    RowDescriptor,
};
use crate::error::{Error, Result};
use crate::matrix::MatrixSpec;
use crate::primes::PrimeIndex;
use crate::Limits;
use num_integer::Integer;

/// Where one parent row's children land.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowFate {
    pub parent_row: u128,
    pub parent_class: RowClass,
    /// The p_k children, ascending by row, classified in the child matrix.
    pub children: Vec<RowDescriptor>,
}

/// Child-side tally of one order step, split by parent class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSummary {
    pub k: PrimeIndex,
    pub parent: ClassificationSummary,
    pub child: ClassificationSummary,
    /// Colored children of single parents.
    pub beta_s: u64,
    /// Colored children of colored parents.
    pub beta_b: u64,
    /// Colored children of twin-member parents.
    pub beta_t: u64,
    /// Uncolored children of twin-member parents that are not twin members
    /// themselves; they land in the child matrix as singles.
    pub alpha_t: u64,
}

fn parent_order(k: PrimeIndex) -> Result<PrimeIndex> {
    k.pred().ok_or_else(|| {
        Error::domain("order steps start at 2; order 1 has no parent matrix".to_string())
    })
}

/// Enumerate one parent row's children and classify them in the child matrix.
pub fn row_children(k: PrimeIndex, parent_row: u128) -> Result<RowFate> {
    let kp = parent_order(k)?;
    let parent_spec = MatrixSpec::new(kp)?;
    let child_spec = MatrixSpec::new(k)?;
    let parent_class = crate::classify::classify_row(&parent_spec, parent_row)?.class;

    let d = parent_spec.difference();
    let p_k = child_spec.difference() / d;
    let mut children = Vec::with_capacity(p_k as usize);
    for m in 0..p_k {
        let child_row = parent_row + m * d;
        children.push(crate::classify::classify_row(&child_spec, child_row)?);
    }
    Ok(RowFate {
        parent_row,
        parent_class,
        children,
    })
}

/// How many of an uncolored parent's children stay uncolored. The parent
/// must be uncolored; colored rows do not split into anything new.
pub fn uncolored_child_count(k: PrimeIndex, parent_row: u128) -> Result<u64> {
    let fate = row_children(k, parent_row)?;
    if fate.parent_class == RowClass::Colored {
        return Err(Error::domain(format!(
            "row {parent_row} is colored; only uncolored rows have uncolored children"
        )));
    }
    Ok(fate
        .children
        .iter()
        .filter(|c| c.class.is_uncolored())
        .count() as u64)
}

/// Twin-row pairs of the child matrix descending from one twin-row pair of
/// the parent. The input must be a genuine parent twin pair.
pub fn twin_pair_children(k: PrimeIndex, pair: (u128, u128)) -> Result<Vec<(u128, u128)>> {
    let kp = parent_order(k)?;
    let parent_spec = MatrixSpec::new(kp)?;
    let (low, high) = pair;
    if high != low + 2 {
        return Err(Error::domain(format!(
            "({low}, {high}) is not an index-distance-2 pair"
        )));
    }
    let d = parent_spec.difference();
    parent_spec.check_row(low)?;
    parent_spec.check_row(high)?;
    if (low + 1).gcd(&d) != 1 || (high + 1).gcd(&d) != 1 {
        return Err(Error::domain(format!(
            "({low}, {high}) is not a twin-row pair of order {kp}"
        )));
    }

    let child_spec = MatrixSpec::new(k)?;
    let dk = child_spec.difference();
    let p_k = dk / d;
    let mut out = Vec::new();
    for m in 0..p_k {
        let low_term = low + 1 + m * d;
        let high_term = low_term + 2;
        if low_term.gcd(&dk) == 1 && high_term.gcd(&dk) == 1 {
            out.push((low_term - 1, high_term - 1));
        }
    }
    Ok(out)
}

/// Tally one whole order step by enumerating every parent row and all of
/// its children. Budgeted by the child matrix's row count.
pub fn transition_summary(k: PrimeIndex, limits: &Limits) -> Result<TransitionSummary> {
    let kp = parent_order(k)?;
    let (omega_k, primes) = crate::classify::enumeration_scope(k, limits)?;
    let p = *primes.last().expect("order >= 2 has primes");
    let omega_prev = omega_k / p;

    let bits_prev = uncolored_bits(omega_prev, &primes[..primes.len() - 1]);
    let bits_k = uncolored_bits(omega_k, &primes);
    let parent = summarize_bits(kp, omega_prev, &bits_prev);
    let child = summarize_bits(k, omega_k, &bits_k);

    let mut beta_s = 0u64;
    let mut beta_b = 0u64;
    let mut beta_t = 0u64;
    let mut alpha_t = 0u64;
    for parent_row in 1..=omega_prev {
        let pclass = class_from_bits(&bits_prev, parent_row, omega_prev);
        // child rows are parent_row + m * omega_prev since the parent
        // difference equals the parent row count
        for m in 0..p {
            let crow = parent_row + m * omega_prev;
            let uncolored = bits_k.get(crow - 1);
            match pclass {
                RowClass::Colored => {
                    debug_assert!(!uncolored, "colored parents color all children");
                    if !uncolored {
                        beta_b += 1;
                    }
                }
                RowClass::Single => {
                    if !uncolored {
                        beta_s += 1;
                    }
                }
                RowClass::TwinMember { .. } => {
                    if !uncolored {
                        beta_t += 1;
                    } else if !matches!(
                        class_from_bits(&bits_k, crow, omega_k),
                        RowClass::TwinMember { .. }
                    ) {
                        alpha_t += 1;
                    }
                }
            }
        }
    }

    Ok(TransitionSummary {
        k,
        parent,
        child,
        beta_s,
        beta_b,
        beta_t,
        alpha_t,
    })
}
