//! Arrange the integers `2, 3, 4, ...` into a virtual matrix whose rows are
//! arithmetic progressions with a primorial difference, and everything about
//! primes up to a cutoff becomes a statement about rows.
//!
//! For a wheel order `k`, let `d = p_1 * p_2 * ... * p_k` (the primorial,
//! written `p_k#`). The matrix of order `k` has `d` rows; row `i` holds the
//! progression `i+1, i+1+d, i+1+2d, ...`. Rows whose first term shares a
//! factor with `d` ("colored" rows) contain at most one prime. The remaining
//! rows, one per unit residue mod `d`, carry every other prime. Pairs of
//! uncolored rows exactly two indices apart are where twin primes live.
//!
//! The crate makes that construction operational:
//!
//! * [`primorial`] - exact shifted-primorial arithmetic (`p#`, totient and
//!   twin products) on checked 128-bit integers.
//! * [`matrix`] - coordinate arithmetic: value from (row, column) and back.
//! * [`classify`] - colored / single / twin-member row classification and
//!   the count vector per order.
//! * [`transition`] - how rows of order `k-1` redistribute into `p_k` child
//!   rows of order `k`, with exact bookkeeping of who stays uncolored.
//! * [`sieve`] - a segmented wheel sieve over the uncolored rows, plus the
//!   classical sieve it is checked against.
//! * [`density`] - per-row prime censuses, exact rational density
//!   recurrences, and a logarithmic-integral reference comparison.
//! * [`verify`] - the full identity suite as one runnable report.
//! * [`report`] - table / CSV / JSON rendering for the CLI.
//!
//! Start with the runnable programs in `examples/`; each one exercises a
//! capability end to end.

pub mod classify;
pub mod density;
pub mod error;
pub mod matrix;
pub mod primes;
pub mod primorial;
pub mod report;
pub mod sieve;
pub mod transition;
pub mod verify;

pub use classify::{ClassificationSummary, RowClass, RowDescriptor};
pub use density::{DensityReport, RowCensus};
pub use error::{Error, Result};
pub use matrix::{Coordinates, MatrixSpec};
pub use primes::PrimeIndex;
pub use primorial::SpecialFactorial;
pub use sieve::{SieveConfig, TwinPair};
pub use transition::{RowFate, TransitionSummary};

/// Resource guard rails for operations whose cost grows with the primorial.
///
/// `max_rows` bounds how many rows an enumeration may touch (the row count
/// IS the primorial, so this caps the wheel order); `max_x` bounds sieve
/// cutoffs. Defaults allow orders up to 8 and cutoffs up to 10^8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rows: u64,
    pub max_x: u64,
}

pub const DEFAULT_MAX_ROWS: u64 = 10_000_000;
pub const DEFAULT_MAX_X: u64 = 100_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rows: DEFAULT_MAX_ROWS,
            max_x: DEFAULT_MAX_X,
        }
    }
}
