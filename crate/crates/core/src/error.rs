use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors shared across the crate.
///
/// The variants map onto the CLI exit codes: `InvalidInput` is a usage
/// error, `BudgetExhausted` means a search ran out of candidates or
/// iterations, and `Undetermined` means a certificate could not be
/// produced within its enumeration cap (never a wrong answer).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("branch point hit: {0}")]
    BranchPoint(String),

    #[error("local obstruction at p = {0} outside the allowed set")]
    LocalObstruction(BigUint),

    #[error("incomplete factorization: composite cofactor {0} within budget")]
    IncompleteFactorization(BigInt),

    #[error("reducible polynomial: {0}")]
    Reducible(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("undetermined: {0}")]
    Undetermined(String),

    #[error("group order cap {cap} exceeded during closure")]
    OrderCapExceeded { cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
