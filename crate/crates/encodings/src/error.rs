//! Error type for bit-string and assignment handling.

use thiserror::Error;

/// Errors raised while parsing bit strings, nucleotide assignments, or
/// building penalty terms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodingError {
    #[error("bit string may only contain '0' and '1', found {found:?} at position {position}")]
    InvalidBitChar { position: usize, found: char },

    #[error("bit vector of length {length} does not split into blocks of {block_size}")]
    LengthNotDivisible { length: usize, block_size: usize },

    #[error("nucleotide assignment needs exactly 4 bases, found {found}")]
    AssignmentLength { found: usize },

    #[error("nucleotide assignment lists {base:?} more than once")]
    AssignmentDuplicate { base: char },

    #[error("nucleotide assignment contains {found:?} at position {position}, expected one of A, U, G, C")]
    AssignmentBadChar { position: usize, found: char },

    #[error("penalty weight must be positive and finite, got {mu}")]
    NonPositivePenalty { mu: f64 },
}
