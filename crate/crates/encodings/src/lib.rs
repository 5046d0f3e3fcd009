//! Binary-integer encodings of nucleotide sequences.
//!
//! Sequence design over {A, U, G, C} is rephrased as optimization over
//! binary variables. This crate provides:
//!
//! * four block encodings of a four-valued symbol (one-hot, domain-wall,
//!   binary, unary) with total decoders that repair infeasible blocks,
//! * permutations assigning integer values to bases, since the choice of
//!   which base a value denotes is itself a tunable,
//! * quadratic penalty terms that steer quadratic-model solvers back onto
//!   each scheme's feasible blocks.

pub mod assignment;
pub mod bits;
pub mod error;
pub mod penalty;
pub mod scheme;

pub use assignment::NucleotideAssignment;
pub use bits::BitVector;
pub use error::EncodingError;
pub use penalty::{penalty_qubo, PenaltyTerms};
pub use scheme::{
    bits_to_sequence, block_is_feasible, decode_integer, encode_integer, sequence_to_bits,
    DecodedSequence, EncodingScheme,
};
