//! Binary-integer encodings for four-valued symbols.
//!
//! Each scheme maps a symbol value in 0..4 to a fixed-width bit block:
//!
//! * `OneHot`, 4 bits: value `v` sets bit `v` only.
//! * `DomainWall`, 3 bits: value `v` sets the first `v` bits, so valid
//!   blocks are a run of ones followed by zeros.
//! * `Binary`, 2 bits: little-endian binary, bit 0 is the least significant.
//! * `Unary`, 3 bits: value is the number of set bits; the canonical block
//!   written by the encoder sets the first `v` bits.
//!
//! Decoding is total. Blocks outside a scheme's valid set are repaired to a
//! nearby value (lowest set bit for one-hot, popcount for domain-wall) and
//! reported through `DecodedSequence::repaired_blocks`. Binary and unary
//! decode every block without repair.

use std::fmt;
use std::str::FromStr;

use rna_thermo::{Base, RnaSequence};
use serde::{Deserialize, Serialize};

use crate::assignment::NucleotideAssignment;
use crate::bits::BitVector;
use crate::error::EncodingError;

/// Binary-integer encoding of a four-valued symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncodingScheme {
    OneHot,
    DomainWall,
    Binary,
    Unary,
}

impl EncodingScheme {
    pub const ALL: [EncodingScheme; 4] = [
        EncodingScheme::OneHot,
        EncodingScheme::DomainWall,
        EncodingScheme::Binary,
        EncodingScheme::Unary,
    ];

    /// Bits used per symbol.
    pub fn bits_per_symbol(self) -> usize {
        match self {
            EncodingScheme::OneHot => 4,
            EncodingScheme::DomainWall => 3,
            EncodingScheme::Binary => 2,
            EncodingScheme::Unary => 3,
        }
    }

    /// Total variable count for a sequence of `num_symbols` symbols.
    pub fn num_bits(self, num_symbols: usize) -> usize {
        self.bits_per_symbol() * num_symbols
    }
}

impl fmt::Display for EncodingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EncodingScheme::OneHot => "one-hot",
            EncodingScheme::DomainWall => "domain-wall",
            EncodingScheme::Binary => "binary",
            EncodingScheme::Unary => "unary",
        };
        f.write_str(name)
    }
}

impl FromStr for EncodingScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "one-hot" => Ok(EncodingScheme::OneHot),
            "domain-wall" => Ok(EncodingScheme::DomainWall),
            "binary" => Ok(EncodingScheme::Binary),
            "unary" => Ok(EncodingScheme::Unary),
            other => Err(format!(
                "unknown encoding scheme {:?}, expected one-hot, domain-wall, binary, or unary",
                other
            )),
        }
    }
}

/// Canonical bit block for a symbol value in 0..4.
pub fn encode_integer(scheme: EncodingScheme, value: usize) -> BitVector {
    assert!(value < 4, "symbol values lie in 0..4");
    let width = scheme.bits_per_symbol();
    let mut bits = vec![0u8; width];
    match scheme {
        EncodingScheme::OneHot => bits[value] = 1,
        EncodingScheme::DomainWall | EncodingScheme::Unary => {
            for bit in bits.iter_mut().take(value) {
                *bit = 1;
            }
        }
        EncodingScheme::Binary => {
            bits[0] = (value & 1) as u8;
            bits[1] = (value >> 1) as u8;
        }
    }
    BitVector::from_bits(bits)
}

/// True when `block` is one of the canonical blocks the scheme's penalty
/// keeps. Binary and unary accept every block.
pub fn block_is_feasible(scheme: EncodingScheme, block: &[u8]) -> bool {
    assert_eq!(block.len(), scheme.bits_per_symbol(), "block width mismatch");
    match scheme {
        EncodingScheme::OneHot => block.iter().filter(|&&b| b == 1).count() == 1,
        EncodingScheme::DomainWall => block.windows(2).all(|w| w[0] >= w[1]),
        EncodingScheme::Binary | EncodingScheme::Unary => true,
    }
}

/// Symbol value for a block. Total: infeasible blocks decode to the repaired
/// value described in the module docs.
pub fn decode_integer(scheme: EncodingScheme, block: &[u8]) -> usize {
    assert_eq!(block.len(), scheme.bits_per_symbol(), "block width mismatch");
    match scheme {
        EncodingScheme::OneHot => block.iter().position(|&b| b == 1).unwrap_or(0),
        EncodingScheme::DomainWall | EncodingScheme::Unary => {
            block.iter().filter(|&&b| b == 1).count()
        }
        EncodingScheme::Binary => (block[0] + 2 * block[1]) as usize,
    }
}

/// Concatenated canonical blocks for a whole sequence.
pub fn sequence_to_bits(
    seq: &RnaSequence,
    scheme: EncodingScheme,
    assignment: &NucleotideAssignment,
) -> BitVector {
    let mut bits = BitVector::default();
    for &base in seq.bases() {
        bits.extend_from(&encode_integer(scheme, assignment.value_of(base)));
    }
    bits
}

/// Sequence decoded from a solver bit vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedSequence {
    pub sequence: RnaSequence,
    /// Number of blocks that were not in the scheme's feasible set.
    pub repaired_blocks: usize,
}

/// Splits `bits` into blocks and decodes each one. The length must be a
/// positive multiple of the scheme's block width.
pub fn bits_to_sequence(
    bits: &BitVector,
    scheme: EncodingScheme,
    assignment: &NucleotideAssignment,
) -> Result<DecodedSequence, EncodingError> {
    let width = scheme.bits_per_symbol();
    if bits.is_empty() || bits.len() % width != 0 {
        return Err(EncodingError::LengthNotDivisible { length: bits.len(), block_size: width });
    }
    let mut bases = Vec::with_capacity(bits.len() / width);
    let mut repaired_blocks = 0;
    for block in bits.bits().chunks(width) {
        if !block_is_feasible(scheme, block) {
            repaired_blocks += 1;
        }
        bases.push(assignment.base_of(decode_integer(scheme, block)));
    }
    let sequence = RnaSequence::new(bases).expect("at least one block");
    Ok(DecodedSequence { sequence, repaired_blocks })
}
