//! Bit vectors exchanged between encoders, surrogate models, and solvers.
//!
//! * Each entry is 0 or 1, stored as a `u8` so it can feed arithmetic
//!   directly.
//! * Serialization uses the compact string form `"0110"` rather than a JSON
//!   array; run records hold many of these.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::EncodingError;

/// Fixed-length vector of binary variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    /// Wraps raw bits. Every entry must already be 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bit entries must be 0 or 1");
        BitVector(bits)
    }

    /// All-zeros vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, index: usize) -> u8 {
        self.0[index]
    }

    pub fn set(&mut self, index: usize, value: u8) {
        assert!(value <= 1, "bit entries must be 0 or 1");
        self.0[index] = value;
    }

    /// Flips the bit at `index`.
    pub fn flip(&mut self, index: usize) {
        self.0[index] ^= 1;
    }

    /// Appends the bits of `other`.
    pub fn extend_from(&mut self, other: &BitVector) {
        self.0.extend_from_slice(&other.0);
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming_distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len(), other.len(), "hamming distance needs equal lengths");
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = EncodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                found => return Err(EncodingError::InvalidBitChar { position, found }),
            }
        }
        Ok(BitVector(bits))
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct BitVectorVisitor;

impl Visitor<'_> for BitVectorVisitor {
    type Value = BitVector;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a string of '0' and '1' characters")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        v.parse().map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_str(BitVectorVisitor)
    }
}
