//! Mapping between integer symbol values and nucleotides.
//!
//! * An assignment is a permutation of the four bases; value `k` encodes the
//!   base at position `k`.
//! * The textual form lists the bases in value order, e.g. `"GAUC"` maps
//!   0 to G, 1 to A, 2 to U, and 3 to C.

use std::fmt;
use std::str::FromStr;

use rna_thermo::Base;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::EncodingError;

/// Permutation assigning one base to each integer value in 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NucleotideAssignment {
    order: [Base; 4],
}

impl NucleotideAssignment {
    /// Builds an assignment from an explicit base order. The order must name
    /// each base exactly once.
    pub fn new(order: [Base; 4]) -> Result<Self, EncodingError> {
        let mut seen = [false; 4];
        for &base in &order {
            if seen[base.index()] {
                return Err(EncodingError::AssignmentDuplicate { base: base.to_char() });
            }
            seen[base.index()] = true;
        }
        Ok(NucleotideAssignment { order })
    }

    /// Base encoded by integer value `value`.
    pub fn base_of(&self, value: usize) -> Base {
        self.order[value]
    }

    /// Integer value encoding `base`.
    pub fn value_of(&self, base: Base) -> usize {
        self.order.iter().position(|&b| b == base).expect("assignment is a permutation")
    }

    /// All 24 assignments, ordered lexicographically by their textual form.
    pub fn all() -> Vec<NucleotideAssignment> {
        let mut orders = Vec::with_capacity(24);
        for &a in &Base::ALL {
            for &b in &Base::ALL {
                for &c in &Base::ALL {
                    for &d in &Base::ALL {
                        if let Ok(assignment) = NucleotideAssignment::new([a, b, c, d]) {
                            orders.push(assignment);
                        }
                    }
                }
            }
        }
        orders.sort_by_key(|a| a.to_string());
        orders
    }
}

/// Value order A, U, G, C.
impl Default for NucleotideAssignment {
    fn default() -> Self {
        NucleotideAssignment { order: Base::ALL }
    }
}

impl fmt::Display for NucleotideAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &base in &self.order {
            write!(f, "{}", base.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for NucleotideAssignment {
    type Err = EncodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 4 {
            return Err(EncodingError::AssignmentLength { found: chars.len() });
        }
        let mut order = [Base::A; 4];
        for (position, &c) in chars.iter().enumerate() {
            order[position] = Base::from_char(c)
                .ok_or(EncodingError::AssignmentBadChar { position, found: c })?;
        }
        NucleotideAssignment::new(order)
    }
}

impl Serialize for NucleotideAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct AssignmentVisitor;

impl Visitor<'_> for AssignmentVisitor {
    type Value = NucleotideAssignment;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a 4-character permutation of A, U, G, C")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        v.parse().map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for NucleotideAssignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_str(AssignmentVisitor)
    }
}
