//! RNA sequences over the four-letter alphabet.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ThermoError;

/// A single nucleotide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    A,
    U,
    G,
    C,
}

impl Base {
    /// All four bases in a fixed order. The order is also the integer code
    /// used when sampling sequences uniformly.
    pub const ALL: [Base; 4] = [Base::A, Base::U, Base::G, Base::C];

    pub fn from_char(c: char) -> Option<Base> {
        match c.to_ascii_uppercase() {
            'A' => Some(Base::A),
            'U' => Some(Base::U),
            'G' => Some(Base::G),
            'C' => Some(Base::C),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::U => 'U',
            Base::G => 'G',
            Base::C => 'C',
        }
    }

    /// Position of the base in `ALL`, usable as an array index.
    pub fn index(self) -> usize {
        match self {
            Base::A => 0,
            Base::U => 1,
            Base::G => 2,
            Base::C => 3,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A non-empty RNA sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RnaSequence {
    bases: Vec<Base>,
}

impl RnaSequence {
    /// Builds a sequence from bases. Fails on an empty input.
    pub fn new(bases: Vec<Base>) -> Result<Self, ThermoError> {
        if bases.is_empty() {
            return Err(ThermoError::EmptySequence);
        }
        Ok(RnaSequence { bases })
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn base(&self, i: usize) -> Base {
        self.bases[i]
    }
}

impl FromStr for RnaSequence {
    type Err = ThermoError;

    /// Parses a sequence; case-insensitive, no whitespace allowed.
    fn from_str(s: &str) -> Result<Self, ThermoError> {
        let mut bases = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match Base::from_char(c) {
                Some(b) => bases.push(b),
                None => return Err(ThermoError::InvalidNucleotide { position, found: c }),
            }
        }
        RnaSequence::new(bases)
    }
}

impl fmt::Display for RnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bases {
            write!(f, "{}", b.to_char())?;
        }
        Ok(())
    }
}
