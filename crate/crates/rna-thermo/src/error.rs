use thiserror::Error;

/// Errors for sequence/structure parsing and thermodynamic evaluation.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum ThermoError {
    #[error("invalid nucleotide {found:?} at position {position} (expected one of A, C, G, U)")]
    InvalidNucleotide { position: usize, found: char },

    #[error("empty sequence")]
    EmptySequence,

    #[error("illegal character {found:?} at position {position} (expected '.', '(' or ')')")]
    IllegalCharacter { position: usize, found: char },

    #[error("unbalanced brackets: {detail} at position {position}")]
    UnbalancedBrackets { position: usize, detail: String },

    #[error("hairpin too short: pair ({open}, {close}) encloses fewer than {min_unpaired} unpaired positions")]
    HairpinTooShort {
        open: usize,
        close: usize,
        min_unpaired: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("pair table is not symmetric at position {position}")]
    AsymmetricPairTable { position: usize },

    #[error("crossing pairs ({i}, {j}) and ({k}, {l})")]
    CrossingPairs {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },

    #[error("bases {first}{second} at pair ({i}, {j}) cannot pair")]
    DisallowedPair {
        i: usize,
        j: usize,
        first: char,
        second: char,
    },

    #[error("sequence of length {length} exceeds enumeration limit {limit}")]
    SequenceTooLong { length: usize, limit: usize },

    #[error("invalid energy model: {0}")]
    InvalidEnergyModel(String),
}
