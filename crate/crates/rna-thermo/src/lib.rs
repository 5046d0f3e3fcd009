//! RNA secondary structure thermodynamics under a simplified
//! nearest-neighbor model.
//!
//! The crate provides:
//! - sequence and structure types with dot-bracket parsing
//! - a loop-based energy model loaded from a JSON data file
//! - free energy of a fixed structure by loop decomposition
//! - partition function with pair probabilities (inside/outside DP)
//! - ensemble defect against a target structure
//! - minimum free energy structure with deterministic tie-breaking
//! - exhaustive structure enumeration for short sequences, used as the
//!   ground-truth oracle in tests
//!
//! Conventions: pairs are A-U, U-A, G-C, C-G, G-U, U-G; every pair spans at
//! least four positions (hairpins enclose at least three unpaired bases);
//! lonely pairs are allowed; pseudoknots are not.

pub mod energy;
pub mod enumerate;
pub mod error;
pub mod mfe;
pub mod partition;
pub mod sequence;
pub mod structure;

pub use energy::{allowed_pair, free_energy, two_loop_energy, EnergyModel, PairType};
pub use enumerate::enumerate_structures;
pub use error::ThermoError;
pub use mfe::mfe_structure;
pub use partition::{ensemble_defect, partition_function, EnsembleDefect, PartitionResult};
pub use sequence::{Base, RnaSequence};
pub use structure::{structure_distance, SecondaryStructure, MIN_HAIRPIN_UNPAIRED, MIN_PAIR_SPAN};
