//! Loop-based energy model and free energy of a fixed structure.
//!
//! The model is a simplified nearest-neighbor scheme:
//! - stacking energies for the six allowed pairs (A-U, U-A, G-C, C-G, G-U, U-G)
//! - hairpin penalty: constant at the minimum size, logarithmic above it
//! - bulge and internal loop penalties linear in unpaired size
//! - multibranch loops pay a constant per adjacent helix, nothing else
//! - exterior bases and helices are free
//!
//! Parameters live in a JSON data file (see `data/default_energy.json` for the
//! schema); `EnergyModel::default_model` loads the shipped set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::ThermoError;
use crate::sequence::{Base, RnaSequence};
use crate::structure::SecondaryStructure;

/// One of the six allowed ordered pairs, read 5' to 3' on the opening strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairType {
    AU,
    UA,
    GC,
    CG,
    GU,
    UG,
}

impl PairType {
    pub const COUNT: usize = 6;
    pub const ALL: [PairType; 6] = [
        PairType::AU,
        PairType::UA,
        PairType::GC,
        PairType::CG,
        PairType::GU,
        PairType::UG,
    ];

    pub fn from_bases(a: Base, b: Base) -> Option<PairType> {
        match (a, b) {
            (Base::A, Base::U) => Some(PairType::AU),
            (Base::U, Base::A) => Some(PairType::UA),
            (Base::G, Base::C) => Some(PairType::GC),
            (Base::C, Base::G) => Some(PairType::CG),
            (Base::G, Base::U) => Some(PairType::GU),
            (Base::U, Base::G) => Some(PairType::UG),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            PairType::AU => "AU",
            PairType::UA => "UA",
            PairType::GC => "GC",
            PairType::CG => "CG",
            PairType::GU => "GU",
            PairType::UG => "UG",
        }
    }
}

/// Whether two bases may pair (Watson-Crick plus G-U wobble).
pub fn allowed_pair(a: Base, b: Base) -> bool {
    PairType::from_bases(a, b).is_some()
}

/// Parameter set for the simplified nearest-neighbor model. All energies in
/// kcal/mol, temperature in kelvin, gas constant in kcal/(mol K).
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyModel {
    temperature: f64,
    gas_constant: f64,
    stack: [[f64; PairType::COUNT]; PairType::COUNT],
    hairpin_size3: f64,
    hairpin_base: f64,
    hairpin_log_coefficient: f64,
    bulge_base: f64,
    bulge_per_unpaired: f64,
    internal_base: f64,
    internal_per_unpaired: f64,
    multibranch_per_branch: f64,
}

#[derive(Serialize, Deserialize)]
struct EnergyModelFile {
    #[serde(default)]
    description: String,
    temperature_kelvin: f64,
    gas_constant: f64,
    stack: BTreeMap<String, BTreeMap<String, f64>>,
    hairpin: HairpinFile,
    bulge: LinearLoopFile,
    internal: LinearLoopFile,
    multibranch: MultibranchFile,
}

#[derive(Serialize, Deserialize)]
struct HairpinFile {
    size3: f64,
    base: f64,
    log_coefficient: f64,
}

#[derive(Serialize, Deserialize)]
struct LinearLoopFile {
    base: f64,
    per_unpaired: f64,
}

#[derive(Serialize, Deserialize)]
struct MultibranchFile {
    per_branch: f64,
}

const DEFAULT_ENERGY_JSON: &str = include_str!("../data/default_energy.json");

impl EnergyModel {
    /// The parameter set shipped with the crate.
    pub fn default_model() -> EnergyModel {
        EnergyModel::from_json_str(DEFAULT_ENERGY_JSON)
            .expect("shipped energy parameters must parse")
    }

    /// Parses and validates a parameter file.
    pub fn from_json_str(json: &str) -> Result<EnergyModel, ThermoError> {
        let file: EnergyModelFile = serde_json::from_str(json)
            .map_err(|e| ThermoError::InvalidEnergyModel(e.to_string()))?;
        let mut stack = [[0.0; PairType::COUNT]; PairType::COUNT];
        for outer in PairType::ALL {
            let row = file.stack.get(outer.name()).ok_or_else(|| {
                ThermoError::InvalidEnergyModel(format!("missing stack row {}", outer.name()))
            })?;
            for inner in PairType::ALL {
                let value = row.get(inner.name()).ok_or_else(|| {
                    ThermoError::InvalidEnergyModel(format!(
                        "missing stack entry {}/{}",
                        outer.name(),
                        inner.name()
                    ))
                })?;
                stack[outer.index()][inner.index()] = *value;
            }
        }
        let model = EnergyModel {
            temperature: file.temperature_kelvin,
            gas_constant: file.gas_constant,
            stack,
            hairpin_size3: file.hairpin.size3,
            hairpin_base: file.hairpin.base,
            hairpin_log_coefficient: file.hairpin.log_coefficient,
            bulge_base: file.bulge.base,
            bulge_per_unpaired: file.bulge.per_unpaired,
            internal_base: file.internal.base,
            internal_per_unpaired: file.internal.per_unpaired,
            multibranch_per_branch: file.multibranch.per_branch,
        };
        model.validate()?;
        Ok(model)
    }

    /// Serializes the model in the data-file schema.
    pub fn to_json_string(&self) -> String {
        let mut stack = BTreeMap::new();
        for outer in PairType::ALL {
            let mut row = BTreeMap::new();
            for inner in PairType::ALL {
                row.insert(
                    inner.name().to_string(),
                    self.stack[outer.index()][inner.index()],
                );
            }
            stack.insert(outer.name().to_string(), row);
        }
        let file = EnergyModelFile {
            description: String::new(),
            temperature_kelvin: self.temperature,
            gas_constant: self.gas_constant,
            stack,
            hairpin: HairpinFile {
                size3: self.hairpin_size3,
                base: self.hairpin_base,
                log_coefficient: self.hairpin_log_coefficient,
            },
            bulge: LinearLoopFile {
                base: self.bulge_base,
                per_unpaired: self.bulge_per_unpaired,
            },
            internal: LinearLoopFile {
                base: self.internal_base,
                per_unpaired: self.internal_per_unpaired,
            },
            multibranch: MultibranchFile {
                per_branch: self.multibranch_per_branch,
            },
        };
        serde_json::to_string_pretty(&file).expect("energy model serialization cannot fail")
    }

    fn validate(&self) -> Result<(), ThermoError> {
        let err = |msg: &str| Err(ThermoError::InvalidEnergyModel(msg.to_string()));
        if !(self.temperature > 0.0) {
            return err("temperature_kelvin must be positive");
        }
        if !(self.gas_constant > 0.0) {
            return err("gas_constant must be positive");
        }
        for row in &self.stack {
            for &v in row {
                if !v.is_finite() {
                    return err("stack energies must be finite");
                }
            }
        }
        let finite = [
            self.hairpin_size3,
            self.hairpin_base,
            self.hairpin_log_coefficient,
            self.bulge_base,
            self.bulge_per_unpaired,
            self.internal_base,
            self.internal_per_unpaired,
            self.multibranch_per_branch,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return err("loop penalties must be finite");
        }
        // Loop penalties must not decrease with size.
        if self.hairpin_log_coefficient < 0.0
            || self.bulge_per_unpaired < 0.0
            || self.internal_per_unpaired < 0.0
        {
            return err("loop penalties must be non-decreasing in size");
        }
        if self.hairpin_penalty(4) < self.hairpin_size3 {
            return err("hairpin penalty must be non-decreasing from size 3 to 4");
        }
        Ok(())
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// RT in kcal/mol.
    pub fn rt(&self) -> f64 {
        self.gas_constant * self.temperature
    }

    /// Stacking energy of `inner` directly inside `outer`.
    pub fn stack_energy(&self, outer: PairType, inner: PairType) -> f64 {
        self.stack[outer.index()][inner.index()]
    }

    /// Hairpin penalty for `size >= 3` unpaired bases.
    pub fn hairpin_penalty(&self, size: usize) -> f64 {
        debug_assert!(size >= 3);
        if size == 3 {
            self.hairpin_size3
        } else {
            self.hairpin_base + self.hairpin_log_coefficient * (size as f64 / 3.0).ln()
        }
    }

    /// Bulge penalty for `size >= 1` unpaired bases on one side.
    pub fn bulge_penalty(&self, size: usize) -> f64 {
        debug_assert!(size >= 1);
        self.bulge_base + self.bulge_per_unpaired * size as f64
    }

    /// Internal loop penalty for `size >= 2` total unpaired bases.
    pub fn internal_penalty(&self, size: usize) -> f64 {
        debug_assert!(size >= 2);
        self.internal_base + self.internal_per_unpaired * size as f64
    }

    /// Multibranch loop penalty for `branches` adjacent helices, the closing
    /// helix included.
    pub fn multibranch_penalty(&self, branches: usize) -> f64 {
        self.multibranch_per_branch * branches as f64
    }
}

impl Default for EnergyModel {
    fn default() -> Self {
        EnergyModel::default_model()
    }
}

/// Energy of the loop closed by pair (i, j) with single interior pair (p, q):
/// a stack, a bulge, or an internal loop depending on the unpaired counts.
/// Both pairs must be allowed; i < p < q < j.
pub fn two_loop_energy(
    seq: &RnaSequence,
    i: usize,
    j: usize,
    p: usize,
    q: usize,
    model: &EnergyModel,
) -> f64 {
    debug_assert!(i < p && p < q && q < j);
    let outer = PairType::from_bases(seq.base(i), seq.base(j)).expect("outer pair must be allowed");
    let inner = PairType::from_bases(seq.base(p), seq.base(q)).expect("inner pair must be allowed");
    let left = p - i - 1;
    let right = j - q - 1;
    if left == 0 && right == 0 {
        model.stack_energy(outer, inner)
    } else if left == 0 || right == 0 {
        model.bulge_penalty(left + right)
    } else {
        model.internal_penalty(left + right)
    }
}

/// Free energy of `structure` on `seq` in kcal/mol, by loop decomposition.
/// Fails if lengths differ or any pair is not an allowed pair.
pub fn free_energy(
    seq: &RnaSequence,
    structure: &SecondaryStructure,
    model: &EnergyModel,
) -> Result<f64, ThermoError> {
    if seq.len() != structure.len() {
        return Err(ThermoError::LengthMismatch {
            left: seq.len(),
            right: structure.len(),
        });
    }
    for (i, j) in structure.base_pairs() {
        if !allowed_pair(seq.base(i), seq.base(j)) {
            return Err(ThermoError::DisallowedPair {
                i,
                j,
                first: seq.base(i).to_char(),
                second: seq.base(j).to_char(),
            });
        }
    }
    let mut energy = 0.0;
    for (i, j) in structure.base_pairs() {
        // Pairs directly accessible from (i, j).
        let mut children: Vec<(usize, usize)> = Vec::new();
        let mut p = i + 1;
        while p < j {
            if let Some(q) = structure.partner(p) {
                debug_assert!(q > p, "nested structure cannot close an outer pair here");
                children.push((p, q));
                p = q + 1;
            } else {
                p += 1;
            }
        }
        energy += match children.len() {
            0 => model.hairpin_penalty(j - i - 1),
            1 => {
                let (p, q) = children[0];
                two_loop_energy(seq, i, j, p, q, model)
            }
            h => model.multibranch_penalty(h + 1),
        };
    }
    Ok(energy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> RnaSequence {
        s.parse().unwrap()
    }

    fn structure(s: &str) -> SecondaryStructure {
        s.parse().unwrap()
    }

    #[test]
    fn default_model_parses_and_round_trips() {
        let model = EnergyModel::default_model();
        let again = EnergyModel::from_json_str(&model.to_json_string()).unwrap();
        assert_eq!(model, again);
    }

    #[test]
    fn gc_stacks_are_strongest_au_and_gu_weakest() {
        let model = EnergyModel::default_model();
        let gc_on_gc = model
            .stack_energy(PairType::GC, PairType::GC)
            .min(model.stack_energy(PairType::CG, PairType::CG));
        for outer in PairType::ALL {
            for inner in PairType::ALL {
                let v = model.stack_energy(outer, inner);
                assert!(v < 0.0, "stack {}/{} must stabilize", outer.name(), inner.name());
                assert!(gc_on_gc <= v, "G-C on G-C must be the most negative stack");
            }
        }
        let weakest = PairType::ALL
            .iter()
            .flat_map(|&o| PairType::ALL.iter().map(move |&i| (o, i)))
            .max_by(|a, b| {
                model
                    .stack_energy(a.0, a.1)
                    .partial_cmp(&model.stack_energy(b.0, b.1))
                    .unwrap()
            })
            .unwrap();
        assert!(
            !matches!(weakest.0, PairType::GC | PairType::CG)
                || !matches!(weakest.1, PairType::GC | PairType::CG),
            "the weakest stack must involve an A-U or G-U pair"
        );
    }

    #[test]
    fn open_chain_has_zero_energy() {
        let model = EnergyModel::default_model();
        let s = structure(".....");
        assert_eq!(free_energy(&seq("AAAAA"), &s, &model).unwrap(), 0.0);
    }

    #[test]
    fn lone_hairpin_pays_only_the_loop() {
        let model = EnergyModel::default_model();
        let fe = free_energy(&seq("GAAAC"), &structure("(...)"), &model).unwrap();
        assert!((fe - 5.4).abs() < 1e-12, "hairpin of size 3 costs size3, got {fe}");
        let fe4 = free_energy(&seq("GAAAAC"), &structure("(....)"), &model).unwrap();
        let expected = 5.6 + 1.1 * (4.0f64 / 3.0).ln();
        assert!((fe4 - expected).abs() < 1e-12);
    }

    #[test]
    fn wobble_pairs_are_allowed() {
        let model = EnergyModel::default_model();
        assert!(free_energy(&seq("GAAAU"), &structure("(...)"), &model).is_ok());
        assert!(free_energy(&seq("UAAAG"), &structure("(...)"), &model).is_ok());
    }

    #[test]
    fn disallowed_pair_is_an_error() {
        let model = EnergyModel::default_model();
        let err = free_energy(&seq("GAAAA"), &structure("(...)"), &model).unwrap_err();
        assert_eq!(
            err,
            ThermoError::DisallowedPair {
                i: 0,
                j: 4,
                first: 'G',
                second: 'A'
            }
        );
    }

    #[test]
    fn stacked_hairpin_sums_stacks_and_loop() {
        let model = EnergyModel::default_model();
        let fe = free_energy(&seq("GGGGAAAACCCC"), &structure("((((....))))"), &model).unwrap();
        let expected = 3.0 * (-3.3) + 5.6 + 1.1 * (4.0f64 / 3.0).ln();
        assert!((fe - expected).abs() < 1e-12, "got {fe}, want {expected}");
    }

    #[test]
    fn bulge_interrupts_stacking() {
        let model = EnergyModel::default_model();
        let fe = free_energy(&seq("GGAGGAAAACCCC"), &structure("((.((....))))"), &model).unwrap();
        // stack + bulge(1) + stack + hairpin(4)
        let expected = -3.3 + (3.3 + 0.3) + -3.3 + 5.6 + 1.1 * (4.0f64 / 3.0).ln();
        assert!((fe - expected).abs() < 1e-12, "got {fe}, want {expected}");
    }

    #[test]
    fn internal_loop_counts_both_sides() {
        let model = EnergyModel::default_model();
        let fe = free_energy(&seq("GAGGAAAACCAC"), &structure("(.((....)).)"), &model).unwrap();
        // internal(2) + stack + hairpin(4)
        let expected = (1.7 + 0.3 * 2.0) + -3.3 + 5.6 + 1.1 * (4.0f64 / 3.0).ln();
        assert!((fe - expected).abs() < 1e-12, "got {fe}, want {expected}");
    }

    #[test]
    fn multibranch_charges_per_helix() {
        let model = EnergyModel::default_model();
        let fe = free_energy(&seq("GGAAACGAAACC"), &structure("((...)(...))"), &model).unwrap();
        // two hairpins of size 3 plus a three-branch multiloop
        let expected = 2.0 * 5.4 + 3.0 * 1.4;
        assert!((fe - expected).abs() < 1e-12, "got {fe}, want {expected}");
    }

    #[test]
    fn exterior_bases_and_helices_are_free() {
        let model = EnergyModel::default_model();
        let one = free_energy(&seq("GAAAC"), &structure("(...)"), &model).unwrap();
        let two = free_energy(&seq("GAAACAAGAAAC"), &structure("(...)..(...)"), &model).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-12, "exterior must contribute nothing");
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let model = EnergyModel::default_model();
        assert!(matches!(
            free_energy(&seq("GAAAC"), &structure("......"), &model),
            Err(ThermoError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rt_matches_temperature_and_gas_constant() {
        let model = EnergyModel::default_model();
        assert!((model.rt() - 0.0019872 * 310.15).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_size_slopes() {
        let mut json: serde_json::Value =
            serde_json::from_str(DEFAULT_ENERGY_JSON).unwrap();
        json["bulge"]["per_unpaired"] = serde_json::json!(-1.0);
        assert!(matches!(
            EnergyModel::from_json_str(&json.to_string()),
            Err(ThermoError::InvalidEnergyModel(_))
        ));
    }
}
