//! Pseudoknot-free secondary structures as pair tables.
//!
//! A structure of length L is a pair table `pairs` where `pairs[i]` is the
//! partner of position i, or None when i is unpaired. Invariants:
//! - symmetry: `pairs[pairs[i]] == i`
//! - no crossings (nested pairs only)
//! - every pair spans at least `MIN_PAIR_SPAN` positions, so a hairpin
//!   encloses at least `MIN_HAIRPIN_UNPAIRED` unpaired bases

use std::fmt;
use std::str::FromStr;

use crate::error::ThermoError;

/// Minimum number of unpaired positions enclosed by a hairpin.
pub const MIN_HAIRPIN_UNPAIRED: usize = 3;

/// Minimum span j - i of a pair (i, j). Equivalent to the hairpin rule.
pub const MIN_PAIR_SPAN: usize = MIN_HAIRPIN_UNPAIRED + 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SecondaryStructure {
    pairs: Vec<Option<usize>>,
}

impl SecondaryStructure {
    /// Builds a structure from a pair table, validating all invariants.
    pub fn from_pairs(pairs: Vec<Option<usize>>) -> Result<Self, ThermoError> {
        if pairs.is_empty() {
            return Err(ThermoError::EmptySequence);
        }
        let n = pairs.len();
        for i in 0..n {
            if let Some(j) = pairs[i] {
                if j >= n || pairs[j] != Some(i) || i == j {
                    return Err(ThermoError::AsymmetricPairTable { position: i });
                }
                if i < j && j - i < MIN_PAIR_SPAN {
                    return Err(ThermoError::HairpinTooShort {
                        open: i,
                        close: j,
                        min_unpaired: MIN_HAIRPIN_UNPAIRED,
                    });
                }
            }
        }
        let s = SecondaryStructure { pairs };
        if let Some((i, j, k, l)) = s.first_crossing() {
            return Err(ThermoError::CrossingPairs { i, j, k, l });
        }
        Ok(s)
    }

    /// Builds the open chain (no pairs) of length n >= 1.
    pub fn open_chain(n: usize) -> Result<Self, ThermoError> {
        if n == 0 {
            return Err(ThermoError::EmptySequence);
        }
        Ok(SecondaryStructure {
            pairs: vec![None; n],
        })
    }

    fn first_crossing(&self) -> Option<(usize, usize, usize, usize)> {
        let bp = self.base_pairs();
        for (a, &(i, j)) in bp.iter().enumerate() {
            for &(k, l) in &bp[a + 1..] {
                // base_pairs is sorted by opening position, so i < k.
                if k < j && j < l {
                    return Some((i, j, k, l));
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairs[i]
    }

    pub fn is_paired(&self, i: usize) -> bool {
        self.pairs[i].is_some()
    }

    pub fn pair_table(&self) -> &[Option<usize>] {
        &self.pairs
    }

    /// All pairs (i, j) with i < j, sorted by opening position.
    pub fn base_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.filter(|&j| i < j).map(|j| (i, j)))
            .collect()
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.iter().flatten().count() / 2
    }

    pub fn to_dot_bracket(&self) -> String {
        self.pairs
            .iter()
            .enumerate()
            .map(|(i, &p)| match p {
                Some(j) if i < j => '(',
                Some(_) => ')',
                None => '.',
            })
            .collect()
    }
}

impl FromStr for SecondaryStructure {
    type Err = ThermoError;

    /// Parses dot-bracket notation with '.', '(' and ')'.
    fn from_str(s: &str) -> Result<Self, ThermoError> {
        let chars: Vec<char> = s.chars().collect();
        if chars.is_empty() {
            return Err(ThermoError::EmptySequence);
        }
        let mut pairs: Vec<Option<usize>> = vec![None; chars.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (position, &c) in chars.iter().enumerate() {
            match c {
                '.' => {}
                '(' => stack.push(position),
                ')' => {
                    let open = stack.pop().ok_or_else(|| ThermoError::UnbalancedBrackets {
                        position,
                        detail: "')' without matching '('".to_string(),
                    })?;
                    if position - open < MIN_PAIR_SPAN {
                        return Err(ThermoError::HairpinTooShort {
                            open,
                            close: position,
                            min_unpaired: MIN_HAIRPIN_UNPAIRED,
                        });
                    }
                    pairs[open] = Some(position);
                    pairs[position] = Some(open);
                }
                found => return Err(ThermoError::IllegalCharacter { position, found }),
            }
        }
        if let Some(&open) = stack.last() {
            return Err(ThermoError::UnbalancedBrackets {
                position: open,
                detail: "'(' without matching ')'".to_string(),
            });
        }
        Ok(SecondaryStructure { pairs })
    }
}

impl fmt::Display for SecondaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dot_bracket())
    }
}

/// Number of positions whose pairing status differs between two structures
/// of equal length (different partner counts as a difference).
pub fn structure_distance(
    a: &SecondaryStructure,
    b: &SecondaryStructure,
) -> Result<usize, ThermoError> {
    if a.len() != b.len() {
        return Err(ThermoError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok((0..a.len()).filter(|&i| a.pairs[i] != b.pairs[i]).count())
}
