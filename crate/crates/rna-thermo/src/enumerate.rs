//! Exhaustive enumeration of valid secondary structures.
//!
//! Intended as a ground-truth oracle for short sequences: summing Boltzmann
//! weights over the full list reproduces the partition function, and the
//! minimum reproduces the MFE. Exponential in length, hence the hard cap.

use crate::energy::allowed_pair;
use crate::error::ThermoError;
use crate::sequence::RnaSequence;
use crate::structure::{SecondaryStructure, MIN_PAIR_SPAN};

/// Generates every pseudoknot-free structure of `seq` whose pairs are allowed
/// and span at least the minimum. Fails if the sequence is longer than
/// `max_len`.
///
/// Order is deterministic: positions are decided left to right, and at each
/// position leaving it unpaired comes before pairing it, with partners in
/// ascending order. The open chain is therefore always the first element.
pub fn enumerate_structures(
    seq: &RnaSequence,
    max_len: usize,
) -> Result<Vec<SecondaryStructure>, ThermoError> {
    let n = seq.len();
    if n > max_len {
        return Err(ThermoError::SequenceTooLong {
            length: n,
            limit: max_len,
        });
    }
    let mut out = Vec::new();
    let mut pairs: Vec<Option<usize>> = vec![None; n];
    // half-open intervals still to fill, topmost first
    let mut work: Vec<(usize, usize)> = vec![(0, n)];
    recurse(seq, &mut work, &mut pairs, &mut out);
    Ok(out)
}

fn recurse(
    seq: &RnaSequence,
    work: &mut Vec<(usize, usize)>,
    pairs: &mut Vec<Option<usize>>,
    out: &mut Vec<SecondaryStructure>,
) {
    // each call pops exactly one item and restores it before returning
    let top = work.pop();
    match top {
        None => {
            out.push(
                SecondaryStructure::from_pairs(pairs.clone())
                    .expect("disjoint intervals cannot produce an invalid structure"),
            );
            return;
        }
        Some((i, j)) if i >= j => {
            recurse(seq, work, pairs, out);
        }
        Some((i, j)) => {
            // i unpaired
            work.push((i + 1, j));
            recurse(seq, work, pairs, out);
            work.pop();
            // i paired with k; the two remaining regions are disjoint, so no
            // crossing can arise
            for k in i + MIN_PAIR_SPAN..j {
                if allowed_pair(seq.base(i), seq.base(k)) {
                    pairs[i] = Some(k);
                    pairs[k] = Some(i);
                    work.push((k + 1, j));
                    work.push((i + 1, k));
                    recurse(seq, work, pairs, out);
                    work.pop();
                    work.pop();
                    pairs[i] = None;
                    pairs[k] = None;
                }
            }
        }
    }
    work.push(top.expect("restored interval exists"));
}
