//! Partition function, pair probabilities, and ensemble defect.
//!
//! Inside/outside dynamic programming over a loop decomposition grammar that
//! scores structures exactly like `free_energy`:
//! - `qb(i, j)`: pair (i, j) closes a hairpin, a two-loop (stack, bulge,
//!   internal) with inner pair (p, q), or a multibranch loop
//! - `qm1(i, k)`: exactly one multiloop branch starting at i, trailing
//!   unpaired bases free
//! - `qm(i, k)`: one or more multiloop branches, split at the last branch
//! - exterior: split at the first paired position
//!
//! Each structure has exactly one derivation, so the Boltzmann sum is exact.
//! All tables hold logarithms; sums use streaming log-add. That keeps the DP
//! stable for sequences up to several hundred bases.

use crate::energy::{allowed_pair, two_loop_energy, EnergyModel};
use crate::error::ThermoError;
use crate::sequence::RnaSequence;
use crate::structure::{SecondaryStructure, MIN_PAIR_SPAN};

const NEG_INF: f64 = f64::NEG_INFINITY;

/// log(exp(a) + exp(b)) without leaving log space.
#[inline]
fn logaddexp(a: f64, b: f64) -> f64 {
    if a == NEG_INF {
        return b;
    }
    if b == NEG_INF {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Boltzmann statistics of the structure ensemble of one sequence.
#[derive(Clone, Debug)]
pub struct PartitionResult {
    /// Natural log of the partition function (open chain has weight 1).
    pub log_z: f64,
    /// Symmetric matrix of pair probabilities; entries with |i - j| below the
    /// minimum pair span are zero.
    pub pair_prob: Vec<Vec<f64>>,
    /// Per-position probability of being unpaired: 1 - sum of the row above.
    pub unpaired_prob: Vec<f64>,
}

impl PartitionResult {
    pub fn len(&self) -> usize {
        self.unpaired_prob.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Runs the inside/outside DP for `seq` under `model`.
pub fn partition_function(seq: &RnaSequence, model: &EnergyModel) -> PartitionResult {
    let n = seq.len();
    let rt = model.rt();
    // log Boltzmann weight of an energy term
    let w = |e: f64| -e / rt;
    let lb = w(model.multibranch_penalty(1));
    let idx = |i: usize, j: usize| i * n + j;

    let mut lqb = vec![NEG_INF; n * n];
    let mut lqm = vec![NEG_INF; n * n];
    let mut lqm1 = vec![NEG_INF; n * n];

    for span in MIN_PAIR_SPAN..n {
        for i in 0..n - span {
            let j = i + span;
            if allowed_pair(seq.base(i), seq.base(j)) {
                let mut acc = w(model.hairpin_penalty(j - i - 1));
                for p in i + 1..j {
                    for q in p + MIN_PAIR_SPAN..j {
                        let inner = lqb[idx(p, q)];
                        if inner != NEG_INF {
                            acc = logaddexp(acc, w(two_loop_energy(seq, i, j, p, q, model)) + inner);
                        }
                    }
                }
                // k is the start of the last branch; [i+1, k-1] holds the rest
                for k in i + 2..j.saturating_sub(1) {
                    let rest = lqm[idx(i + 1, k - 1)];
                    let last = lqm1[idx(k, j - 1)];
                    if rest != NEG_INF && last != NEG_INF {
                        acc = logaddexp(acc, lb + rest + last);
                    }
                }
                lqb[idx(i, j)] = acc;
            }
            {
                let mut acc = NEG_INF;
                for l in i + MIN_PAIR_SPAN..=j {
                    let b = lqb[idx(i, l)];
                    if b != NEG_INF {
                        acc = logaddexp(acc, b + lb);
                    }
                }
                lqm1[idx(i, j)] = acc;
            }
            {
                let mut acc = NEG_INF;
                for k in i..=j {
                    let m1 = lqm1[idx(k, j)];
                    if m1 == NEG_INF {
                        continue;
                    }
                    // all-unpaired prefix (possibly empty), then >= 1 branch
                    acc = logaddexp(acc, m1);
                    if k > i {
                        let m = lqm[idx(i, k - 1)];
                        if m != NEG_INF {
                            acc = logaddexp(acc, m + m1);
                        }
                    }
                }
                lqm[idx(i, j)] = acc;
            }
        }
    }

    // Exterior, split at the first paired position. lqs[s] covers [s, n-1],
    // lqp[p] covers [0, p-1]; the two give the same total by different sums.
    let mut lqs = vec![0.0; n + 1];
    for s in (0..n).rev() {
        let mut acc = lqs[s + 1];
        for e in s + MIN_PAIR_SPAN..n {
            let b = lqb[idx(s, e)];
            if b != NEG_INF {
                acc = logaddexp(acc, b + lqs[e + 1]);
            }
        }
        lqs[s] = acc;
    }
    let mut lqp = vec![0.0; n + 1];
    for p in 1..=n {
        let last = p - 1;
        let mut acc = lqp[last];
        if last >= MIN_PAIR_SPAN {
            for d in 0..=last - MIN_PAIR_SPAN {
                let b = lqb[idx(d, last)];
                if b != NEG_INF {
                    acc = logaddexp(acc, lqp[d] + b);
                }
            }
        }
        lqp[p] = acc;
    }
    let log_z = lqs[0];
    debug_assert!(
        (lqp[n] - log_z).abs() <= 1e-9 * (1.0 + log_z.abs()),
        "prefix and suffix exterior sums disagree: {} vs {log_z}",
        lqp[n]
    );

    // Outside pass, largest spans first. Within one interval the order is
    // om -> om1 -> ob, matching the same-interval terms of the grammar.
    let mut lob = vec![NEG_INF; n * n];
    let mut lom = vec![NEG_INF; n * n];
    let mut lom1 = vec![NEG_INF; n * n];

    for span in (MIN_PAIR_SPAN..n).rev() {
        for i in 0..n - span {
            let j = i + span;
            let om = lom[idx(i, j)];
            if om != NEG_INF {
                // qm term with empty prefix (k = i)
                lom1[idx(i, j)] = logaddexp(lom1[idx(i, j)], om);
            }
            let om1 = lom1[idx(i, j)];
            let qb_ij = lqb[idx(i, j)];
            if qb_ij != NEG_INF {
                if om1 != NEG_INF {
                    // qm1 term with no trailing unpaired bases (l = j)
                    lob[idx(i, j)] = logaddexp(lob[idx(i, j)], om1 + lb);
                }
                // top-level context
                lob[idx(i, j)] = logaddexp(lob[idx(i, j)], lqp[i] + lqs[j + 1]);
            }
            let ob = lob[idx(i, j)];

            if ob != NEG_INF && qb_ij != NEG_INF {
                for p in i + 1..j {
                    for q in p + MIN_PAIR_SPAN..j {
                        if lqb[idx(p, q)] != NEG_INF {
                            let t = ob + w(two_loop_energy(seq, i, j, p, q, model));
                            lob[idx(p, q)] = logaddexp(lob[idx(p, q)], t);
                        }
                    }
                }
                for k in i + 2..j.saturating_sub(1) {
                    let rest = lqm[idx(i + 1, k - 1)];
                    let last = lqm1[idx(k, j - 1)];
                    if last != NEG_INF {
                        lom[idx(i + 1, k - 1)] =
                            logaddexp(lom[idx(i + 1, k - 1)], ob + lb + last);
                    }
                    if rest != NEG_INF {
                        lom1[idx(k, j - 1)] = logaddexp(lom1[idx(k, j - 1)], ob + lb + rest);
                    }
                }
            }
            if om != NEG_INF {
                for k in i + 1..=j {
                    // prefix all-unpaired or >= 1 branch
                    let with_prefix = logaddexp(0.0, lqm[idx(i, k - 1)]);
                    lom1[idx(k, j)] = logaddexp(lom1[idx(k, j)], om + with_prefix);
                    let m1 = lqm1[idx(k, j)];
                    if m1 != NEG_INF {
                        lom[idx(i, k - 1)] = logaddexp(lom[idx(i, k - 1)], om + m1);
                    }
                }
            }
            if om1 != NEG_INF {
                for l in i + MIN_PAIR_SPAN..j {
                    if lqb[idx(i, l)] != NEG_INF {
                        lob[idx(i, l)] = logaddexp(lob[idx(i, l)], om1 + lb);
                    }
                }
            }
        }
    }

    let mut pair_prob = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + MIN_PAIR_SPAN..n {
            let lq = lqb[idx(i, j)];
            let lo = lob[idx(i, j)];
            if lq != NEG_INF && lo != NEG_INF {
                let p = (lq + lo - log_z).exp();
                pair_prob[i][j] = p;
                pair_prob[j][i] = p;
            }
        }
    }
    let unpaired_prob = (0..n)
        .map(|i| 1.0 - pair_prob[i].iter().sum::<f64>())
        .collect();

    PartitionResult {
        log_z,
        pair_prob,
        unpaired_prob,
    }
}

/// Ensemble defect of `seq` against `target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleDefect {
    /// Expected number of positions paired differently than in the target.
    pub defect: f64,
    /// Defect divided by sequence length; always in [0, 1].
    pub normalized: f64,
}

/// Expected distance between the thermodynamic ensemble of `seq` and the
/// target structure. Positions the target pairs contribute 1 - p(i, j);
/// positions it leaves open contribute 1 - p(i unpaired). The target needs no
/// relation to the sequence beyond equal length.
pub fn ensemble_defect(
    seq: &RnaSequence,
    target: &SecondaryStructure,
    model: &EnergyModel,
) -> Result<EnsembleDefect, ThermoError> {
    if seq.len() != target.len() {
        return Err(ThermoError::LengthMismatch {
            left: seq.len(),
            right: target.len(),
        });
    }
    let part = partition_function(seq, model);
    let mut phi = seq.len() as f64;
    for i in 0..seq.len() {
        match target.partner(i) {
            Some(j) => phi -= part.pair_prob[i][j],
            None => phi -= part.unpaired_prob[i],
        }
    }
    // guard float dust around an exact 0 or L
    let phi = phi.max(0.0);
    let normalized = (phi / seq.len() as f64).min(1.0);
    Ok(EnsembleDefect {
        defect: phi,
        normalized,
    })
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
    fn unpairable_sequence_has_unit_partition_function() {
        let model = EnergyModel::default_model();
        let part = partition_function(&seq("AAAAAAAA"), &model);
        assert_eq!(part.log_z, 0.0);
        for i in 0..8 {
            assert_eq!(part.unpaired_prob[i], 1.0);
            assert!(part.pair_prob[i].iter().all(|&p| p == 0.0));
        }
    }

    #[test]
    fn single_pair_ensemble_matches_hand_sum() {
        let model = EnergyModel::default_model();
        // GAAAC folds into the open chain or one pair of energy hairpin(3)
        let part = partition_function(&seq("GAAAC"), &model);
        let w = (-5.4 / model.rt()).exp();
        let expect_log_z = (1.0 + w).ln();
        assert!(
            (part.log_z - expect_log_z).abs() < 1e-12,
            "log Z {} vs {}",
            part.log_z,
            expect_log_z
        );
        let p = w / (1.0 + w);
        assert!((part.pair_prob[0][4] - p).abs() < 1e-12);
        assert!((part.pair_prob[4][0] - p).abs() < 1e-12);
        assert!((part.unpaired_prob[0] - (1.0 - p)).abs() < 1e-12);
        assert_eq!(part.pair_prob[1][4], 0.0, "A cannot pair");
    }

    #[test]
    fn strong_hairpin_dominates_its_ensemble() {
        let model = EnergyModel::default_model();
        let part = partition_function(&seq("GGGGAAAACCCC"), &model);
        assert!(
            part.pair_prob[0][11] > 0.5,
            "outermost stem pair should dominate, got {}",
            part.pair_prob[0][11]
        );
    }

    #[test]
    fn pair_probability_rows_are_subnormalized() {
        let model = EnergyModel::default_model();
        for s in ["GGGGAAAACCCC", "GCGCGCAAAGCGCGC", "GGAAACGAAACC"] {
            let part = partition_function(&seq(s), &model);
            for i in 0..part.len() {
                let row: f64 = part.pair_prob[i].iter().sum();
                assert!(row <= 1.0 + 1e-9, "row {i} of {s} sums to {row}");
                assert!(part.unpaired_prob[i] >= -1e-9);
            }
        }
    }

    #[test]
    fn defect_is_zero_when_ensemble_is_the_target() {
        let model = EnergyModel::default_model();
        let d = ensemble_defect(&seq("AAAAAAAA"), &structure("........"), &model).unwrap();
        assert_eq!(d.defect, 0.0);
        assert_eq!(d.normalized, 0.0);
    }

    #[test]
    fn good_designs_score_low_bad_designs_high() {
        let model = EnergyModel::default_model();
        let target = structure("((((....))))");
        let good = ensemble_defect(&seq("GGGGAAAACCCC"), &target, &model).unwrap();
        let bad = ensemble_defect(&seq("AAAAAAAAAAAA"), &target, &model).unwrap();
        assert!(good.normalized < 0.2, "strong stem design: {}", good.normalized);
        assert!(bad.normalized > 0.6, "unpairable design: {}", bad.normalized);
        assert!(good.normalized < bad.normalized);
        for d in [good, bad] {
            assert!(d.normalized >= 0.0 && d.normalized <= 1.0);
            assert!((d.defect / 12.0 - d.normalized).abs() < 1e-12);
        }
    }

    #[test]
    fn defect_requires_equal_lengths() {
        let model = EnergyModel::default_model();
        assert!(matches!(
            ensemble_defect(&seq("GAAAC"), &structure("......"), &model),
            Err(ThermoError::LengthMismatch { .. })
        ));
    }
}
