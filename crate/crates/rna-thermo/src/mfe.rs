//! Minimum free energy structure by dynamic programming.
//!
//! Same loop decomposition as the partition function, in min-plus algebra:
//! `vb` for closed pairs, `wm1`/`wm` for multiloop segments, and a suffix
//! array for the exterior. The traceback re-derives candidate values with the
//! same arithmetic as the fill, so comparisons are exact.
//!
//! Ties are broken deterministically: at an exterior position, pairing beats
//! staying unpaired and a smaller partner beats a larger one; inside a pair,
//! two-loops (smallest inner pair first) beat multiloops (smallest split
//! first) beat the hairpin.

use crate::energy::{allowed_pair, free_energy, two_loop_energy, EnergyModel};
use crate::sequence::RnaSequence;
use crate::structure::{SecondaryStructure, MIN_PAIR_SPAN};

const INF: f64 = f64::INFINITY;

struct Tables<'a> {
    n: usize,
    seq: &'a RnaSequence,
    model: &'a EnergyModel,
    branch: f64,
    vb: Vec<f64>,
    wm: Vec<f64>,
    wm1: Vec<f64>,
    ws: Vec<f64>,
}

impl<'a> Tables<'a> {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    fn fill(seq: &'a RnaSequence, model: &'a EnergyModel) -> Tables<'a> {
        let n = seq.len();
        let mut t = Tables {
            n,
            seq,
            model,
            branch: model.multibranch_penalty(1),
            vb: vec![INF; n * n],
            wm: vec![INF; n * n],
            wm1: vec![INF; n * n],
            ws: vec![0.0; n + 1],
        };
        for span in MIN_PAIR_SPAN..n {
            for i in 0..n - span {
                let j = i + span;
                if allowed_pair(seq.base(i), seq.base(j)) {
                    let mut best = model.hairpin_penalty(j - i - 1);
                    for p in i + 1..j {
                        for q in p + MIN_PAIR_SPAN..j {
                            let inner = t.vb[t.idx(p, q)];
                            if inner < INF {
                                best = best.min(two_loop_energy(seq, i, j, p, q, model) + inner);
                            }
                        }
                    }
                    for k in i + 2..j - 1 {
                        let rest = t.wm[t.idx(i + 1, k - 1)];
                        let last = t.wm1[t.idx(k, j - 1)];
                        if rest < INF && last < INF {
                            best = best.min(t.branch + rest + last);
                        }
                    }
                    let ij = t.idx(i, j);
                    t.vb[ij] = best;
                }
                let mut best = INF;
                for l in i + MIN_PAIR_SPAN..=j {
                    let b = t.vb[t.idx(i, l)];
                    if b < INF {
                        best = best.min(b + t.branch);
                    }
                }
                let ij = t.idx(i, j);
                t.wm1[ij] = best;
                let mut best = INF;
                for k in i..=j {
                    let m1 = t.wm1[t.idx(k, j)];
                    if m1 == INF {
                        continue;
                    }
                    best = best.min(m1);
                    if k > i {
                        let m = t.wm[t.idx(i, k - 1)];
                        if m < INF {
                            best = best.min(m + m1);
                        }
                    }
                }
                t.wm[ij] = best;
            }
        }
        for s in (0..n).rev() {
            let mut best = t.ws[s + 1];
            for e in s + MIN_PAIR_SPAN..n {
                let b = t.vb[t.idx(s, e)];
                if b < INF {
                    best = best.min(b + t.ws[e + 1]);
                }
            }
            t.ws[s] = best;
        }
        t
    }

    fn trace(&self) -> Vec<Option<usize>> {
        let mut pairs: Vec<Option<usize>> = vec![None; self.n];
        let mut tasks: Vec<Task> = vec![Task::Exterior(0)];
        while let Some(task) = tasks.pop() {
            match task {
                Task::Exterior(s) => self.trace_exterior(s, &mut pairs, &mut tasks),
                Task::Pair(i, j) => self.trace_pair(i, j, &mut pairs, &mut tasks),
                Task::Multi(i, j) => self.trace_multi(i, j, &mut tasks),
                Task::Branch(i, j) => self.trace_branch(i, j, &mut pairs, &mut tasks),
            }
        }
        pairs
    }

    fn trace_exterior(&self, s: usize, pairs: &mut [Option<usize>], tasks: &mut Vec<Task>) {
        if s >= self.n {
            return;
        }
        let target = self.ws[s];
        for e in s + MIN_PAIR_SPAN..self.n {
            let b = self.vb[self.idx(s, e)];
            if b < INF && b + self.ws[e + 1] == target {
                pairs[s] = Some(e);
                pairs[e] = Some(s);
                tasks.push(Task::Exterior(e + 1));
                tasks.push(Task::Pair(s, e));
                return;
            }
        }
        debug_assert!(self.ws[s + 1] == target, "exterior traceback lost at {s}");
        tasks.push(Task::Exterior(s + 1));
    }

    fn trace_pair(&self, i: usize, j: usize, pairs: &mut [Option<usize>], tasks: &mut Vec<Task>) {
        let target = self.vb[self.idx(i, j)];
        for p in i + 1..j {
            for q in p + MIN_PAIR_SPAN..j {
                let inner = self.vb[self.idx(p, q)];
                if inner < INF
                    && two_loop_energy(self.seq, i, j, p, q, self.model) + inner == target
                {
                    pairs[p] = Some(q);
                    pairs[q] = Some(p);
                    tasks.push(Task::Pair(p, q));
                    return;
                }
            }
        }
        for k in i + 2..j - 1 {
            let rest = self.wm[self.idx(i + 1, k - 1)];
            let last = self.wm1[self.idx(k, j - 1)];
            if rest < INF && last < INF && self.branch + rest + last == target {
                tasks.push(Task::Branch(k, j - 1));
                tasks.push(Task::Multi(i + 1, k - 1));
                return;
            }
        }
        debug_assert!(
            self.model.hairpin_penalty(j - i - 1) == target,
            "pair traceback lost at ({i}, {j})"
        );
    }

    fn trace_multi(&self, i: usize, j: usize, tasks: &mut Vec<Task>) {
        let target = self.wm[self.idx(i, j)];
        for k in i..=j {
            let m1 = self.wm1[self.idx(k, j)];
            if m1 == INF {
                continue;
            }
            if m1 == target {
                tasks.push(Task::Branch(k, j));
                return;
            }
            if k > i {
                let m = self.wm[self.idx(i, k - 1)];
                if m < INF && m + m1 == target {
                    tasks.push(Task::Branch(k, j));
                    tasks.push(Task::Multi(i, k - 1));
                    return;
                }
            }
        }
        unreachable!("multiloop traceback lost at ({i}, {j})");
    }

    fn trace_branch(&self, i: usize, j: usize, pairs: &mut [Option<usize>], tasks: &mut Vec<Task>) {
        let target = self.wm1[self.idx(i, j)];
        for l in i + MIN_PAIR_SPAN..=j {
            let b = self.vb[self.idx(i, l)];
            if b < INF && b + self.branch == target {
                pairs[i] = Some(l);
                pairs[l] = Some(i);
                tasks.push(Task::Pair(i, l));
                return;
            }
        }
        unreachable!("branch traceback lost at ({i}, {j})");
    }
}

enum Task {
    Exterior(usize),
    Pair(usize, usize),
    Multi(usize, usize),
    Branch(usize, usize),
}

/// Minimum free energy structure of `seq` and its energy in kcal/mol. The
/// open chain bounds the result at 0. The returned energy is recomputed with
/// `free_energy`, so it is exactly consistent with the loop decomposition.
pub fn mfe_structure(seq: &RnaSequence, model: &EnergyModel) -> (SecondaryStructure, f64) {
    let tables = Tables::fill(seq, model);
    let pairs = tables.trace();
    let structure =
        SecondaryStructure::from_pairs(pairs).expect("traceback yields a valid structure");
    let energy = free_energy(seq, &structure, model)
        .expect("traceback only pairs allowed bases");
    debug_assert!(
        (energy - tables.ws[0]).abs() < 1e-6,
        "traced structure energy {energy} drifted from DP minimum {}",
        tables.ws[0]
    );
    (structure, energy)
}
