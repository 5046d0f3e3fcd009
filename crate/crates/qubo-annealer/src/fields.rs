//! Incremental flip evaluation for quadratic models.
//!
//! Keeps, for every variable, the energy change its flip would cause given
//! the current assignment. Proposing a flip is O(1); committing one updates
//! the other variables' entries through a dense symmetric row, O(n). The
//! running energy is tracked alongside, so a full sweep of n proposals costs
//! O(n) plus O(n) per accepted move.

use surrogate_fm::QuboProblem;

/// Current assignment plus per-variable flip gains.
pub(crate) struct LocalFields {
    n: usize,
    /// Symmetric off-diagonal coefficients, zero diagonal, row-major n*n.
    sym: Vec<f64>,
    /// Linear (diagonal) coefficients.
    diag: Vec<f64>,
    bits: Vec<u8>,
    /// gain[i] = energy change of setting bit i, given the other bits.
    gain: Vec<f64>,
    energy: f64,
}

impl LocalFields {
    pub fn new(problem: &QuboProblem, bits: Vec<u8>) -> Self {
        let n = problem.num_vars();
        assert_eq!(bits.len(), n, "assignment width mismatch");
        let mut sym = vec![0.0; n * n];
        let mut diag = vec![0.0; n];
        for i in 0..n {
            diag[i] = problem.coefficient(i, i);
            for j in (i + 1)..n {
                let w = problem.coefficient(i, j);
                sym[i * n + j] = w;
                sym[j * n + i] = w;
            }
        }
        let energy = problem.evaluate(&bits);
        let mut fields = LocalFields { n, sym, diag, bits, gain: vec![0.0; n], energy };
        fields.recompute_gains();
        fields
    }

    fn recompute_gains(&mut self) {
        for i in 0..self.n {
            let row = &self.sym[i * self.n..(i + 1) * self.n];
            let mut g = self.diag[i];
            for j in 0..self.n {
                if self.bits[j] == 1 {
                    g += row[j];
                }
            }
            self.gain[i] = g;
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Energy change if bit `i` were flipped right now.
    pub fn delta(&self, i: usize) -> f64 {
        if self.bits[i] == 0 {
            self.gain[i]
        } else {
            -self.gain[i]
        }
    }

    /// Commits the flip of bit `i`, updating the energy and every gain.
    /// `sym` has a zero diagonal, so gain[i] itself stays untouched, as it
    /// must: it never includes the variable's own state.
    pub fn flip(&mut self, i: usize) {
        self.energy += self.delta(i);
        let row = &self.sym[i * self.n..(i + 1) * self.n];
        if self.bits[i] == 0 {
            self.bits[i] = 1;
            for (g, &w) in self.gain.iter_mut().zip(row) {
                *g += w;
            }
        } else {
            self.bits[i] = 0;
            for (g, &w) in self.gain.iter_mut().zip(row) {
                *g -= w;
            }
        }
    }
}
