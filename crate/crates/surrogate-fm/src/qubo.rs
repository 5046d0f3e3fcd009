//! Dense quadratic models over binary variables.
//!
//! A problem stores an upper-triangular coefficient matrix and a constant
//! offset and is scored as
//!
//! ```text
//! E(x) = offset + sum_i Q_ii x_i + sum_{i<j} Q_ij x_i x_j
//! ```
//!
//! `fm_to_qubo` reads the surrogate's parameters off directly: the bias
//! becomes the offset, linear weights the diagonal, and each pairwise
//! coupling the dot product of two factor rows. The conversion is exact,
//! which the tests check by exhaustive and randomized comparison against
//! `fm_predict`.

use encodings::PenaltyTerms;

use crate::error::SurrogateError;
use crate::model::FmModel;

/// Upper-triangular quadratic model plus constant offset.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    n: usize,
    /// Row-major n*n buffer; entries with i <= j are meaningful.
    q: Vec<f64>,
    offset: f64,
}

impl QuboProblem {
    /// Zero problem over `n` variables.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadratic models need at least one variable");
        QuboProblem { n, q: vec![0.0; n * n], offset: 0.0 }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    /// Coefficient on x_i x_j (or x_i itself when i == j). Requires i <= j.
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        assert!(i <= j && j < self.n, "coefficient index out of range");
        self.q[i * self.n + j]
    }

    pub fn set_coefficient(&mut self, i: usize, j: usize, value: f64) {
        assert!(i <= j && j < self.n, "coefficient index out of range");
        self.q[i * self.n + j] = value;
    }

    pub fn add_coefficient(&mut self, i: usize, j: usize, value: f64) {
        assert!(i <= j && j < self.n, "coefficient index out of range");
        self.q[i * self.n + j] += value;
    }

    /// Model value at a full assignment.
    pub fn evaluate(&self, bits: &[u8]) -> f64 {
        assert_eq!(bits.len(), self.n, "assignment width mismatch");
        let mut total = self.offset;
        for i in 0..self.n {
            if bits[i] == 0 {
                continue;
            }
            let row = &self.q[i * self.n..(i + 1) * self.n];
            total += row[i];
            for j in (i + 1)..self.n {
                if bits[j] == 1 {
                    total += row[j];
                }
            }
        }
        total
    }

    /// Largest coefficient magnitude over the diagonal and the strict upper
    /// triangle. The offset does not participate.
    pub fn max_abs_coefficient(&self) -> f64 {
        let mut max = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                max = max.max(self.q[i * self.n + j].abs());
            }
        }
        max
    }
}

/// Exact quadratic form of the surrogate: offset w0, diagonal w_i, and
/// pair coefficients <v_i, v_j>.
pub fn fm_to_qubo(model: &FmModel) -> QuboProblem {
    let n = model.num_vars();
    let mut qubo = QuboProblem::new(n);
    qubo.add_offset(model.bias());
    for i in 0..n {
        qubo.set_coefficient(i, i, model.linear()[i]);
        for j in (i + 1)..n {
            qubo.set_coefficient(i, j, model.coupling(i, j));
        }
    }
    qubo
}

/// Adds encoding feasibility terms onto a problem over the same variables.
pub fn add_penalty(qubo: &mut QuboProblem, terms: &PenaltyTerms) -> Result<(), SurrogateError> {
    if terms.num_vars != qubo.num_vars() {
        return Err(SurrogateError::DimensionMismatch {
            expected: qubo.num_vars(),
            found: terms.num_vars,
        });
    }
    for &(i, weight) in &terms.linear {
        qubo.add_coefficient(i, i, weight);
    }
    for &(i, j, weight) in &terms.quadratic {
        assert!(i < j, "penalty pairs are stored with i < j");
        qubo.add_coefficient(i, j, weight);
    }
    qubo.add_offset(terms.constant);
    Ok(())
}

/// Rescales so the largest coefficient magnitude is one, dividing the offset
/// by the same factor, and returns that factor. Fails when every coefficient
/// is zero, since no scale exists; callers fall back to the unscaled model.
pub fn normalize_qubo(qubo: &mut QuboProblem) -> Result<f64, SurrogateError> {
    let scale = qubo.max_abs_coefficient();
    if scale == 0.0 {
        return Err(SurrogateError::AllZeroCoefficients);
    }
    for entry in qubo.q.iter_mut() {
        *entry /= scale;
    }
    qubo.offset /= scale;
    Ok(scale)
}
