//! Factorized quadratic surrogate over binary inputs.
//!
//! The model scores a bit vector x as
//!
//! ```text
//! f(x) = w0 + sum_i w_i x_i + sum_{i<j} <v_i, v_j> x_i x_j
//! ```
//!
//! where variable i carries a factor row v_i with k entries, so every
//! pairwise coupling is the dot product of two rows. The pairwise sum is
//! evaluated through the factorization identity
//!
//! ```text
//! sum_{i<j} <v_i, v_j> x_i x_j
//!   = 1/2 sum_q [ (sum_i v_iq x_i)^2 - sum_i v_iq^2 x_i ]
//! ```
//!
//! which costs O(n k) per input instead of O(n^2 k). Loss and gradients use
//! the same identity; `mse_loss_and_gradient` exists mainly so tests can
//! check the analytic gradient against finite differences.

use encodings::BitVector;
use serde::{Deserialize, Serialize};

use crate::error::SurrogateError;

/// Second-order surrogate with factorized pairwise weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FmModel {
    pub(crate) w0: f64,
    pub(crate) w: Vec<f64>,
    pub(crate) v: Vec<Vec<f64>>,
}

impl FmModel {
    /// Builds a model, checking that `w` and `v` agree on the variable count
    /// and that all factor rows have the same length.
    pub fn new(w0: f64, w: Vec<f64>, v: Vec<Vec<f64>>) -> Result<Self, SurrogateError> {
        if v.len() != w.len() {
            return Err(SurrogateError::DimensionMismatch { expected: w.len(), found: v.len() });
        }
        if let Some(first) = v.first() {
            let expected = first.len();
            for (row, factors) in v.iter().enumerate() {
                if factors.len() != expected {
                    return Err(SurrogateError::RaggedFactors {
                        row,
                        expected,
                        found: factors.len(),
                    });
                }
            }
        }
        Ok(FmModel { w0, w, v })
    }

    pub fn num_vars(&self) -> usize {
        self.w.len()
    }

    /// Factor row length; zero for an empty model.
    pub fn num_factors(&self) -> usize {
        self.v.first().map_or(0, Vec::len)
    }

    pub fn bias(&self) -> f64 {
        self.w0
    }

    pub fn linear(&self) -> &[f64] {
        &self.w
    }

    pub fn factors(&self) -> &[Vec<f64>] {
        &self.v
    }

    /// Pairwise coupling between variables i and j, the dot product of their
    /// factor rows.
    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.v[i].iter().zip(&self.v[j]).map(|(a, b)| a * b).sum()
    }
}

/// Training set of evaluated bit vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    num_vars: usize,
    xs: Vec<BitVector>,
    ys: Vec<f64>,
}

impl Dataset {
    /// Empty dataset over `num_vars` binary variables.
    pub fn new(num_vars: usize) -> Self {
        Dataset { num_vars, xs: Vec::new(), ys: Vec::new() }
    }

    /// Dataset from parallel input/target lists.
    pub fn from_pairs(
        num_vars: usize,
        xs: Vec<BitVector>,
        ys: Vec<f64>,
    ) -> Result<Self, SurrogateError> {
        if xs.len() != ys.len() {
            return Err(SurrogateError::SampleCountMismatch { xs: xs.len(), ys: ys.len() });
        }
        let mut dataset = Dataset::new(num_vars);
        for (x, y) in xs.into_iter().zip(ys) {
            dataset.push(x, y)?;
        }
        Ok(dataset)
    }

    /// Appends one sample. The input width must match and the target must be
    /// finite.
    pub fn push(&mut self, x: BitVector, y: f64) -> Result<(), SurrogateError> {
        if x.len() != self.num_vars {
            return Err(SurrogateError::DimensionMismatch {
                expected: self.num_vars,
                found: x.len(),
            });
        }
        if !y.is_finite() {
            return Err(SurrogateError::NonFiniteTarget { index: self.xs.len() });
        }
        self.xs.push(x);
        self.ys.push(y);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn inputs(&self) -> &[BitVector] {
        &self.xs
    }

    pub fn targets(&self) -> &[f64] {
        &self.ys
    }

    /// Indices of the set bits of every input, the sparse form the trainer
    /// iterates over.
    pub(crate) fn support_lists(&self) -> Vec<Vec<u32>> {
        self.xs
            .iter()
            .map(|x| {
                x.bits()
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b == 1)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect()
    }
}

/// Model score for one input.
pub fn fm_predict(model: &FmModel, x: &BitVector) -> Result<f64, SurrogateError> {
    if x.len() != model.num_vars() {
        return Err(SurrogateError::DimensionMismatch {
            expected: model.num_vars(),
            found: x.len(),
        });
    }
    let k = model.num_factors();
    let mut linear = model.w0;
    let mut sums = vec![0.0; k];
    let mut square_sum = 0.0;
    for (i, &bit) in x.bits().iter().enumerate() {
        if bit == 0 {
            continue;
        }
        linear += model.w[i];
        for (q, &vq) in model.v[i].iter().enumerate() {
            sums[q] += vq;
            square_sum += vq * vq;
        }
    }
    let pair_sum = sums.iter().map(|s| s * s).sum::<f64>() - square_sum;
    Ok(linear + 0.5 * pair_sum)
}

/// Gradient of the mean squared error with respect to every parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct FmGradient {
    pub w0: f64,
    pub w: Vec<f64>,
    pub v: Vec<Vec<f64>>,
}

/// Mean squared error of the model over a dataset.
pub fn mse_loss(model: &FmModel, dataset: &Dataset) -> Result<f64, SurrogateError> {
    if dataset.is_empty() {
        return Err(SurrogateError::EmptyDataset);
    }
    let mut total = 0.0;
    for (x, &y) in dataset.inputs().iter().zip(dataset.targets()) {
        let resid = fm_predict(model, x)? - y;
        total += resid * resid;
    }
    Ok(total / dataset.len() as f64)
}

/// Mean squared error and its full gradient.
///
/// For one sample with residual r = f(x) - y the per-parameter derivatives
/// are
///
/// ```text
/// d f / d w0   = 1
/// d f / d w_i  = x_i
/// d f / d v_iq = x_i (S_q - v_iq x_i),  S_q = sum_j v_jq x_j
/// ```
///
/// and the loss gradient averages 2 r times these over the dataset.
pub fn mse_loss_and_gradient(
    model: &FmModel,
    dataset: &Dataset,
) -> Result<(f64, FmGradient), SurrogateError> {
    if dataset.is_empty() {
        return Err(SurrogateError::EmptyDataset);
    }
    let n = model.num_vars();
    if dataset.num_vars() != n {
        return Err(SurrogateError::DimensionMismatch {
            expected: n,
            found: dataset.num_vars(),
        });
    }
    let k = model.num_factors();
    let mut grad = FmGradient { w0: 0.0, w: vec![0.0; n], v: vec![vec![0.0; k]; n] };
    let m = dataset.len() as f64;
    let mut loss = 0.0;
    let mut sums = vec![0.0; k];
    for (x, &y) in dataset.inputs().iter().zip(dataset.targets()) {
        // Forward pass, keeping the factor sums for the backward pass.
        sums.fill(0.0);
        let mut linear = model.w0;
        let mut square_sum = 0.0;
        for (i, &bit) in x.bits().iter().enumerate() {
            if bit == 0 {
                continue;
            }
            linear += model.w[i];
            for (q, &vq) in model.v[i].iter().enumerate() {
                sums[q] += vq;
                square_sum += vq * vq;
            }
        }
        let pair_sum = sums.iter().map(|s| s * s).sum::<f64>() - square_sum;
        let resid = linear + 0.5 * pair_sum - y;
        loss += resid * resid / m;
        let scale = 2.0 * resid / m;
        grad.w0 += scale;
        for (i, &bit) in x.bits().iter().enumerate() {
            if bit == 0 {
                continue;
            }
            grad.w[i] += scale;
            for (q, &vq) in model.v[i].iter().enumerate() {
                grad.v[i][q] += scale * (sums[q] - vq);
            }
        }
    }
    Ok((loss, grad))
}
