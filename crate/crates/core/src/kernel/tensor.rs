use crate::error::{Error, Result};

use super::pair::AveragedKernelPair;

/// Tensor product of univariate kernel pairs, one per axis.
#[derive(Debug, Clone)]
pub struct TensorKernel {
    factors: Vec<AveragedKernelPair>,
}

/// Combines univariate pairs into a product kernel on axis-aligned boxes.
pub fn tensor(pairs: Vec<AveragedKernelPair>) -> Result<TensorKernel> {
    if pairs.is_empty() {
        return Err(Error::validation("tensor kernel needs at least one factor"));
    }
    Ok(TensorKernel { factors: pairs })
}

impl TensorKernel {
    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[AveragedKernelPair] {
        &self.factors
    }

    /// Per-axis segment lengths.
    pub fn widths(&self) -> Vec<f64> {
        self.factors.iter().map(|f| f.width()).collect()
    }

    /// `α` at the per-axis offset `delta`.
    pub fn alpha(&self, delta: &[f64]) -> Result<f64> {
        self.check(delta)?;
        Ok(self.factors.iter().zip(delta).map(|(f, &d)| f.alpha(d)).product())
    }

    /// `κ` at the per-axis offset `delta`.
    pub fn kappa(&self, delta: &[f64]) -> Result<f64> {
        self.check(delta)?;
        Ok(self.factors.iter().zip(delta).map(|(f, &d)| f.kappa(d)).product())
    }

    pub fn is_indicator(&self) -> bool {
        self.factors.iter().all(|f| f.is_indicator())
    }

    fn check(&self, delta: &[f64]) -> Result<()> {
        if delta.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                got: delta.len(),
            });
        }
        Ok(())
    }
}
