use nalgebra::DMatrix;

use super::assemble::{Assembly, HistoMatrix};
use crate::error::{Error, Result};
use crate::kernel::AveragedKernelPair;

/// 1D matrix `κ(c_i − c_j)` for segments of the pair's width centered at `centers`.
pub fn uniform_axis_matrix(pair: &AveragedKernelPair, centers: &[f64]) -> HistoMatrix {
    let n = centers.len();
    let m = DMatrix::from_fn(n, n, |i, j| pair.kappa(centers[i] - centers[j]));
    HistoMatrix::new(m, Assembly::ClosedForm)
}

/// Solves `(K_row ⊗ K_col) vec(C) = vec(Λ)` for grid data `Λ` (rows × cols,
/// row-major `vec`) as `C = K_row⁻¹ Λ K_col⁻¹`.
pub fn kronecker_solve(row: &mut HistoMatrix, col: &mut HistoMatrix, data: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if data.nrows() != row.len() {
        return Err(Error::DimensionMismatch {
            expected: row.len(),
            got: data.nrows(),
        });
    }
    if data.ncols() != col.len() {
        return Err(Error::DimensionMismatch {
            expected: col.len(),
            got: data.ncols(),
        });
    }
    let mut x = DMatrix::zeros(data.nrows(), data.ncols());
    for j in 0..data.ncols() {
        let c = row.solve(data.column(j).as_slice())?;
        x.set_column(j, &c);
    }
    // C = X K_col⁻¹, i.e. Cᵀ = K_col⁻¹ Xᵀ since K_col is symmetric.
    let xt = x.transpose();
    let mut ct = DMatrix::zeros(xt.nrows(), xt.ncols());
    for j in 0..xt.ncols() {
        let c = col.solve(xt.column(j).as_slice())?;
        ct.set_column(j, &c);
    }
    Ok(ct.transpose())
}
