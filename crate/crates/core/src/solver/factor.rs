//! Cholesky factorization with a relative pivot floor.

use nalgebra::{DMatrix, DVector};

/// Pivots at or below this multiple of `trace/n` count as breakdown.
pub(crate) const PIVOT_FLOOR: f64 = 1e-11;
/// Diagonal shift, relative to `trace/n`, used for the single retry.
pub(crate) const JITTER: f64 = 1e-12;

/// Upper factor `U` with `A = UᵀU`, or the failing row and pivot.
pub(crate) fn cholesky_upper(a: &DMatrix<f64>, shift: f64, floor: f64) -> Result<DMatrix<f64>, (usize, f64)> {
    let n = a.nrows();
    let mut u = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let col_j = u.column(j).rows(0, j).into_owned();
        let d = a[(j, j)] + shift - col_j.norm_squared();
        if !(d > floor) {
            return Err((j, d));
        }
        let ujj = d.sqrt();
        u[(j, j)] = ujj;
        for i in j + 1..n {
            let s = a[(j, i)] - col_j.dot(&u.column(i).rows(0, j));
            u[(j, i)] = s / ujj;
        }
    }
    Ok(u)
}

/// Solves `UᵀU x = b`.
pub(crate) fn cholesky_solve(u: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let y = u
        .tr_solve_upper_triangular(b)
        .expect("factor has a positive diagonal");
    u.solve_upper_triangular(&y)
        .expect("factor has a positive diagonal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_matrix() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 2.0, 0.4, 2.0, 5.0, 1.0, 0.4, 1.0, 3.0]);
        let u = cholesky_upper(&a, 0.0, 0.0).unwrap();
        assert!((u.transpose() * &u - &a).abs().max() < 1e-14);
        let b = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let x = cholesky_solve(&u, &b);
        assert!((&a * x - b).abs().max() < 1e-14);
    }

    #[test]
    fn breakdown_reports_row() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let (row, pivot) = cholesky_upper(&a, 0.0, 1e-12).unwrap_err();
        assert_eq!(row, 1);
        assert!(pivot.abs() < 1e-15);
    }
}
