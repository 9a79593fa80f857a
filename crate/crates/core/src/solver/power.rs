use nalgebra::DVector;

use super::assemble::{cross_vector, AssemblyOptions, HistoMatrix};
use super::Kernel;
use crate::domain::{Domain, HistoProblem};
use crate::error::Result;

/// `u(τ) = K⁻¹ k(τ)`: the means over `τ` of the Lagrange basis functions.
pub fn lagrange_values(matrix: &mut HistoMatrix, kvec: &DVector<f64>) -> Result<DVector<f64>> {
    matrix.solve(kvec.as_slice())
}

/// `P(τ) = sqrt(max(0, K(τ,τ) − k(τ)ᵀ K⁻¹ k(τ)))`.
pub fn power_function(
    matrix: &mut HistoMatrix,
    kernel: &Kernel,
    problem: &HistoProblem,
    tau: &Domain,
    options: &AssemblyOptions,
) -> Result<f64> {
    let (k, diag) = cross_vector(problem, kernel, tau, options)?;
    let u = lagrange_values(matrix, &k)?;
    Ok((diag - k.dot(&u)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::matern_pair;
    use crate::solver::{assemble, diagonal_entry};

    fn setup() -> (HistoProblem, Kernel, HistoMatrix) {
        let p = HistoProblem::uniform_segments(&[-0.6, 0.0, 0.6], 0.5, &[1.0, 2.0, 0.5]).unwrap();
        let k: Kernel = matern_pair(1.0, 0.5).unwrap().into();
        let m = assemble(&p, &k, &AssemblyOptions::default()).unwrap();
        (p, k, m)
    }

    #[test]
    fn cardinality_at_data_domains() {
        let (p, k, mut m) = setup();
        for i in 0..p.len() {
            let (kv, _) = cross_vector(&p, &k, p.domain(i), &AssemblyOptions::default()).unwrap();
            let u = lagrange_values(&mut m, &kv).unwrap();
            for j in 0..p.len() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((u[j] - e).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn power_vanishes_at_data_and_matches_expansion() {
        let (p, k, mut m) = setup();
        let opts = AssemblyOptions::default();
        for d in p.domains() {
            assert!(power_function(&mut m, &k, &p, d, &opts).unwrap() < 1e-7);
        }
        // Direct expansion K(τ,τ) − 2Σ u_j K(τ,τ_j) + ΣΣ u_i u_j K(τ_i,τ_j).
        let tau = Domain::segment(0.3, 0.25).unwrap();
        let (kv, diag) = cross_vector(&p, &k, &tau, &opts).unwrap();
        let u = lagrange_values(&mut m, &kv).unwrap();
        let quad = (m.entries() * &u).dot(&u);
        let direct = (diag - 2.0 * u.dot(&kv) + quad).max(0.0).sqrt();
        let p_tau = power_function(&mut m, &k, &p, &tau, &opts).unwrap();
        assert!((p_tau - direct).abs() < 1e-7);
        assert!(p_tau > 1e-3);
    }

    #[test]
    fn no_data_power_is_sqrt_of_diagonal() {
        let k: Kernel = matern_pair(1.0, 0.5).unwrap().into();
        let tau = Domain::segment(0.0, 0.25).unwrap();
        let d = diagonal_entry(&k, &tau, &AssemblyOptions::default()).unwrap();
        assert!((d.sqrt() - 0.852_245f64.sqrt()).abs() < 1e-6);
    }
}
