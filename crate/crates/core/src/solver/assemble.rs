use nalgebra::{DMatrix, DVector};

use super::factor::{cholesky_solve, cholesky_upper, JITTER, PIVOT_FLOOR};
use super::rule::{QuadratureRule, DEFAULT_NODES};
use super::Kernel;
use crate::domain::{overlap_measure, Domain, HistoProblem};
use crate::error::{Error, Result};

/// Largest system the dense solver accepts.
pub const MAX_DENSE: usize = 4096;

/// How the entries `K(τ_i, τ_j)` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assembly {
    /// `κ` of the center offsets, all domains being translates of the kernel's own.
    ClosedForm,
    /// Normalized overlap `|ω_i ∩ ω_j| / (|ω_i||ω_j|)` of the indicator kernel.
    Overlap,
    /// Double quadrature of the base kernel.
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssemblyOptions {
    /// Gauss–Legendre nodes per segment or box axis on the quadrature path.
    pub nodes: usize,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions { nodes: DEFAULT_NODES }
    }
}

/// Symmetric histopolation matrix with its (lazily computed) Cholesky factor.
#[derive(Debug, Clone)]
pub struct HistoMatrix {
    entries: DMatrix<f64>,
    assembly: Assembly,
    jitter: f64,
    factor: Option<DMatrix<f64>>,
}

impl HistoMatrix {
    pub fn new(entries: DMatrix<f64>, assembly: Assembly) -> Self {
        HistoMatrix {
            entries,
            assembly,
            jitter: 0.0,
            factor: None,
        }
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn assembly(&self) -> Assembly {
        self.assembly
    }

    /// Diagonal shift that was needed for the factorization (zero if none).
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn len(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.nrows() == 0
    }

    pub fn is_factorized(&self) -> bool {
        self.factor.is_some()
    }

    /// Cholesky factorization; on breakdown, one retry with `1e-12·trace/n` on the diagonal.
    ///
    /// A pivot counts as breakdown when it falls below `1e-11·trace/n`.
    pub fn factorize(&mut self) -> Result<()> {
        if self.factor.is_some() {
            return Ok(());
        }
        let n = self.len();
        if n == 0 {
            return Err(Error::validation("empty histopolation matrix"));
        }
        if self.entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.entries.ncols(),
            });
        }
        let scale = self.entries.trace() / n as f64;
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::NotPositiveDefinite {
                row: 0,
                pivot: scale,
                jitter: 0.0,
            });
        }
        let floor = PIVOT_FLOOR * scale;
        match cholesky_upper(&self.entries, 0.0, floor) {
            Ok(u) => {
                self.factor = Some(u);
                Ok(())
            }
            Err(_) => {
                let jitter = JITTER * scale;
                match cholesky_upper(&self.entries, jitter, floor) {
                    Ok(u) => {
                        self.jitter = jitter;
                        self.factor = Some(u);
                        Ok(())
                    }
                    Err((row, pivot)) => Err(Error::NotPositiveDefinite { row, pivot, jitter }),
                }
            }
        }
    }

    /// Solves `K c = rhs` with one step of iterative refinement.
    pub fn solve(&mut self, rhs: &[f64]) -> Result<DVector<f64>> {
        if rhs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: rhs.len(),
            });
        }
        self.factorize()?;
        let u = self.factor.as_ref().expect("factorized");
        let b = DVector::from_column_slice(rhs);
        let mut x = cholesky_solve(u, &b);
        let mut shifted = self.entries.clone();
        for i in 0..shifted.nrows() {
            shifted[(i, i)] += self.jitter;
        }
        let r = &b - &shifted * &x;
        x += cholesky_solve(u, &r);
        Ok(x)
    }

    /// `(max_k U_kk / min_k U_kk)²`, a cheap proxy for the 2-norm condition number.
    pub fn condition_estimate(&mut self) -> Result<f64> {
        self.factorize()?;
        let d = self.factor.as_ref().expect("factorized").diagonal();
        Ok((d.max() / d.min()).powi(2))
    }
}

/// Solves `K c = λ`, recording any jitter in `matrix`.
pub fn solve(matrix: &mut HistoMatrix, data: &[f64]) -> Result<DVector<f64>> {
    matrix.solve(data)
}

/// Picks the assembly route for a set of domains.
pub(crate) fn mode_for<'a>(kernel: &Kernel, domains: impl IntoIterator<Item = &'a Domain>) -> Result<Assembly> {
    let mut fits = true;
    for d in domains {
        kernel.check_dim(d.dim())?;
        fits &= kernel.fits(d);
    }
    if fits {
        Ok(Assembly::ClosedForm)
    } else if kernel.is_indicator() {
        Ok(Assembly::Overlap)
    } else if kernel.base().is_some() {
        Ok(Assembly::Quadrature)
    } else {
        Err(Error::Unsupported(format!(
            "kernel `{}` has no closed form for these domains and no base function for quadrature",
            kernel.name()
        )))
    }
}

pub(crate) fn overlap_entry(d1: &Domain, d2: &Domain) -> Result<f64> {
    Ok(overlap_measure(d1, d2)? / (d1.measure() * d2.measure()))
}

/// Assembles `K(τ_i, τ_j)` for all pairs of the problem's domains.
///
/// Translates of the kernel's own domain use `κ` of the center offsets (per
/// axis for tensor kernels), the indicator kernel uses normalized overlaps and
/// everything else goes through [`assemble_quadrature`](super::assemble_quadrature).
pub fn assemble(problem: &HistoProblem, kernel: &Kernel, options: &AssemblyOptions) -> Result<HistoMatrix> {
    let n = problem.len();
    if n > MAX_DENSE {
        return Err(Error::validation(format!(
            "{n} samples exceed the dense solver limit of {MAX_DENSE}; \
             use the Kronecker path for grid data or reduce the problem"
        )));
    }
    let mode = mode_for(kernel, problem.domains())?;
    let mut m = DMatrix::zeros(n, n);
    match mode {
        Assembly::ClosedForm => {
            for i in 0..n {
                for j in i..n {
                    let v = kernel.kappa_between(problem.domain(i).center(), problem.domain(j).center())?;
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
        }
        Assembly::Overlap => {
            for i in 0..n {
                for j in i..n {
                    let v = overlap_entry(problem.domain(i), problem.domain(j))?;
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
        }
        Assembly::Quadrature => {
            let base = kernel.base().expect("checked by mode_for");
            let rule = QuadratureRule::for_problem(problem, options.nodes)?;
            return super::assemble_quadrature(problem, &base, &rule);
        }
    }
    Ok(HistoMatrix::new(m, mode))
}

/// `k(τ) = (K(τ, τ_i))_i` and `K(τ, τ)` for a further domain `τ`.
pub fn cross_vector(
    problem: &HistoProblem,
    kernel: &Kernel,
    tau: &Domain,
    options: &AssemblyOptions,
) -> Result<(DVector<f64>, f64)> {
    let n = problem.len();
    let mode = mode_for(kernel, problem.domains().chain(std::iter::once(tau)))?;
    let mut k = DVector::zeros(n);
    let diag;
    match mode {
        Assembly::ClosedForm => {
            for i in 0..n {
                k[i] = kernel.kappa_between(tau.center(), problem.domain(i).center())?;
            }
            diag = kernel.kappa_between(tau.center(), tau.center())?;
        }
        Assembly::Overlap => {
            for i in 0..n {
                k[i] = overlap_entry(tau, problem.domain(i))?;
            }
            diag = 1.0 / tau.measure();
        }
        Assembly::Quadrature => {
            let base = kernel.base().expect("checked by mode_for");
            let mut rule = QuadratureRule::for_problem(problem, options.nodes)?;
            rule.push_extra(tau, options.nodes)?;
            for i in 0..n {
                k[i] = rule.entry(&base, n, i);
            }
            diag = rule.entry(&base, n, n);
        }
    }
    Ok((k, diag))
}

/// `K(τ, τ)`: the squared power function when no data are available.
pub fn diagonal_entry(kernel: &Kernel, tau: &Domain, options: &AssemblyOptions) -> Result<f64> {
    match mode_for(kernel, std::iter::once(tau))? {
        Assembly::ClosedForm => kernel.kappa_between(tau.center(), tau.center()),
        Assembly::Overlap => Ok(1.0 / tau.measure()),
        Assembly::Quadrature => {
            let base = kernel.base().expect("checked by mode_for");
            let mut rule = QuadratureRule::default();
            rule.push_extra(tau, options.nodes)?;
            Ok(rule.entry(&base, 0, 0))
        }
    }
}
