use nalgebra::DVector;

use super::assemble::{assemble, mode_for, overlap_entry, Assembly, AssemblyOptions};
use super::rule::{BaseKernel, QuadratureRule};
use super::Kernel;
use crate::domain::{average_of, Domain, HistoProblem};
use crate::error::{Error, Result};

/// Absolute tolerance for adaptive means of a closed-form histopolant.
const MEAN_TOL: f64 = 1e-11;

/// `s_f(x) = Σ_j c_j A(x, τ_j)` for solved coefficients `c`.
#[derive(Debug, Clone)]
pub struct Histopolant {
    kernel: Kernel,
    problem: HistoProblem,
    coefficients: DVector<f64>,
    options: AssemblyOptions,
    mode: Assembly,
    quadrature: Option<(BaseKernel, QuadratureRule)>,
    jitter: f64,
    condition: f64,
}

/// Assembles, factorizes and solves the histopolation system.
pub fn histopolate(problem: &HistoProblem, kernel: &Kernel, options: &AssemblyOptions) -> Result<Histopolant> {
    let mut matrix = assemble(problem, kernel, options)?;
    let c = matrix.solve(&problem.values())?;
    let mut h = Histopolant::new(kernel.clone(), problem.clone(), c, options)?;
    h.jitter = matrix.jitter();
    h.condition = matrix.condition_estimate()?;
    Ok(h)
}

impl Histopolant {
    /// Binds known coefficients to a kernel and domain set.
    pub fn new(
        kernel: Kernel,
        problem: HistoProblem,
        coefficients: DVector<f64>,
        options: &AssemblyOptions,
    ) -> Result<Self> {
        if coefficients.len() != problem.len() {
            return Err(Error::DimensionMismatch {
                expected: problem.len(),
                got: coefficients.len(),
            });
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::NumericFailure {
                context: "histopolant coefficients".into(),
                estimate: f64::INFINITY,
            });
        }
        let mode = mode_for(&kernel, problem.domains())?;
        let quadrature = if mode == Assembly::Quadrature {
            let base = kernel.base().expect("checked by mode_for");
            Some((base, QuadratureRule::for_problem(&problem, options.nodes)?))
        } else {
            None
        };
        Ok(Histopolant {
            kernel,
            problem,
            coefficients,
            options: *options,
            mode,
            quadrature,
            jitter: 0.0,
            condition: f64::NAN,
        })
    }

    pub fn coefficients(&self) -> &DVector<f64> {
        &self.coefficients
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn problem(&self) -> &HistoProblem {
        &self.problem
    }

    pub fn assembly(&self) -> Assembly {
        self.mode
    }

    /// Diagonal jitter used when solving (zero if none).
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Condition estimate of the solved matrix; NaN for histopolants built from given coefficients.
    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    /// The vector `a(x) = (A(x, τ_j))_j`.
    pub fn alpha_vector(&self, x: &[f64]) -> Result<DVector<f64>> {
        self.kernel.check_dim(x.len())?;
        let n = self.problem.len();
        let mut a = DVector::zeros(n);
        for j in 0..n {
            let d = self.problem.domain(j);
            a[j] = match self.mode {
                Assembly::ClosedForm => self.kernel.alpha_between(x, d.center())?,
                Assembly::Overlap => {
                    if d.contains(x) {
                        1.0 / d.measure()
                    } else {
                        0.0
                    }
                }
                Assembly::Quadrature => {
                    let (base, rule) = self.quadrature.as_ref().expect("quadrature mode");
                    rule.alpha_at(base, j, x)
                }
            };
        }
        Ok(a)
    }

    /// Point value `s_f(x)`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok(self.alpha_vector(x)?.dot(&self.coefficients))
    }

    /// Mean of `s_f` over `rho`.
    ///
    /// Translates of the kernel's domain use `κ` exactly and the indicator kernel
    /// uses overlaps. Otherwise a quadrature-assembled histopolant applies the
    /// same Gauss rule used for its matrix, and a closed-form one is averaged
    /// adaptively.
    pub fn evaluate_mean(&self, rho: &Domain) -> Result<f64> {
        self.kernel.check_dim(rho.dim())?;
        let n = self.problem.len();
        match mode_for(&self.kernel, self.problem.domains().chain(std::iter::once(rho)))? {
            Assembly::ClosedForm => {
                let mut s = 0.0;
                for j in 0..n {
                    s += self.coefficients[j] * self.kernel.kappa_between(rho.center(), self.problem.domain(j).center())?;
                }
                Ok(s)
            }
            Assembly::Overlap => {
                let mut s = 0.0;
                for j in 0..n {
                    s += self.coefficients[j] * overlap_entry(rho, self.problem.domain(j))?;
                }
                Ok(s)
            }
            Assembly::Quadrature if self.mode == Assembly::Quadrature => {
                let (base, rule) = self.quadrature.as_ref().expect("quadrature mode");
                let mut own = QuadratureRule::default();
                own.push_extra(rho, self.options.nodes)?;
                own.mean_of(0, &mut |x| {
                    Ok((0..n).map(|j| self.coefficients[j] * rule.alpha_at(base, j, x)).sum())
                })
            }
            Assembly::Quadrature => {
                let failure = std::cell::RefCell::new(None);
                let v = average_of(
                    &|x| match self.evaluate(x) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.borrow_mut().get_or_insert(e);
                            f64::NAN
                        }
                    },
                    rho,
                    MEAN_TOL,
                );
                match failure.into_inner() {
                    Some(e) => Err(e),
                    None => v,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{indicator_pair, matern_pair, tensor};

    fn paper_f(x: f64) -> f64 {
        1.0 / (1.0 + (x - 0.4).powi(2))
    }

    fn paper_mean(c: f64, a: f64) -> f64 {
        ((c + 0.5 * a - 0.4).atan() - (c - 0.5 * a - 0.4).atan()) / a
    }

    fn matern_problem() -> (HistoProblem, Kernel) {
        let a = 0.5;
        let centers: Vec<f64> = (0..7).map(|i| -1.0 + i as f64 / 3.0).collect();
        let data: Vec<f64> = centers.iter().map(|&c| paper_mean(c, a)).collect();
        (
            HistoProblem::uniform_segments(&centers, a, &data).unwrap(),
            matern_pair(1.0, a).unwrap().into(),
        )
    }

    #[test]
    fn zero_data_gives_zero_function() {
        let (p, k) = matern_problem();
        let p = p.with_values(&[0.0; 7]).unwrap();
        let h = histopolate(&p, &k, &AssemblyOptions::default()).unwrap();
        for x in [-1.3, 0.0, 0.77] {
            assert_eq!(h.evaluate(&[x]).unwrap(), 0.0);
        }
    }

    #[test]
    fn reproduces_data_means() {
        let (p, k) = matern_problem();
        let h = histopolate(&p, &k, &AssemblyOptions::default()).unwrap();
        for s in p.samples() {
            assert!((h.evaluate_mean(&s.domain).unwrap() - s.value).abs() < 1e-9);
        }
        assert_eq!(h.jitter(), 0.0);
        assert!((h.evaluate(&[0.4]).unwrap() - paper_f(0.4)).abs() < 0.05);
    }

    #[test]
    fn mean_over_other_segment_matches_adaptive_average() {
        let (p, k) = matern_problem();
        let h = histopolate(&p, &k, &AssemblyOptions::default()).unwrap();
        let rho = Domain::segment(0.123, 0.25).unwrap();
        let exact = h.evaluate_mean(&rho).unwrap();
        let numeric = average_of(&|x| h.evaluate(x).unwrap(), &rho, 1e-12).unwrap();
        assert!((exact - numeric).abs() < 1e-10);
        // A segment of a different length goes through adaptive averaging.
        let wide = Domain::segment(0.1, 0.4).unwrap();
        let numeric = average_of(&|x| h.evaluate(x).unwrap(), &wide, 1e-12).unwrap();
        assert!((h.evaluate_mean(&wide).unwrap() - numeric).abs() < 1e-9);
    }

    #[test]
    fn indicator_histopolant_is_piecewise_constant_mean() {
        let p = HistoProblem::uniform_segments(&[0.0, 1.0], 1.0, &[2.0, 3.0]).unwrap();
        let k: Kernel = indicator_pair(1.0).unwrap().into();
        let h = histopolate(&p, &k, &AssemblyOptions::default()).unwrap();
        assert_eq!(h.evaluate(&[0.2]).unwrap(), 2.0);
        assert_eq!(h.evaluate(&[0.8]).unwrap(), 3.0);
    }

    #[test]
    fn quadrature_histopolant_reproduces_data() {
        let doms = vec![
            Domain::segment(-0.5, 0.2).unwrap(),
            Domain::segment(0.1, 0.3).unwrap(),
            Domain::segment(0.6, 0.1).unwrap(),
        ];
        let p = HistoProblem::from_parts(doms, &[0.5, 1.0, 0.8]).unwrap();
        let k: Kernel = matern_pair(1.0, 0.5).unwrap().into();
        let h = histopolate(&p, &k, &AssemblyOptions::default()).unwrap();
        assert_eq!(h.assembly(), Assembly::Quadrature);
        for s in p.samples() {
            assert!((h.evaluate_mean(&s.domain).unwrap() - s.value).abs() < 1e-9);
        }
    }

    #[test]
    fn tensor_kernel_on_boxes() {
        let t = tensor(vec![matern_pair(1.0, 0.5).unwrap(), matern_pair(1.0, 0.5).unwrap()]).unwrap();
        let mut doms = Vec::new();
        let mut vals = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                doms.push(Domain::boxed(vec![i as f64 * 0.5, j as f64 * 0.5], vec![0.25, 0.25]).unwrap());
                vals.push((i + 2 * j) as f64);
            }
        }
        let p = HistoProblem::from_parts(doms, &vals).unwrap();
        let h = histopolate(&p, &t.into(), &AssemblyOptions::default()).unwrap();
        assert_eq!(h.assembly(), Assembly::ClosedForm);
        for s in p.samples() {
            assert!((h.evaluate_mean(&s.domain).unwrap() - s.value).abs() < 1e-8);
        }
        assert!(h.evaluate(&[0.0]).is_err());
    }
}
