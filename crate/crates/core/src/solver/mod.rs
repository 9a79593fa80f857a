//! Histopolation matrices, their factorization and the resulting histopolants.

mod assemble;
mod factor;
mod histopolant;
mod kronecker;
mod power;
mod rule;

pub use assemble::{
    assemble, cross_vector, diagonal_entry, solve, Assembly, AssemblyOptions, HistoMatrix, MAX_DENSE,
};
pub use histopolant::{histopolate, Histopolant};
pub use kronecker::{kronecker_solve, uniform_axis_matrix};
pub use power::{lagrange_values, power_function};
pub use rule::{assemble_quadrature, domain_rule, BaseKernel, QuadratureRule, DEFAULT_NODES};

use crate::domain::{Domain, DomainKind};
use crate::error::{Error, Result};
use crate::kernel::{AveragedKernelPair, CatalogKernel, TensorKernel};
use crate::radial_nd::BallAveragedKernel;

/// Any averaged kernel the solver can work with.
#[derive(Debug, Clone)]
pub enum Kernel {
    /// Univariate pair on segments of the pair's width.
    Pair(AveragedKernelPair),
    /// Product of univariate pairs on axis-aligned boxes.
    Tensor(TensorKernel),
    /// Radial kernel averaged over balls.
    Ball(BallAveragedKernel),
}

impl From<AveragedKernelPair> for Kernel {
    fn from(p: AveragedKernelPair) -> Self {
        Kernel::Pair(p)
    }
}

impl From<TensorKernel> for Kernel {
    fn from(t: TensorKernel) -> Self {
        Kernel::Tensor(t)
    }
}

impl From<BallAveragedKernel> for Kernel {
    fn from(b: BallAveragedKernel) -> Self {
        Kernel::Ball(b)
    }
}

impl From<CatalogKernel> for Kernel {
    fn from(k: CatalogKernel) -> Self {
        match k {
            CatalogKernel::Pair(p) => Kernel::Pair(p),
            CatalogKernel::Ball(b) => Kernel::Ball(b),
        }
    }
}

fn same_width(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * x.abs().max(y.abs())
}

impl Kernel {
    pub fn dim(&self) -> usize {
        match self {
            Kernel::Pair(_) => 1,
            Kernel::Tensor(t) => t.dim(),
            Kernel::Ball(b) => b.dim(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Kernel::Pair(p) => p.name(),
            Kernel::Tensor(t) => t
                .factors()
                .iter()
                .map(|f| f.name())
                .collect::<Vec<_>>()
                .join("*"),
            Kernel::Ball(b) => b.name(),
        }
    }

    /// True when the base kernel is the Dirac delta, so `K` is the normalized overlap.
    pub fn is_indicator(&self) -> bool {
        match self {
            Kernel::Pair(p) => p.is_indicator(),
            Kernel::Tensor(t) => t.is_indicator(),
            Kernel::Ball(_) => false,
        }
    }

    /// The base kernel `Φ` used by quadrature assembly, if it is a function.
    pub fn base(&self) -> Option<BaseKernel> {
        match self {
            Kernel::Pair(p) => p.profile().map(BaseKernel::Radial),
            Kernel::Tensor(t) => t
                .factors()
                .iter()
                .map(|f| f.profile())
                .collect::<Option<Vec<_>>>()
                .map(BaseKernel::Product),
            Kernel::Ball(b) => Some(BaseKernel::Radial(b.profile().clone())),
        }
    }

    /// True when `d` is a translate of the domain the kernel's `α` and `κ` were built for.
    pub fn fits(&self, d: &Domain) -> bool {
        match self {
            Kernel::Pair(p) => d.dim() == 1 && d.is_box_like() && same_width(2.0 * d.half_width(0), p.width()),
            Kernel::Tensor(t) => {
                d.dim() == t.dim()
                    && d.is_box_like()
                    && t.widths()
                        .iter()
                        .enumerate()
                        .all(|(k, &w)| same_width(2.0 * d.half_width(k), w))
            }
            Kernel::Ball(b) => {
                d.kind() == DomainKind::Ball && d.dim() == b.dim() && same_width(d.extent()[0], b.radius())
            }
        }
    }

    /// `κ` between two fitting domains with centers `c1`, `c2`.
    pub fn kappa_between(&self, c1: &[f64], c2: &[f64]) -> Result<f64> {
        match self {
            Kernel::Pair(p) => Ok(p.kappa(c1[0] - c2[0])),
            Kernel::Tensor(t) => {
                let delta: Vec<f64> = c1.iter().zip(c2).map(|(a, b)| a - b).collect();
                t.kappa(&delta)
            }
            Kernel::Ball(b) => b.kappa(crate::domain::euclid_distance(c1, c2)),
        }
    }

    /// `α` between a point `x` and a fitting domain centered at `c`.
    pub fn alpha_between(&self, x: &[f64], c: &[f64]) -> Result<f64> {
        match self {
            Kernel::Pair(p) => Ok(p.alpha(x[0] - c[0])),
            Kernel::Tensor(t) => {
                let delta: Vec<f64> = x.iter().zip(c).map(|(a, b)| a - b).collect();
                t.alpha(&delta)
            }
            Kernel::Ball(b) => b.alpha(crate::domain::euclid_distance(x, c)),
        }
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: d,
            });
        }
        Ok(())
    }
}
