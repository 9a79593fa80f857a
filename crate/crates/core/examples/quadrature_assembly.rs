//! Quadrature approximation of the histopolation matrix.
//!
//! When no closed form exists the matrix entries are double means of the base
//! kernel, approximated with Gauss–Legendre nodes in each domain. The result
//! is exactly symmetric and positive semidefinite, and approaches the exact
//! matrix as the node count grows.

use akhs::domain::HistoProblem;
use akhs::experiments::linspace;
use akhs::kernel::{matern_pair, RadialProfile};
use akhs::solver::{assemble, assemble_quadrature, AssemblyOptions, BaseKernel, QuadratureRule};

fn main() -> akhs::Result<()> {
    let a = 0.4;
    let problem = HistoProblem::uniform_segments(&linspace(-1.0, 1.0, 10), a, &[0.0; 10])?;
    let exact = assemble(&problem, &matern_pair(1.0, a)?.into(), &AssemblyOptions::default())?;
    let base = BaseKernel::Radial(RadialProfile::matern(1.0)?);
    println!("{:>6} {:>14} {:>14}", "nodes", "max |K^Q - K|", "min eigenvalue");
    for nodes in [4, 8, 16, 32, 64, 128] {
        let rule = QuadratureRule::for_problem(&problem, nodes)?;
        let kq = assemble_quadrature(&problem, &base, &rule)?;
        let err = (kq.entries() - exact.entries()).abs().max();
        let min_eig = kq.entries().clone().symmetric_eigen().eigenvalues.min();
        println!("{nodes:>6} {err:>14.3e} {min_eig:>14.6e}");
    }
    Ok(())
}
