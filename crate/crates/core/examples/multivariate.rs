//! Histopolation from means over rectangles and over disks in the plane.
//!
//! Uniform rectangles use the closed-form product kernel; rectangles of
//! varying size fall back to Gauss–Legendre assembly; equal disks use the
//! ball-averaged Matérn kernel.

use akhs::domain::{average_of, Domain, HistoProblem};
use akhs::experiments::linspace;
use akhs::kernel::{matern_pair, tensor, RadialProfile};
use akhs::radial_nd::BallAveragedKernel;
use akhs::solver::{histopolate, AssemblyOptions, Kernel};

fn f(p: &[f64]) -> f64 {
    (p[0] * 1.5).sin() * (1.0 + 0.5 * p[1]).exp() * 0.5
}

fn report(label: &str, domains: Vec<Domain>, kernel: Kernel) -> akhs::Result<()> {
    let values = domains
        .iter()
        .map(|d| average_of(&f, d, 1e-11))
        .collect::<akhs::Result<Vec<_>>>()?;
    let problem = HistoProblem::from_parts(domains, &values)?;
    let s = histopolate(&problem, &kernel, &AssemblyOptions::default())?;
    let probes = [[0.1, 0.2], [-0.35, 0.6], [0.7, -0.4]];
    let err = probes
        .iter()
        .map(|p| s.evaluate(p).map(|v| (v - f(p)).abs()))
        .collect::<akhs::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("{label}: {} domains, {:?} assembly, max point error at probes {err:.2e}", problem.len(), s.assembly());
    Ok(())
}

fn main() -> akhs::Result<()> {
    let grid = linspace(-1.0, 1.0, 7);
    let mut boxes = Vec::new();
    let mut uneven = Vec::new();
    let mut disks = Vec::new();
    for (i, &x) in grid.iter().enumerate() {
        for &y in &grid {
            boxes.push(Domain::boxed(vec![x, y], vec![0.15, 0.15])?);
            uneven.push(Domain::boxed(vec![x, y], vec![0.1 + 0.01 * i as f64, 0.15])?);
            disks.push(Domain::ball(vec![x, y], 0.15)?);
        }
    }
    let product = tensor(vec![matern_pair(2.0, 0.3)?, matern_pair(2.0, 0.3)?])?;
    report("uniform rectangles", boxes, product.clone().into())?;
    report("rectangles of varying width", uneven, product.into())?;
    let ball = BallAveragedKernel::new(RadialProfile::matern(2.0)?, 2, 0.15)?;
    report("disks", disks, ball.into())?;
    Ok(())
}
