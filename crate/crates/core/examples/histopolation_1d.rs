//! Reconstructs f(x) = 1/(1 + (x - 0.4)²) on [-1, 1] from its means over
//! eleven overlapping segments and compares values and means with f.

use akhs::domain::{Domain, HistoProblem};
use akhs::experiments::{linspace, TestFunction};
use akhs::kernel::matern_pair;
use akhs::solver::{histopolate, AssemblyOptions};

fn main() -> akhs::Result<()> {
    let f = TestFunction::Runge;
    let a = 0.4;
    let centers = linspace(-1.0, 1.0, 11);
    let means: Vec<f64> = centers.iter().map(|&c| f.mean(c, a)).collect();
    let problem = HistoProblem::uniform_segments(&centers, a, &means)?;
    let s = histopolate(&problem, &matern_pair(1.0, a)?.into(), &AssemblyOptions::default())?;
    println!(
        "{} segments, assembly {:?}, condition estimate {:.3e}, jitter {:e}",
        problem.len(),
        s.assembly(),
        s.condition_estimate(),
        s.jitter()
    );

    println!("{:>6} {:>12} {:>12} {:>10}", "x", "f(x)", "s_f(x)", "error");
    for x in linspace(-1.0, 1.0, 9) {
        let v = s.evaluate(&[x])?;
        println!("{x:>6.2} {:>12.8} {v:>12.8} {:>10.2e}", f.eval(x), (v - f.eval(x)).abs());
    }

    let worst = problem
        .domains()
        .zip(&means)
        .map(|(d, m)| s.evaluate_mean(d).map(|v| (v - m).abs()))
        .collect::<akhs::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("largest mismatch of the data means: {worst:.2e}");

    let probe = Domain::segment(0.13, 0.1)?;
    println!(
        "mean over [0.03, 0.23]: f {:.10}, s_f {:.10}",
        f.mean(0.13, 0.2),
        s.evaluate_mean(&probe)?
    );
    Ok(())
}
