//! Lagrange basis of histopolation and the power function.
//!
//! The basis functions ℓ_j have mean δ_ij over the data segments. The power
//! function P(τ) bounds the error of a mean over τ by P(τ)·‖f‖ for every f in
//! the native space; it vanishes on the data segments.

use akhs::domain::{Domain, HistoProblem};
use akhs::experiments::{lagrange_table, linspace};
use akhs::kernel::matern_pair;
use akhs::solver::{assemble, power_function, AssemblyOptions, Kernel};

fn main() -> akhs::Result<()> {
    let a = 0.4;
    let pair = matern_pair(1.0, a)?;
    let centers = linspace(-1.0, 1.0, 5);
    let xs = linspace(-1.0, 1.0, 9);
    let table = lagrange_table(&pair, &centers, &xs)?;
    println!("{:>6} {}", "x", (1..=5).map(|j| format!("{:>10}", format!("l{j}"))).collect::<String>());
    for (x, row) in xs.iter().zip(&table.values) {
        println!("{x:>6.2} {}", row.iter().map(|v| format!("{v:>10.5}")).collect::<String>());
    }
    println!("means over the data segments (should be the identity):");
    for (x, row) in xs.iter().zip(&table.means) {
        if centers.iter().any(|c| (c - x).abs() < 1e-12) {
            println!("{x:>6.2} {}", row.iter().map(|v| format!("{v:>10.2e}")).collect::<String>());
        }
    }

    let kernel: Kernel = pair.into();
    let opts = AssemblyOptions::default();
    let problem = HistoProblem::uniform_segments(&centers, a, &[0.0; 5])?;
    let mut matrix = assemble(&problem, &kernel, &opts)?;
    println!("power function over sliding windows of width {a}:");
    for c in linspace(-1.2, 1.2, 13) {
        let p = power_function(&mut matrix, &kernel, &problem, &Domain::segment(c, 0.5 * a)?, &opts)?;
        println!("    center {c:>5.2}: P = {p:.3e}");
    }
    Ok(())
}
