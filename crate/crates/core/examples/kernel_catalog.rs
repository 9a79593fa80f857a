//! Tabulates the averaging kernel α and the reproducing kernel κ of every
//! univariate catalog pair, normalized by κ(0).
//!
//! Run with `cargo run --example kernel_catalog`.

use akhs::experiments::{kernel_table, linspace};
use akhs::kernel::pair_by_name;

fn main() -> akhs::Result<()> {
    let a = 0.5;
    let xs = linspace(-1.5, 1.5, 7);
    for name in ["indicator", "bspline:2", "matern", "inverse-quadratic", "inverse-multiquadric", "mexican-hat", "gaussian"] {
        let pair = pair_by_name(name, 1.0, a)?;
        println!("{} (a = {a})", pair.name());
        println!("{:>8} {:>14} {:>14} {:>10}", "x", "alpha", "kappa", "kappa/k0");
        for row in kernel_table(&pair, &xs) {
            println!("{:>8.3} {:>14.10} {:>14.10} {:>10.6}", row.x, row.alpha, row.kappa, row.kappa_normalized);
        }
        println!();
    }
    Ok(())
}
