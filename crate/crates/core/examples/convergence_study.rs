//! Error behaviour of 1D histopolation as the number of segments grows.
//!
//! With a fixed segment length the mean error keeps falling while the
//! pointwise error levels off; with touching indicator segments the pointwise
//! error decays like 1/n and the mean error like 1/n².

use akhs::experiments::convergence::loglog_slope;
use akhs::experiments::{converge, write_convergence_csv, TestFunction, WidthPolicy};

fn main() -> akhs::Result<()> {
    let ns = [5, 10, 20, 40, 80, 160];
    for (kernel, policy) in [("matern", WidthPolicy::Fixed(0.5)), ("indicator", WidthPolicy::Shrinking)] {
        let rows = converge(kernel, 1.0, TestFunction::Runge, &ns, policy)?;
        println!("# {kernel}, {policy:?}");
        write_convergence_csv(&rows, std::io::stdout())?;
        let n: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
        let sup: Vec<f64> = rows.iter().map(|r| r.sup_err).collect();
        let mean: Vec<f64> = rows.iter().map(|r| r.sup_mean_err).collect();
        println!(
            "# log-log slopes: sup_err {:.3}, sup_mean_err {:.3}\n",
            loglog_slope(&n, &sup),
            loglog_slope(&n, &mean)
        );
    }
    Ok(())
}
