//! Radial kernels averaged over d-dimensional balls.
//!
//! Prints α(r) and κ(r) of the Matérn profile averaged over balls of radius
//! 0.5 in two to five dimensions, and checks α(0) against the radial integral.

use akhs::kernel::RadialProfile;
use akhs::radial_nd::BallAveragedKernel;

fn main() -> akhs::Result<()> {
    let radius = 0.5;
    for d in 2..=5 {
        let k = BallAveragedKernel::new(RadialProfile::matern(1.0)?, d, radius)?;
        // (d/a^d) ∫_0^a e^{-ρ} ρ^{d-1} dρ by a plain midpoint sum.
        let n = 100_000;
        let h = radius / n as f64;
        let radial: f64 = (0..n)
            .map(|i| {
                let rho = (i as f64 + 0.5) * h;
                (-rho).exp() * rho.powi(d as i32 - 1) * h
            })
            .sum();
        let alpha0 = k.alpha(0.0)?;
        println!(
            "{}: alpha(0) = {alpha0:.12} (radial integral {:.12})",
            k.name(),
            d as f64 / radius.powi(d as i32) * radial
        );
        for r in [0.25, 0.5, 1.0, 2.0] {
            println!("    r = {r:4}: alpha = {:.10}, kappa = {:.10}", k.alpha(r)?, k.kappa(r)?);
        }
    }
    Ok(())
}
