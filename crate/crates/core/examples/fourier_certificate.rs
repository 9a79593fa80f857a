//! Spectral test of the averaging property.
//!
//! An even α is the average of some φ over segments of length a exactly when
//! its Fourier transform alternates sign on the bands [k·2π/a, (k+1)·2π/a].
//! Catalog kernels pass; a Gaussian bump, whose transform is positive, fails.

use akhs::fourier::{certify_averaging, certify_pair, TransformOptions};
use akhs::kernel::pair_by_name;

fn main() -> akhs::Result<()> {
    for name in ["indicator", "bspline:2", "matern", "mexican-hat"] {
        let pair = pair_by_name(name, 1.0, 1.0)?;
        let cert = certify_pair(&pair)?;
        println!("{:<14} {}", pair.name(), cert.overall.as_str());
    }

    let a = 1.0;
    let bump = certify_averaging(
        &|x: f64| (-x * x).exp(),
        a,
        8.0 * 2.0 * std::f64::consts::PI / a,
        1024,
        None,
        &TransformOptions::default(),
    )?;
    println!("gaussian bump  {}", bump.overall.as_str());
    println!();
    bump.write_csv(std::io::stdout())?;
    Ok(())
}
