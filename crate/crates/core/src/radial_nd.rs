//! Radial averaged kernels for translates of a `d`-ball.
//!
//! The mean of a radial function `g(‖x‖)` over the ball of radius `a` centered
//! at distance `r` from the origin is written as a one-dimensional integral in
//! the radius `ρ`, weighted by the fraction of the sphere of radius `ρ` that
//! falls inside the ball. That fraction is a spherical cap whose area is given
//! by the regularized incomplete beta function `I_{1-cos²θ}((d-1)/2, 1/2)`,
//! with `cos θ = (ρ² + r² - a²) / (2ρr)`.
//!
//! `α` averages the profile `φ` this way, and `κ` applies the same averaging
//! to `α`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::RadialProfile;
use crate::quadrature::integrate_with_breaks;
use crate::special::reg_inc_beta;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 10;

const ALPHA_TOL: f64 = 1e-11;
const KAPPA_TOL: f64 = 1e-9;

/// Averaging kernel pair for balls of radius `radius` in `R^dim`.
#[derive(Clone)]
pub struct BallAveragedKernel {
    dim: usize,
    radius: f64,
    profile: RadialProfile,
}

impl fmt::Debug for BallAveragedKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BallAveragedKernel")
            .field("dim", &self.dim)
            .field("radius", &self.radius)
            .field("profile", &self.profile.name())
            .finish()
    }
}

impl BallAveragedKernel {
    pub fn new(profile: RadialProfile, dim: usize, radius: f64) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::validation(format!(
                "ball kernels support dimensions {MIN_DIM}..={MAX_DIM}, got {dim}"
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::validation(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(BallAveragedKernel {
            dim,
            radius,
            profile,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn name(&self) -> String {
        format!("ball:{}:{}", self.profile.name(), self.dim)
    }

    /// `α(r)`: mean of `φ(‖·‖)` over the ball of radius `a` centered at distance `r`.
    pub fn alpha(&self, r: f64) -> Result<f64> {
        ball_mean(|rho| self.profile.eval(rho), self.dim, self.radius, r, self.profile.kinks(), ALPHA_TOL)
    }

    /// Radii where `α` is not smooth: a ball boundary tangent to a kink sphere of `φ`.
    fn alpha_kinks(&self) -> Vec<f64> {
        let a = self.radius;
        self.profile
            .kinks()
            .iter()
            .flat_map(|&k| [a + k, (a - k).abs()])
            .filter(|&b| b > 0.0)
            .collect()
    }

    /// `κ(r)`: the same ball mean applied to `α`.
    pub fn kappa(&self, r: f64) -> Result<f64> {
        let failure = std::cell::Cell::new(None);
        let value = ball_mean(
            |rho| match self.alpha(rho) {
                Ok(v) => v,
                Err(e) => {
                    failure.set(Some(e.to_string()));
                    f64::NAN
                }
            },
            self.dim,
            self.radius,
            r,
            &self.alpha_kinks(),
            KAPPA_TOL,
        );
        if let Some(msg) = failure.take() {
            return Err(Error::NumericFailure {
                context: format!("inner ball average while computing κ({r}): {msg}"),
                estimate: f64::NAN,
            });
        }
        value
    }
}

/// Evaluates `ball_alpha` for the given kernel; kept as a free function for symmetry with the 1D catalog.
pub fn ball_alpha(kernel: &BallAveragedKernel, r: f64) -> Result<f64> {
    kernel.alpha(r)
}

/// Fraction of the sphere of radius `rho` (centered at the origin) that lies inside
/// the ball of radius `a` centered at distance `r`, as a function of the cap cosine.
fn inside_fraction(d: usize, a: f64, r: f64, rho: f64) -> f64 {
    let c = ((rho * rho + r * r - a * a) / (2.0 * rho * r)).clamp(-1.0, 1.0);
    let z = (1.0 - c * c).clamp(0.0, 1.0);
    let half = 0.5 * reg_inc_beta(z, 0.5 * (d as f64 - 1.0), 0.5).expect("arguments clamped to valid range");
    if c >= 0.0 {
        half
    } else {
        1.0 - half
    }
}

/// Mean of the radial function `g` over the `d`-ball of radius `a` centered at distance `r`.
///
/// `breaks` lists radii where `g` is not smooth. On the shell where the sphere
/// of radius `ρ` crosses the ball boundary, `ρ = m − h cos θ` removes the
/// square-root behaviour of the cap area at both ends.
pub fn ball_mean<G: Fn(f64) -> f64>(g: G, d: usize, a: f64, r: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    if r < 0.0 || r.is_nan() {
        return Err(Error::validation(format!(
            "radial distance must be nonnegative, got {r}"
        )));
    }
    let scale = d as f64 / a.powi(d as i32);
    let pw = |rho: f64| rho.powi(d as i32 - 1);
    let err = |e: Error| match e {
        Error::NumericFailure { context, estimate } => Error::NumericFailure {
            context: format!("ball average at r={r}: {context}"),
            estimate,
        },
        other => other,
    };
    let tol_inner = tol / scale.max(1.0);

    if r == 0.0 {
        let v = integrate_with_breaks(|rho| g(rho) * pw(rho), 0.0, a, breaks, tol_inner).map_err(err)?;
        return Ok(scale * v.value);
    }
    let mut total = 0.0;
    if r < a {
        total += integrate_with_breaks(|rho| g(rho) * pw(rho), 0.0, a - r, breaks, tol_inner)
            .map_err(err)?
            .value;
    }
    let (m, h) = if r < a { (a, r) } else { (r, a) };
    let theta_breaks: Vec<f64> = breaks
        .iter()
        .filter(|&&b| b > m - h && b < m + h)
        .map(|&b| ((m - b) / h).clamp(-1.0, 1.0).acos())
        .collect();
    let shell = integrate_with_breaks(
        |t| {
            let rho = m - h * t.cos();
            if rho <= 0.0 {
                return 0.0;
            }
            g(rho) * pw(rho) * inside_fraction(d, a, r, rho) * h * t.sin()
        },
        0.0,
        std::f64::consts::PI,
        &theta_breaks,
        tol_inner,
    )
    .map_err(err)?;
    total += shell.value;
    Ok(scale * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::lower_inc_gamma;

    /// Midpoint rule in polar coordinates over the disk of radius `a` centered at `(r, 0)`.
    fn disk_average(phi: &dyn Fn(f64) -> f64, a: f64, r: f64, ns: usize, nt: usize) -> f64 {
        let mut sum = 0.0;
        let ds = a / ns as f64;
        let dt = std::f64::consts::TAU / nt as f64;
        for i in 0..ns {
            let s = (i as f64 + 0.5) * ds;
            for j in 0..nt {
                let t = (j as f64 + 0.5) * dt;
                let x = r + s * t.cos();
                let y = s * t.sin();
                sum += phi((x * x + y * y).sqrt()) * s * ds * dt;
            }
        }
        sum / (std::f64::consts::PI * a * a)
    }

    #[test]
    fn matern_origin_value_in_2d() {
        let k = BallAveragedKernel::new(RadialProfile::matern(1.0).unwrap(), 2, 1.0).unwrap();
        let expected = 2.0 * lower_inc_gamma(2.0, 1.0).unwrap();
        assert!((k.alpha(0.0).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.528_482).abs() < 1e-6);
    }

    #[test]
    fn gauss_origin_value_in_3d() {
        let k = BallAveragedKernel::new(RadialProfile::gaussian(1.0).unwrap(), 3, 1.0).unwrap();
        let expected = 1.5 * lower_inc_gamma(1.5, 1.0).unwrap();
        assert!((k.alpha(0.0).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn continuity_across_radius() {
        let k = BallAveragedKernel::new(RadialProfile::matern(1.0).unwrap(), 3, 0.7).unwrap();
        let lo = k.alpha(0.7 - 1e-9).unwrap();
        let hi = k.alpha(0.7 + 1e-9).unwrap();
        assert!((lo - hi).abs() < 1e-6);
        let at = k.alpha(0.7).unwrap();
        assert!((lo - at).abs() < 1e-6);
    }

    #[test]
    fn small_r_tends_to_origin_value() {
        let k = BallAveragedKernel::new(RadialProfile::gaussian(2.0).unwrap(), 2, 1.0).unwrap();
        let a0 = k.alpha(0.0).unwrap();
        let eps = k.alpha(1e-7).unwrap();
        assert!((a0 - eps).abs() < 1e-8);
    }

    #[test]
    fn decays_far_away() {
        let k = BallAveragedKernel::new(RadialProfile::matern(1.0).unwrap(), 2, 1.0).unwrap();
        assert!(k.alpha(50.0).unwrap().abs() < 1e-8);
    }

    #[test]
    fn agrees_with_disk_midpoint_oracle() {
        let profile = RadialProfile::gaussian(1.0).unwrap();
        let k = BallAveragedKernel::new(profile.clone(), 2, 0.8).unwrap();
        for &r in &[0.0, 0.3, 0.8, 1.5, 8.0] {
            let oracle = disk_average(&|s| profile.eval(s), 0.8, r, 600, 600);
            let v = k.alpha(r).unwrap();
            assert!((v - oracle).abs() < 1e-5, "r={r}: {v} vs {oracle}");
        }
    }

    #[test]
    fn rejects_bad_dims() {
        let p = RadialProfile::matern(1.0).unwrap();
        assert!(BallAveragedKernel::new(p.clone(), 1, 1.0).is_err());
        assert!(BallAveragedKernel::new(p.clone(), 11, 1.0).is_err());
        assert!(BallAveragedKernel::new(p, 4, 0.0).is_err());
    }
}
