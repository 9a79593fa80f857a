//! Univariate averaged kernel pairs `(α, κ)` for segments of fixed length `a`.
//!
//! `α = φ * (1/a)χ_[-a/2,a/2]` is the averaging kernel and
//! `κ = α * (1/a)χ_[-a/2,a/2]` the associated reproducing kernel. Both are even,
//! and every evaluation goes through `|x|` so evenness is exact in floating point.

use std::fmt;

use super::bspline::{self, eval_unchecked as m_spline};
use super::profile::RadialProfile;
use crate::error::{Error, Result};
use crate::quadrature::composite;

/// How the pair's closed forms were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    ClosedForm,
    Antiderivative,
    Quadrature,
}

#[derive(Clone)]
enum Repr {
    Indicator,
    BSpline(u32),
    Matern(f64),
    InverseQuadratic(f64),
    InverseMultiquadric(f64),
    MexicanHat(f64),
    FiniteDifference(RadialProfile),
    Quadrature(RadialProfile),
}

/// Averaging kernel `α` and reproducing kernel `κ` for segments of length `width`.
#[derive(Clone)]
pub struct AveragedKernelPair {
    width: f64,
    source: Source,
    repr: Repr,
}

impl fmt::Debug for AveragedKernelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AveragedKernelPair")
            .field("name", &self.name())
            .field("width", &self.width)
            .field("source", &self.source)
            .finish()
    }
}

fn check_width(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "averaging width must be positive and finite, got {a}"
        )))
    }
}

fn check_shape(shape: f64) -> Result<()> {
    if shape > 0.0 && shape.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "shape parameter must be positive and finite, got {shape}"
        )))
    }
}

/// Pair of the normalized indicator kernel: `α = (1/a)χ_[-a/2,a/2]`, `κ = (1/a)(1 - |x|/a)_+`.
pub fn indicator_pair(a: f64) -> Result<AveragedKernelPair> {
    check_width(a)?;
    Ok(AveragedKernelPair {
        width: a,
        source: Source::ClosedForm,
        repr: Repr::Indicator,
    })
}

/// B-spline pair `α = (1/a)M_{2n-1}(x/a)`, `κ = (1/a)M_{2n}(x/a)`.
pub fn bspline_kernel_pair(n: u32, a: f64) -> Result<AveragedKernelPair> {
    check_width(a)?;
    if n == 0 || 2 * n > bspline::MAX_ORDER {
        return Err(Error::validation(format!(
            "B-spline kernel index must lie in 1..={}, got {n}",
            bspline::MAX_ORDER / 2
        )));
    }
    Ok(AveragedKernelPair {
        width: a,
        source: Source::ClosedForm,
        repr: Repr::BSpline(n),
    })
}

/// Two-branch closed forms for the Matérn function `e^{-λ|x|}`.
pub fn matern_pair(shape: f64, a: f64) -> Result<AveragedKernelPair> {
    check_shape(shape)?;
    check_width(a)?;
    Ok(AveragedKernelPair {
        width: a,
        source: Source::ClosedForm,
        repr: Repr::Matern(shape),
    })
}

/// Arctangent forms for the inverse quadratic `1/(1 + (λx)^2)`.
pub fn inverse_quadratic_pair(shape: f64, a: f64) -> Result<AveragedKernelPair> {
    check_shape(shape)?;
    check_width(a)?;
    Ok(AveragedKernelPair {
        width: a,
        source: Source::ClosedForm,
        repr: Repr::InverseQuadratic(shape),
    })
}

/// Area-sine forms for the inverse multiquadric `1/sqrt(1 + (λx)^2)`.
pub fn inverse_multiquadric_pair(shape: f64, a: f64) -> Result<AveragedKernelPair> {
    check_shape(shape)?;
    check_width(a)?;
    Ok(AveragedKernelPair {
        width: a,
        source: Source::ClosedForm,
        repr: Repr::InverseMultiquadric(shape),
    })
}

/// Gaussian-sum forms for the Mexican hat `(1 - 2λx^2)e^{-λx^2}`.
pub fn mexican_hat_pair(shape: f64, a: f64) -> Result<AveragedKernelPair> {
    check_shape(shape)?;
    check_width(a)?;
    Ok(AveragedKernelPair {
        width: a,
        source: Source::ClosedForm,
        repr: Repr::MexicanHat(shape),
    })
}

/// Builds `α` and `κ` as first and second symmetric differences of the profile's
/// anti-derivatives with step `a`.
pub fn pair_from_antiderivatives(profile: RadialProfile, a: f64) -> Result<AveragedKernelPair> {
    check_width(a)?;
    if !profile.has_antiderivatives() {
        return Err(Error::Unsupported(format!(
            "profile `{}` has no closed-form anti-derivatives",
            profile.name()
        )));
    }
    Ok(AveragedKernelPair {
        width: a,
        source: Source::Antiderivative,
        repr: Repr::FiniteDifference(profile),
    })
}

/// Builds `α` and `κ` by Gauss–Legendre quadrature of the profile; works for any `φ`.
pub fn pair_from_quadrature(profile: RadialProfile, a: f64) -> Result<AveragedKernelPair> {
    check_width(a)?;
    Ok(AveragedKernelPair {
        width: a,
        source: Source::Quadrature,
        repr: Repr::Quadrature(profile),
    })
}

const QUAD_PANELS: usize = 4;

impl AveragedKernelPair {
    /// Segment length `a`.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// Catalog name of the pair.
    pub fn name(&self) -> String {
        match &self.repr {
            Repr::Indicator => "indicator".into(),
            Repr::BSpline(n) => format!("bspline:{n}"),
            Repr::Matern(_) => "matern".into(),
            Repr::InverseQuadratic(_) => "inverse-quadratic".into(),
            Repr::InverseMultiquadric(_) => "inverse-multiquadric".into(),
            Repr::MexicanHat(_) => "mexican-hat".into(),
            Repr::FiniteDifference(p) => format!("fd:{}", p.name()),
            Repr::Quadrature(p) => format!("quad:{}", p.name()),
        }
    }

    /// Shape parameter, when the pair has one.
    pub fn shape(&self) -> Option<f64> {
        match &self.repr {
            Repr::Indicator | Repr::BSpline(_) => None,
            Repr::Matern(l)
            | Repr::InverseQuadratic(l)
            | Repr::InverseMultiquadric(l)
            | Repr::MexicanHat(l) => Some(*l),
            Repr::FiniteDifference(p) | Repr::Quadrature(p) => Some(p.shape()),
        }
    }

    /// True for the `L_2` indicator kernel, whose `κ` is the normalized overlap.
    pub fn is_indicator(&self) -> bool {
        matches!(self.repr, Repr::Indicator | Repr::BSpline(1))
    }

    /// The generating function `φ` with `α = φ * (1/a)χ`, if it is a function.
    ///
    /// The indicator pair has none (its `φ` would be a Dirac delta).
    pub fn profile(&self) -> Option<RadialProfile> {
        match &self.repr {
            Repr::Indicator | Repr::BSpline(1) => None,
            Repr::BSpline(n) => {
                let a = self.width;
                let order = 2 * n - 2;
                Some(
                    RadialProfile::custom(format!("bspline-base:{n}"), 1.0, move |r| {
                        m_spline(order, r / a) / a
                    })
                    .with_kinks(bspline::knots(order).into_iter().map(|k| k * a).collect()),
                )
            }
            Repr::Matern(l) => RadialProfile::matern(*l).ok(),
            Repr::InverseQuadratic(l) => RadialProfile::inverse_quadratic(*l).ok(),
            Repr::InverseMultiquadric(l) => RadialProfile::inverse_multiquadric(*l).ok(),
            Repr::MexicanHat(l) => RadialProfile::mexican_hat(*l).ok(),
            Repr::FiniteDifference(p) | Repr::Quadrature(p) => Some(p.clone()),
        }
    }

    /// Averaging kernel `α(x)`.
    pub fn alpha(&self, x: f64) -> f64 {
        let t = x.abs();
        let a = self.width;
        match &self.repr {
            Repr::Indicator => {
                if t <= 0.5 * a {
                    1.0 / a
                } else {
                    0.0
                }
            }
            Repr::BSpline(n) => m_spline(2 * n - 1, t / a) / a,
            Repr::Matern(l) => {
                let l = *l;
                let h = 0.5 * a;
                if t <= h {
                    (2.0 - (l * (t - h)).exp() - (-l * (t + h)).exp()) / (l * a)
                } else {
                    2.0 * (-l * t).exp() * (l * h).sinh() / (l * a)
                }
            }
            Repr::InverseQuadratic(l) => {
                let l = *l;
                ((l * (t + 0.5 * a)).atan() - (l * (t - 0.5 * a)).atan()) / (l * a)
            }
            Repr::InverseMultiquadric(l) => {
                let l = *l;
                ((l * (t + 0.5 * a)).asinh() - (l * (t - 0.5 * a)).asinh()) / (l * a)
            }
            Repr::MexicanHat(l) => {
                let l = *l;
                let p = t + 0.5 * a;
                let m = t - 0.5 * a;
                (0.5 + t / a) * (-l * p * p).exp() + (0.5 - t / a) * (-l * m * m).exp()
            }
            Repr::FiniteDifference(p) => {
                let i1 = p.anti1_fn().expect("checked at construction");
                (i1(t + 0.5 * a) - i1(t - 0.5 * a)) / a
            }
            Repr::Quadrature(p) => {
                let lo = t - 0.5 * a;
                let hi = t + 0.5 * a;
                composite(|s| p.eval(s), lo, hi, p.kinks(), QUAD_PANELS) / a
            }
        }
    }

    /// Reproducing kernel `κ(x)`.
    pub fn kappa(&self, x: f64) -> f64 {
        let t = x.abs();
        let a = self.width;
        match &self.repr {
            Repr::Indicator => (1.0 - t / a).max(0.0) / a,
            Repr::BSpline(n) => m_spline(2 * n, t / a) / a,
            Repr::Matern(l) => {
                let l = *l;
                let la2 = (l * a).powi(2);
                if t <= a {
                    (2.0 * l * (a - t) + (l * (t - a)).exp() + (-l * (t + a)).exp()
                        - 2.0 * (-l * t).exp())
                        / la2
                } else {
                    4.0 * (-l * t).exp() * (0.5 * l * a).sinh().powi(2) / la2
                }
            }
            Repr::InverseQuadratic(l) => {
                let l = *l;
                let g = |y: f64| l * y * (l * y).atan() - 0.5 * (l * y).powi(2).ln_1p();
                (g(t + a) + g(t - a) - 2.0 * g(t)) / (l * a).powi(2)
            }
            Repr::InverseMultiquadric(l) => {
                let l = *l;
                let g = |y: f64| l * y * (l * y).asinh() - (1.0 + (l * y).powi(2)).sqrt();
                (g(t + a) + g(t - a) - 2.0 * g(t)) / (l * a).powi(2)
            }
            Repr::MexicanHat(l) => {
                let l = *l;
                (2.0 * (-l * t * t).exp() - (-l * (t + a).powi(2)).exp() - (-l * (t - a).powi(2)).exp())
                    / (2.0 * l * a * a)
            }
            Repr::FiniteDifference(p) => {
                let i2 = p.anti2_fn().expect("checked at construction");
                (i2(t + a) + i2(t - a) - 2.0 * i2(t)) / (a * a)
            }
            Repr::Quadrature(p) => {
                // κ(t) = (1/a) ∫_{-a}^{a} (1 - |u|/a) φ(t + u) du
                let mut breaks = vec![0.0];
                breaks.extend(p.kinks().iter().map(|k| k - t));
                composite(
                    |u| (1.0 - u.abs() / a) * p.eval(t + u),
                    -a,
                    a,
                    &breaks,
                    QUAD_PANELS,
                ) / a
            }
        }
    }

    /// Mean of `α` over the window `[x - b/2, x + b/2]`.
    ///
    /// Equals `κ(x)` when `b` is the pair's own width. Other widths use the
    /// second anti-derivative where available and quadrature otherwise.
    pub fn alpha_mean(&self, x: f64, b: f64) -> f64 {
        let a = self.width;
        if (b - a).abs() <= 1e-14 * a {
            return self.kappa(x);
        }
        let t = x.abs();
        if self.is_indicator() {
            let lo = (t - 0.5 * b).max(-0.5 * a);
            let hi = (t + 0.5 * b).min(0.5 * a);
            return (hi - lo).max(0.0) / (a * b);
        }
        if let Some(profile) = self.profile().filter(|p| p.has_antiderivatives()) {
            let i2 = profile.anti2_fn().expect("checked");
            let s = 0.5 * (a + b);
            let d = 0.5 * (a - b);
            return (i2(t + s) - i2(t + d) - i2(t - d) + i2(t - s)) / (a * b);
        }
        let breaks: Vec<f64> = self.alpha_kinks().into_iter().collect();
        composite(|y| self.alpha(y), t - 0.5 * b, t + 0.5 * b, &breaks, QUAD_PANELS) / b
    }

    /// Points where `α` is not smooth, for quadrature splitting.
    pub fn alpha_kinks(&self) -> Vec<f64> {
        let a = self.width;
        match &self.repr {
            Repr::Indicator => vec![-0.5 * a, 0.5 * a],
            Repr::BSpline(n) => bspline::knots(2 * n - 1).into_iter().map(|k| k * a).collect(),
            _ => {
                let kinks = self.profile().map(|p| p.kinks().to_vec()).unwrap_or_default();
                kinks
                    .iter()
                    .flat_map(|k| [k - 0.5 * a, k + 0.5 * a])
                    .collect()
            }
        }
    }

    /// Points where `κ` is not smooth.
    pub fn kappa_kinks(&self) -> Vec<f64> {
        let a = self.width;
        match &self.repr {
            Repr::Indicator => vec![-a, 0.0, a],
            Repr::BSpline(n) => bspline::knots(2 * n).into_iter().map(|k| k * a).collect(),
            _ => {
                let kinks = self.profile().map(|p| p.kinks().to_vec()).unwrap_or_default();
                kinks.iter().flat_map(|k| [k - a, *k, k + a]).collect()
            }
        }
    }

    /// Half-length of the support of `α`, or `None` if unbounded.
    pub fn alpha_support(&self) -> Option<f64> {
        match &self.repr {
            Repr::Indicator => Some(0.5 * self.width),
            Repr::BSpline(n) => Some((2 * n - 1) as f64 * 0.5 * self.width),
            _ => None,
        }
    }
}

/// Compact single-arctangent identities for the inverse quadratic pair.
///
/// They only hold under the stated validity constraints and exist as
/// cross-checks; the pair itself always uses the arctangent differences.
pub mod compact {
    /// `α` as one arctangent; valid when `λ²(a/2)² < 1`.
    pub fn inverse_quadratic_alpha(shape: f64, a: f64, x: f64) -> Option<f64> {
        let l = shape;
        if (l * 0.5 * a).powi(2) >= 1.0 {
            return None;
        }
        Some((l * a / (1.0 + l * l * (x * x - 0.25 * a * a))).atan() / (l * a))
    }

    /// `κ` as arctangents plus one logarithm; valid when `λ²a² < 1`.
    ///
    /// The logarithm's argument is `(1 + λ²(x+a)²)(1 + λ²(x-a)²) / (1 + λ²x²)²`,
    /// i.e. the squares of the second anti-derivative are kept.
    pub fn inverse_quadratic_kappa(shape: f64, a: f64, x: f64) -> Option<f64> {
        let l = shape;
        if (l * a).powi(2) >= 1.0 {
            return None;
        }
        let q = 1.0 + l * l * x * x;
        let first = (2.0 * l * a / (1.0 + l * l * (x * x - a * a))).atan() / (l * a);
        let second = x / (l * a * a)
            * (2.0 * l.powi(3) * a * a * x / (q * q + l * l * a * a * (1.0 - l * l * x * x))).atan();
        let ratio = (1.0 + l * l * (x + a).powi(2)) * (1.0 + l * l * (x - a).powi(2)) / (q * q);
        Some(first - second - ratio.ln() / (2.0 * l * l * a * a))
    }
}
