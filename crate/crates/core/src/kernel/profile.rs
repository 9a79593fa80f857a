use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Univariate generating function `φ` of a radial kernel, with optional
/// first and second anti-derivatives.
///
/// `eval` is evaluated on the even extension, so `eval(r) == eval(-r)`.
/// The anti-derivatives are only used through symmetric differences, so any
/// additive constant is irrelevant.
#[derive(Clone)]
pub struct RadialProfile {
    name: String,
    shape: f64,
    eval: ScalarFn,
    anti1: Option<ScalarFn>,
    anti2: Option<ScalarFn>,
    kinks: Vec<f64>,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("name", &self.name)
            .field("shape", &self.shape)
            .field("anti1", &self.anti1.is_some())
            .field("anti2", &self.anti2.is_some())
            .finish()
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

impl RadialProfile {
    /// A profile without anti-derivatives; only usable through quadrature.
    pub fn custom<F>(name: impl Into<String>, shape: f64, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        RadialProfile {
            name: name.into(),
            shape,
            eval: Arc::new(move |r: f64| eval(r.abs())),
            anti1: None,
            anti2: None,
            kinks: Vec::new(),
        }
    }

    /// Declares points where `φ` is not smooth; quadrature splits there.
    pub fn with_kinks(mut self, kinks: Vec<f64>) -> Self {
        self.kinks = kinks;
        self
    }

    pub fn with_antiderivatives<F1, F2>(mut self, anti1: F1, anti2: F2) -> Self
    where
        F1: Fn(f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.anti1 = Some(Arc::new(anti1));
        self.anti2 = Some(Arc::new(anti2));
        self
    }

    /// Matérn function `e^{-λ|x|}`.
    pub fn matern(shape: f64) -> Result<Self> {
        check_shape(shape)?;
        let l = shape;
        Ok(Self::custom("matern", l, move |r| (-l * r).exp())
            .with_antiderivatives(
                move |x| x.signum() * -(-l * x.abs()).exp_m1() / l,
                move |x| {
                    let t = x.abs();
                    t / l + (-l * t).exp_m1() / (l * l)
                },
            )
            .with_kinks(vec![0.0]))
    }

    /// Inverse quadratic `1 / (1 + (λx)^2)`.
    pub fn inverse_quadratic(shape: f64) -> Result<Self> {
        check_shape(shape)?;
        let l = shape;
        Ok(
            Self::custom("inverse-quadratic", l, move |r| 1.0 / (1.0 + (l * r).powi(2)))
                .with_antiderivatives(
                    move |x| (l * x).atan() / l,
                    move |x| (l * x * (l * x).atan() - 0.5 * (l * x).powi(2).ln_1p()) / (l * l),
                ),
        )
    }

    /// Inverse multiquadric `1 / sqrt(1 + (λx)^2)`.
    pub fn inverse_multiquadric(shape: f64) -> Result<Self> {
        check_shape(shape)?;
        let l = shape;
        Ok(Self::custom("inverse-multiquadric", l, move |r| {
            1.0 / (1.0 + (l * r).powi(2)).sqrt()
        })
        .with_antiderivatives(
            move |x| (l * x).asinh() / l,
            move |x| (l * x * (l * x).asinh() - (1.0 + (l * x).powi(2)).sqrt()) / (l * l),
        ))
    }

    /// Mexican hat wavelet `(1 - 2λx^2) e^{-λx^2}`, whose second anti-derivative
    /// is `-e^{-λx^2} / (2λ)`.
    pub fn mexican_hat(shape: f64) -> Result<Self> {
        check_shape(shape)?;
        let l = shape;
        Ok(Self::custom("mexican-hat", l, move |r| {
            (1.0 - 2.0 * l * r * r) * (-l * r * r).exp()
        })
        .with_antiderivatives(
            move |x| x * (-l * x * x).exp(),
            move |x| -(-l * x * x).exp() / (2.0 * l),
        ))
    }

    /// Gaussian `e^{-λx^2}`; its anti-derivatives need the error function, so none are attached.
    pub fn gaussian(shape: f64) -> Result<Self> {
        check_shape(shape)?;
        let l = shape;
        Ok(Self::custom("gaussian", l, move |r| (-l * r * r).exp()))
    }

    /// Looks up a profile by catalog name.
    pub fn by_name(name: &str, shape: f64) -> Result<Self> {
        match name {
            "matern" => Self::matern(shape),
            "inverse-quadratic" => Self::inverse_quadratic(shape),
            "inverse-multiquadric" => Self::inverse_multiquadric(shape),
            "mexican-hat" => Self::mexican_hat(shape),
            "gaussian" => Self::gaussian(shape),
            other => Err(Error::UnknownKernel(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    pub fn anti1(&self, x: f64) -> Option<f64> {
        self.anti1.as_ref().map(|f| f(x))
    }

    pub fn anti2(&self, x: f64) -> Option<f64> {
        self.anti2.as_ref().map(|f| f(x))
    }

    pub fn has_antiderivatives(&self) -> bool {
        self.anti1.is_some() && self.anti2.is_some()
    }

    pub(crate) fn anti1_fn(&self) -> Option<&ScalarFn> {
        self.anti1.as_ref()
    }

    pub(crate) fn anti2_fn(&self) -> Option<&ScalarFn> {
        self.anti2.as_ref()
    }

    /// Points where `φ` fails to be smooth.
    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }
}
