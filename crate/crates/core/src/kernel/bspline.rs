//! Central B-splines `M_n`, the `(n-1)`-fold self-convolution of the indicator of `[-1/2, 1/2]`.

use crate::error::{Error, Result};

/// Largest supported order; the alternating sum loses accuracy beyond it.
pub const MAX_ORDER: u32 = 12;

/// Evaluates `M_n(x)` by the bounded alternating sum over the support `[-n/2, n/2]`.
///
/// `M_1` is the closed indicator, so `M_1(±1/2) = 1`.
pub fn bspline_central(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::validation("central B-spline order must be at least 1"));
    }
    if n > MAX_ORDER {
        return Err(Error::validation(format!(
            "central B-spline order {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(eval_unchecked(n, x))
}

pub(crate) fn eval_unchecked(n: u32, x: f64) -> f64 {
    let half = 0.5 * n as f64;
    let t = half - x.abs();
    if t < 0.0 {
        return 0.0;
    }
    let upper = t.floor() as u32;
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=upper.min(n) {
        let term = binom * (t - k as f64).powi(n as i32 - 1);
        sum += if k % 2 == 0 { term } else { -term };
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    sum / factorial(n - 1)
}

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

/// Knots of `M_n`: the points `-n/2, -n/2 + 1, ..., n/2` where it loses smoothness.
pub fn knots(n: u32) -> Vec<f64> {
    (0..=n).map(|k| k as f64 - 0.5 * n as f64).collect()
}
