//! Incomplete beta and gamma functions.

use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 1000;

/// Regularized incomplete beta function `I_z(p, q)`.
///
/// Evaluated by the Lentz continued fraction, using `I_z(p,q) = 1 - I_{1-z}(q,p)`
/// whenever `z` lies beyond the mean `(p+1)/(p+q+2)` so the fraction converges fast.
pub fn reg_inc_beta(z: f64, p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) || z.is_nan() {
        return Err(Error::validation(format!(
            "incomplete beta argument {z} outside [0, 1]"
        )));
    }
    if p <= 0.0 || q <= 0.0 || !p.is_finite() || !q.is_finite() {
        return Err(Error::validation(format!(
            "incomplete beta parameters must be positive, got ({p}, {q})"
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return Ok(1.0);
    }
    let ln_front = ln_gamma(p + q) - ln_gamma(p) - ln_gamma(q) + p * z.ln() + q * (-z).ln_1p();
    let front = ln_front.exp();
    let value = if z < (p + 1.0) / (p + q + 2.0) {
        front * beta_cf(z, p, q)? / p
    } else {
        1.0 - front * beta_cf(1.0 - z, q, p)? / q
    };
    Ok(value.clamp(0.0, 1.0))
}

fn beta_cf(z: f64, p: f64, q: f64) -> Result<f64> {
    let qab = p + q;
    let qap = p + 1.0;
    let qam = p - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * z / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (q - m) * z / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(p + m) * (qab + m) * z / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NumericFailure {
        context: format!("incomplete beta continued fraction at z={z}, p={p}, q={q}"),
        estimate: f64::NAN,
    })
}

/// Lower incomplete gamma function `γ(s, x) = ∫_0^x t^{s-1} e^{-t} dt` (not regularized).
pub fn lower_inc_gamma(s: f64, x: f64) -> Result<f64> {
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::validation(format!(
            "incomplete gamma order must be positive, got {s}"
        )));
    }
    if x < 0.0 || x.is_nan() {
        return Err(Error::validation(format!(
            "incomplete gamma argument must be nonnegative, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(gamma(s));
    }
    let p = if x < s + 1.0 {
        gamma_series(s, x)?
    } else {
        1.0 - gamma_cf(s, x)?
    };
    Ok(p * gamma(s))
}

/// Regularized lower incomplete gamma `P(s, x)` via its power series.
fn gamma_series(s: f64, x: f64) -> Result<f64> {
    let mut ap = s;
    let mut del = 1.0 / s;
    let mut sum = del;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            return Ok(sum * (-x + s * x.ln() - ln_gamma(s)).exp());
        }
    }
    Err(Error::NumericFailure {
        context: format!("incomplete gamma series at s={s}, x={x}"),
        estimate: del.abs(),
    })
}

/// Regularized upper incomplete gamma `Q(s, x)` via its continued fraction.
fn gamma_cf(s: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok((-x + s * x.ln() - ln_gamma(s)).exp() * h);
        }
    }
    Err(Error::NumericFailure {
        context: format!("incomplete gamma continued fraction at s={s}, x={x}"),
        estimate: f64::NAN,
    })
}
