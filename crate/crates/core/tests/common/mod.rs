//! Reference integrators and kernel formulas written independently of the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite 20-point Gauss–Legendre with `panels` panels between consecutive breaks.
pub fn integrate(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, breaks: &[f64], panels: usize) -> f64 {
    thread_local! {
        static RULE: (Vec<f64>, Vec<f64>) = gauss_legendre(20);
    }
    let mut pts = vec![lo];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
    inner.sort_by(f64::total_cmp);
    pts.extend(inner);
    pts.push(hi);
    RULE.with(|(x, w)| {
        let mut s = 0.0;
        for seg in pts.windows(2) {
            let h = (seg[1] - seg[0]) / panels as f64;
            for p in 0..panels {
                let a = seg[0] + p as f64 * h;
                for (xi, wi) in x.iter().zip(w) {
                    s += 0.5 * h * wi * f(a + 0.5 * h * (xi + 1.0));
                }
            }
        }
        s
    })
}

/// Mean of `f` over `[x - a/2, x + a/2]`.
pub fn window_mean(f: &dyn Fn(f64) -> f64, x: f64, a: f64, breaks: &[f64], panels: usize) -> f64 {
    integrate(f, x - 0.5 * a, x + 0.5 * a, breaks, panels) / a
}

/// Central B-spline of order m by the truncated-power formula.
///
/// Evaluated at `-|x|` so that only the few leading terms enter near the edge of the support.
pub fn bspline(m: u32, x: f64) -> f64 {
    let x = -x.abs();
    let mut s = 0.0;
    let mut binom = 1.0;
    let mut fact = 1.0;
    for k in 1..m {
        fact *= k as f64;
    }
    for k in 0..=m {
        let t = x + 0.5 * m as f64 - k as f64;
        if t > 0.0 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binom * t.powi(m as i32 - 1);
        }
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    (s / fact).max(0.0)
}

/// Base functions of the smooth catalog kernels, written from their definitions.
pub fn profile(name: &str, l: f64) -> Box<dyn Fn(f64) -> f64> {
    match name {
        "matern" => Box::new(move |x: f64| (-l * x.abs()).exp()),
        "inverse-quadratic" => Box::new(move |x: f64| 1.0 / (1.0 + l * l * x * x)),
        "inverse-multiquadric" => Box::new(move |x: f64| 1.0 / (1.0 + l * l * x * x).sqrt()),
        "mexican-hat" => Box::new(move |x: f64| (1.0 - 2.0 * l * x * x) * (-l * x * x).exp()),
        "gaussian" => Box::new(move |x: f64| (-l * x * x).exp()),
        other => panic!("no reference profile for {other}"),
    }
}
