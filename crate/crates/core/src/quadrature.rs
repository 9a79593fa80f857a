//! Gauss–Legendre rules and an adaptive integrator built on them.
//!
//! The adaptive scheme compares one `order`-point rule on an interval with the
//! same rule applied to both halves, and keeps bisecting the piece with the
//! largest discrepancy until the summed estimate meets the tolerance.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, refined by Newton.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&t, &w)| (mid + half * t, half * w))
    }

    /// Applies the rule to `f` on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared rule used by the adaptive integrator.
fn base_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(15))
}

/// Cached rules of commonly requested orders.
pub fn cached_rule(n: usize) -> GaussLegendre {
    static RULES: OnceLock<Vec<GaussLegendre>> = OnceLock::new();
    let rules = RULES.get_or_init(|| (1..=128).map(GaussLegendre::new).collect());
    if (1..=128).contains(&n) {
        rules[n - 1].clone()
    } else {
        GaussLegendre::new(n)
    }
}

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

const MAX_INTERVALS: usize = 50_000;

/// Adaptive Gauss–Legendre integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    integrate_with_breaks(f, a, b, &[], tol)
}

struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn evaluate_piece<F: Fn(f64) -> f64>(rule: &GaussLegendre, f: &F, lo: f64, hi: f64) -> Piece {
    let mid = 0.5 * (lo + hi);
    let whole = rule.integrate(f, lo, hi);
    let refined = rule.integrate(f, lo, mid) + rule.integrate(f, mid, hi);
    Piece {
        lo,
        hi,
        value: refined,
        error: (refined - whole).abs(),
    }
}

/// Like [`integrate`], but splits the interval at the given interior points first.
///
/// Refinement is global: the piece with the largest error estimate is bisected
/// until the summed estimate drops below `tol`. Kinks and jumps of the
/// integrand should still be listed as breaks when known.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut points: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    points.push(lo);
    points.extend(breaks.iter().copied().filter(|&p| p > lo && p < hi));
    points.push(hi);
    points.sort_by(|x, y| x.partial_cmp(y).unwrap());
    points.dedup();

    let rule = base_rule();
    let mut heap = std::collections::BinaryHeap::new();
    for w in points.windows(2) {
        heap.push(evaluate_piece(rule, &f, w[0], w[1]));
    }
    let mut pieces = heap.len();
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let value: f64 = heap.iter().map(|p| p.value).sum();
        if !value.is_finite() {
            return Err(Error::NumericFailure {
                context: format!("adaptive Gauss–Legendre on [{lo}, {hi}] produced a non-finite value"),
                estimate: f64::INFINITY,
            });
        }
        let roundoff = 64.0 * f64::EPSILON * heap.iter().map(|p| p.value.abs()).sum::<f64>();
        if error <= tol.max(roundoff) {
            return Ok(Integral {
                value: sign * value,
                error,
            });
        }
        let worst = heap.pop().expect("at least one piece");
        let mid = 0.5 * (worst.lo + worst.hi);
        if pieces >= MAX_INTERVALS || mid <= worst.lo || mid >= worst.hi {
            return Err(Error::NumericFailure {
                context: format!("adaptive Gauss–Legendre on [{lo}, {hi}]"),
                estimate: error,
            });
        }
        heap.push(evaluate_piece(rule, &f, worst.lo, mid));
        heap.push(evaluate_piece(rule, &f, mid, worst.hi));
        pieces += 1;
    }
}

/// Integrates `f` over `[a, b]` with breakpoints and returns only the value.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    integrate_with_breaks(f, a, b, breaks, tol).map(|i| i.value)
}

/// Fixed composite Gauss–Legendre: splits `[a, b]` at `breaks`, then each piece
/// into `panels` equal panels carrying a 32-point rule. Never fails.
pub fn composite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], panels: usize) -> f64 {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    let rule = RULE.get_or_init(|| GaussLegendre::new(32));
    if a == b {
        return 0.0;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut points = vec![lo];
    points.extend(breaks.iter().copied().filter(|&p| p > lo && p < hi));
    points.push(hi);
    points.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut total = 0.0;
    for w in points.windows(2) {
        let h = (w[1] - w[0]) / panels as f64;
        for k in 0..panels {
            let l = w[0] + k as f64 * h;
            let r = if k + 1 == panels { w[1] } else { l + h };
            total += rule.integrate(&f, l, r);
        }
    }
    sign * total
}
