use std::io::Write;

use super::{linspace, TestFunction};
use crate::domain::{Domain, HistoProblem};
use crate::error::{Error, Result};
use crate::io::fmt_float;
use crate::kernel::pair_by_name;
use crate::solver::{histopolate, AssemblyOptions, Kernel};

/// Number of sliding windows for the mean error.
pub const MEAN_WINDOWS: usize = 1000;

/// Segment length for each `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WidthPolicy {
    Fixed(f64),
    /// `a = 2/(n − 1)`, so neighbouring segments just touch.
    Shrinking,
}

impl WidthPolicy {
    /// Parses `fixed:<a>` or `shrink`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "shrink" || s == "shrinking" {
            return Ok(WidthPolicy::Shrinking);
        }
        s.strip_prefix("fixed:")
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|a| *a > 0.0 && a.is_finite())
            .map(WidthPolicy::Fixed)
            .ok_or_else(|| Error::validation(format!("width policy must be `fixed:<a>` or `shrink`, got `{s}`")))
    }

    pub fn width(self, n: usize) -> f64 {
        match self {
            WidthPolicy::Fixed(a) => a,
            WidthPolicy::Shrinking => 2.0 / (n as f64 - 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub a: f64,
    /// `max |f − s_f|` on `10n` uniform points of `[−1, 1]`.
    pub sup_err: f64,
    /// `max |λ_y(f − s_f)|` over windows of length `a` at 1000 centers in `[−1, 1]`.
    pub sup_mean_err: f64,
    pub cond_estimate: f64,
    pub jitter_used: f64,
    /// Solver error for this `n`, if any; the numeric fields are then NaN.
    pub failure: Option<String>,
}

/// Runs one histopolation per `n` with centers `−1 + 2(i−1)/(n−1)`.
pub fn converge(kernel: &str, shape: f64, f: TestFunction, ns: &[usize], policy: WidthPolicy) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < 2 {
            return Err(Error::validation(format!("need at least 2 segments, got {n}")));
        }
        let a = policy.width(n);
        let pair = pair_by_name(kernel, shape, a)?;
        let centers = linspace(-1.0, 1.0, n);
        let data: Vec<f64> = centers.iter().map(|&c| f.mean(c, a)).collect();
        let problem = HistoProblem::uniform_segments(&centers, a, &data)?;
        let kernel = Kernel::Pair(pair);
        match histopolate(&problem, &kernel, &AssemblyOptions::default()).and_then(|h| {
            let mut sup_err: f64 = 0.0;
            for x in linspace(-1.0, 1.0, 10 * n) {
                sup_err = sup_err.max((f.eval(x) - h.evaluate(&[x])?).abs());
            }
            let mut sup_mean_err: f64 = 0.0;
            for y in linspace(-1.0, 1.0, MEAN_WINDOWS) {
                let w = Domain::segment(y, 0.5 * a)?;
                sup_mean_err = sup_mean_err.max((f.mean(y, a) - h.evaluate_mean(&w)?).abs());
            }
            Ok((sup_err, sup_mean_err, h.condition_estimate(), h.jitter()))
        }) {
            Ok((sup_err, sup_mean_err, cond, jitter)) => rows.push(ConvergenceRow {
                n,
                a,
                sup_err,
                sup_mean_err,
                cond_estimate: cond,
                jitter_used: jitter,
                failure: None,
            }),
            Err(e) if !e.is_validation() => rows.push(ConvergenceRow {
                n,
                a,
                sup_err: f64::NAN,
                sup_mean_err: f64::NAN,
                cond_estimate: f64::NAN,
                jitter_used: f64::NAN,
                failure: Some(e.to_string()),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

pub fn write_convergence_csv<W: Write>(rows: &[ConvergenceRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["n", "a", "sup_err", "sup_mean_err", "cond_estimate", "jitter_used", "status"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fmt_float(r.a),
            fmt_float(r.sup_err),
            fmt_float(r.sup_mean_err),
            fmt_float(r.cond_estimate),
            fmt_float(r.jitter_used),
            r.failure.clone().unwrap_or_else(|| "ok".into()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
