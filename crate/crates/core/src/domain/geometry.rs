use std::cell::RefCell;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{euclid, Domain, DomainKind, HistoProblem};
use crate::error::{Error, Result};
use crate::quadrature::quad;

/// Number of Monte-Carlo points used for overlaps without a closed form.
pub const MC_SAMPLES: usize = 200_000;
const MC_SEED: u64 = 0x005e_ed0f_a4e5;

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let h = 0.5 * d as f64;
    PI.powf(h) / statrs::function::gamma::gamma(h + 1.0)
}

fn check_dims(d1: &Domain, d2: &Domain) -> Result<()> {
    if d1.dim() != d2.dim() {
        return Err(Error::DimensionMismatch {
            expected: d1.dim(),
            got: d2.dim(),
        });
    }
    Ok(())
}

/// Lebesgue measure of `d1 ∩ d2`.
///
/// Exact for pairs of intervals and boxes, and for pairs of balls in one to
/// three dimensions. Other combinations use a fixed-seed Monte-Carlo estimate
/// with relative accuracy around `1e-3`.
pub fn overlap_measure(d1: &Domain, d2: &Domain) -> Result<f64> {
    check_dims(d1, d2)?;
    let dim = d1.dim();
    // In one dimension every domain is an interval.
    if dim == 1 || (d1.is_box_like() && d2.is_box_like()) {
        return Ok((0..dim)
            .map(|k| {
                let (l1, h1) = (d1.center()[k] - d1.half_width(k), d1.center()[k] + d1.half_width(k));
                let (l2, h2) = (d2.center()[k] - d2.half_width(k), d2.center()[k] + d2.half_width(k));
                (h1.min(h2) - l1.max(l2)).max(0.0)
            })
            .product());
    }
    if d1.kind() == DomainKind::Ball && d2.kind() == DomainKind::Ball && dim <= 3 {
        let (r1, r2) = (d1.extent()[0], d2.extent()[0]);
        let d = euclid(d1.center(), d2.center());
        if d >= r1 + r2 {
            return Ok(0.0);
        }
        let rmin = r1.min(r2);
        if d <= (r1 - r2).abs() {
            return Ok(unit_ball_volume(dim) * rmin.powi(dim as i32));
        }
        return Ok(if dim == 2 {
            let t1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0).acos();
            let t2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0).acos();
            let k = ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)).max(0.0);
            r1 * r1 * t1 + r2 * r2 * t2 - 0.5 * k.sqrt()
        } else {
            PI * (r1 + r2 - d).powi(2)
                * (d * d + 2.0 * d * r2 - 3.0 * r2 * r2 + 2.0 * d * r1 + 6.0 * r1 * r2 - 3.0 * r1 * r1)
                / (12.0 * d)
        });
    }
    Ok(monte_carlo_overlap(d1, d2))
}

fn monte_carlo_overlap(d1: &Domain, d2: &Domain) -> f64 {
    let (lo1, hi1) = d1.bounds();
    let (lo2, hi2) = d2.bounds();
    let lo: Vec<f64> = lo1.iter().zip(&lo2).map(|(a, b)| a.max(*b)).collect();
    let hi: Vec<f64> = hi1.iter().zip(&hi2).map(|(a, b)| a.min(*b)).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
        return 0.0;
    }
    let volume: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();
    let mut rng = ChaCha8Rng::seed_from_u64(MC_SEED);
    let mut p = vec![0.0; lo.len()];
    let mut hits = 0usize;
    for _ in 0..MC_SAMPLES {
        for k in 0..p.len() {
            p[k] = rng.gen_range(lo[k]..hi[k]);
        }
        if d1.contains(&p) && d2.contains(&p) {
            hits += 1;
        }
    }
    volume * hits as f64 / MC_SAMPLES as f64
}

/// Records the first error raised inside a quadrature integrand.
struct Trap(RefCell<Option<Error>>);

impl Trap {
    fn new() -> Self {
        Trap(RefCell::new(None))
    }

    fn catch(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn finish(self, r: Result<f64>) -> Result<f64> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => r,
        }
    }
}

/// Mean of `f` over `domain` with absolute error at most about `tol`.
///
/// Boxes are integrated axis by axis, disks in polar coordinates and balls in
/// three or more dimensions slice by slice along the first axis.
pub fn average_of(f: &dyn Fn(&[f64]) -> f64, domain: &Domain, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::validation(format!("tolerance must be positive, got {tol}")));
    }
    let mut point = domain.center().to_vec();
    match domain.kind() {
        DomainKind::Segment | DomainKind::Box => box_mean(f, domain, 0, &mut point, tol),
        DomainKind::Ball => {
            let c = domain.center().to_vec();
            ball_mean(f, &c, domain.extent()[0], domain.dim(), &mut point, tol)
        }
    }
}

fn box_mean(f: &dyn Fn(&[f64]) -> f64, domain: &Domain, axis: usize, point: &mut Vec<f64>, tol: f64) -> Result<f64> {
    let (lo, hi) = domain.interval(axis).expect("box-like domain");
    let len = hi - lo;
    let last = axis + 1 == domain.dim();
    let trap = Trap::new();
    let cell = RefCell::new(std::mem::take(point));
    let integral = quad(
        |x| {
            let mut p = cell.borrow_mut();
            p[axis] = x;
            if last {
                f(&p)
            } else {
                let mut inner = p.clone();
                drop(p);
                trap.catch(box_mean(f, domain, axis + 1, &mut inner, 0.5 * tol))
            }
        },
        lo,
        hi,
        &[],
        if last { tol * len } else { 0.5 * tol * len },
    );
    *point = cell.into_inner();
    trap.finish(integral.map(|v| v / len))
}

/// Mean over the `d`-ball of radius `r` centered at `c`; coordinates before
/// `d` counted from the end of `point` are already fixed.
fn ball_mean(f: &dyn Fn(&[f64]) -> f64, c: &[f64], r: f64, d: usize, point: &mut Vec<f64>, tol: f64) -> Result<f64> {
    let n = point.len();
    let first = n - d;
    match d {
        1 => {
            let trap = Trap::new();
            let cell = RefCell::new(std::mem::take(point));
            let integral = quad(
                |x| {
                    let mut p = cell.borrow_mut();
                    p[first] = x;
                    f(&p)
                },
                c[first] - r,
                c[first] + r,
                &[],
                tol * 2.0 * r,
            );
            *point = cell.into_inner();
            trap.finish(integral.map(|v| v / (2.0 * r)))
        }
        2 => {
            // Angular mean at radius s, then (2/r²)∫ s·m(s) ds.
            let trap = Trap::new();
            let cell = RefCell::new(std::mem::take(point));
            let angular = |s: f64| -> Result<f64> {
                let v = quad(
                    |t| {
                        let mut p = cell.borrow_mut();
                        p[first] = c[first] + s * t.cos();
                        p[first + 1] = c[first + 1] + s * t.sin();
                        f(&p)
                    },
                    0.0,
                    2.0 * PI,
                    &[],
                    0.5 * tol * 2.0 * PI,
                )?;
                Ok(v / (2.0 * PI))
            };
            let integral = quad(|s| s * trap.catch(angular(s)), 0.0, r, &[], 0.25 * tol * r * r);
            *point = cell.into_inner();
            trap.finish(integral.map(|v| 2.0 * v / (r * r)))
        }
        _ => {
            // Slices along the first free axis are (d-1)-balls.
            let vd = unit_ball_volume(d) * r.powi(d as i32);
            let vs = unit_ball_volume(d - 1);
            let trap = Trap::new();
            let base = std::mem::take(point);
            let integral = quad(
                |x| {
                    let rho2 = r * r - (x - c[first]).powi(2);
                    if rho2 <= 0.0 {
                        return 0.0;
                    }
                    let rho = rho2.sqrt();
                    let mut p = base.clone();
                    p[first] = x;
                    let weight = vs * rho.powi(d as i32 - 1) / vd;
                    weight * trap.catch(ball_mean(f, c, rho, d - 1, &mut p, 0.5 * tol))
                },
                c[first] - r,
                c[first] + r,
                &[],
                0.5 * tol,
            );
            *point = base;
            trap.finish(integral)
        }
    }
}

/// Default number of grid intervals per axis for [`fill_distance`]: `ceil(1000^{1/d})`.
pub fn default_fill_resolution(d: usize) -> usize {
    (1000f64.powf(1.0 / d as f64) - 1e-9).ceil() as usize
}

/// Largest distance from a grid point of `region` to the nearest domain center.
///
/// The grid has `per_axis` intervals (so `per_axis + 1` points) along each
/// axis of the region's bounding box; for ball regions only points inside count.
pub fn fill_distance(problem: &HistoProblem, region: &Domain, per_axis: Option<usize>) -> Result<f64> {
    let d = problem.dim();
    if region.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: region.dim(),
        });
    }
    let m = per_axis.unwrap_or_else(|| default_fill_resolution(d)).max(1);
    let (lo, hi) = region.bounds();
    let centers: Vec<&[f64]> = problem.domains().map(|dom| dom.center()).collect();
    let mut idx = vec![0usize; d];
    let mut p = vec![0.0; d];
    let mut worst: f64 = 0.0;
    loop {
        for k in 0..d {
            p[k] = lo[k] + (hi[k] - lo[k]) * idx[k] as f64 / m as f64;
        }
        if region.contains(&p) {
            let nearest = centers
                .iter()
                .map(|c| euclid(c, &p))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
        let mut k = 0;
        loop {
            if k == d {
                return Ok(worst);
            }
            idx[k] += 1;
            if idx[k] <= m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
