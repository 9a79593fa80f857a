//! Sufficient check for linear independence of averaging functionals.
//!
//! The functionals are independent if the domains can be ordered so that each
//! one contains an open ball missing every domain that comes after it. This
//! module searches for such an ordering and returns it as a witness.

use super::{Domain, HistoProblem};

/// Grid points per axis used when searching for ball centers.
pub const DEFAULT_RESOLUTION: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessBall {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// `order[k]` is the sample index at position `k`; `balls[k]` lies in that
/// domain and misses all domains at positions after `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub order: Vec<usize>,
    pub balls: Vec<WitnessBall>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureReport {
    /// 1-based position in the ordering at which no domain could be placed.
    pub position: usize,
    /// Sample index of a domain that could not be separated from the rest.
    pub domain: usize,
    /// True when the failure is a proof of dependence (an exact duplicate);
    /// otherwise the grid search was merely exhausted.
    pub conclusive: bool,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum UnisolvenceReport {
    Witness(Witness),
    Failure(FailureReport),
}

impl UnisolvenceReport {
    pub fn is_witness(&self) -> bool {
        matches!(self, UnisolvenceReport::Witness(_))
    }
}

/// Searches for an ordering witness; `resolution` controls the candidate grid
/// of the general search (`None` for [`DEFAULT_RESOLUTION`]).
pub fn unisolvence_precheck(problem: &HistoProblem, resolution: Option<usize>) -> UnisolvenceReport {
    if let Some(w) = uniform_segments_witness(problem) {
        return UnisolvenceReport::Witness(w);
    }
    greedy_search(problem, resolution.unwrap_or(DEFAULT_RESOLUTION).max(1))
}

/// Exact construction for 1D segments of one length and distinct centers:
/// ascending order, each ball at the left end of its segment.
fn uniform_segments_witness(problem: &HistoProblem) -> Option<Witness> {
    if problem.dim() != 1 || !problem.is_uniform() {
        return None;
    }
    let h = problem.domain(0).half_width(0);
    let mut order: Vec<usize> = (0..problem.len()).collect();
    order.sort_by(|&i, &j| problem.domain(i).center()[0].total_cmp(&problem.domain(j).center()[0]));
    let centers: Vec<f64> = order.iter().map(|&i| problem.domain(i).center()[0]).collect();
    let min_gap = centers.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if min_gap <= 0.0 {
        return None;
    }
    let eps = (0.5 * min_gap).min(h);
    let balls = centers
        .iter()
        .map(|&c| WitnessBall {
            center: vec![c - h + eps],
            radius: eps,
        })
        .collect();
    Some(Witness { order, balls })
}

/// Largest ball around a grid point of `domain` that avoids all `others`.
fn best_ball(domain: &Domain, others: &[&Domain], resolution: usize) -> Option<WitnessBall> {
    let d = domain.dim();
    let (lo, hi) = domain.bounds();
    let mut idx = vec![0usize; d];
    let mut p = vec![0.0; d];
    let mut best: Option<WitnessBall> = None;
    loop {
        for k in 0..d {
            // Cell midpoints keep candidates off the boundary.
            p[k] = lo[k] + (hi[k] - lo[k]) * (idx[k] as f64 + 0.5) / resolution as f64;
        }
        let mut eps = domain.depth(&p);
        if eps > 0.0 {
            for o in others {
                eps = eps.min(o.distance_to(&p));
                if eps <= 0.0 {
                    break;
                }
            }
            if eps > 0.0 && best.as_ref().is_none_or(|b| eps > b.radius) {
                best = Some(WitnessBall {
                    center: p.clone(),
                    radius: eps,
                });
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return best;
            }
            idx[k] += 1;
            if idx[k] < resolution {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn greedy_search(problem: &HistoProblem, resolution: usize) -> UnisolvenceReport {
    let mut remaining: Vec<usize> = (0..problem.len()).collect();
    let mut order = Vec::with_capacity(problem.len());
    let mut balls = Vec::with_capacity(problem.len());
    while !remaining.is_empty() {
        let mut placed = None;
        for (slot, &i) in remaining.iter().enumerate() {
            let others: Vec<&Domain> = remaining
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| problem.domain(j))
                .collect();
            if let Some(ball) = best_ball(problem.domain(i), &others, resolution) {
                placed = Some((slot, i, ball));
                break;
            }
        }
        match placed {
            Some((slot, i, ball)) => {
                remaining.remove(slot);
                order.push(i);
                balls.push(ball);
            }
            None => {
                let position = order.len() + 1;
                let i = remaining[0];
                let duplicate = remaining
                    .iter()
                    .skip(1)
                    .find(|&&j| problem.domain(j) == problem.domain(i));
                let (conclusive, message) = match duplicate {
                    Some(&j) => (
                        true,
                        format!("domains {} and {} are identical", i + 1, j + 1),
                    ),
                    None => (
                        false,
                        format!(
                            "no separating ball found at grid resolution {resolution}; \
                             {} domains remain unresolved (inconclusive)",
                            remaining.len()
                        ),
                    ),
                };
                return UnisolvenceReport::Failure(FailureReport {
                    position,
                    domain: i,
                    conclusive,
                    message,
                });
            }
        }
    }
    UnisolvenceReport::Witness(Witness { order, balls })
}

/// Checks a witness geometrically against the problem's domains.
pub fn verify_witness(problem: &HistoProblem, witness: &Witness) -> bool {
    let n = problem.len();
    if witness.order.len() != n || witness.balls.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in &witness.order {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    let slack = 1e-12;
    witness.order.iter().zip(&witness.balls).enumerate().all(|(k, (&i, ball))| {
        let r = ball.radius;
        r > 0.0
            && ball.center.len() == problem.dim()
            && problem.domain(i).depth(&ball.center) >= r - slack
            && witness.order[k + 1..]
                .iter()
                .all(|&j| problem.domain(j).distance_to(&ball.center) >= r - slack)
    })
}
