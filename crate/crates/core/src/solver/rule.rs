//! Quadrature rules for averaging domains and the approximate matrix `K^Q`.

use std::f64::consts::PI;

use crate::domain::{Domain, DomainKind, HistoProblem};
use crate::error::{Error, Result};
use crate::kernel::RadialProfile;
use crate::quadrature::cached_rule;

use super::assemble::{Assembly, HistoMatrix};

/// Gauss–Legendre nodes per segment (and per axis of a box) by default.
pub const DEFAULT_NODES: usize = 32;

/// The kernel `Φ` before averaging.
#[derive(Debug, Clone)]
pub enum BaseKernel {
    /// `Φ(x, y) = φ(‖x − y‖₂)`.
    Radial(RadialProfile),
    /// `Φ(x, y) = Π_k φ_k(x_k − y_k)`.
    Product(Vec<RadialProfile>),
}

impl BaseKernel {
    /// Evaluates `Φ` at the difference vector `x − y`.
    pub fn eval(&self, diff: &[f64]) -> f64 {
        match self {
            BaseKernel::Radial(p) => p.eval(diff.iter().map(|v| v * v).sum::<f64>().sqrt()),
            BaseKernel::Product(ps) => ps.iter().zip(diff).map(|(p, &d)| p.eval(d)).product(),
        }
    }
}

/// Nodes shared by all domains, plus one sparse normalized weight vector per domain.
#[derive(Debug, Clone, Default)]
pub struct QuadratureRule {
    nodes: Vec<Vec<f64>>,
    weights: Vec<Vec<(usize, f64)>>,
}

impl QuadratureRule {
    /// Builds a rule from explicit nodes and per-domain `(node index, weight)` lists.
    ///
    /// Weights must be nonnegative; each nonempty list is checked to sum to one.
    pub fn new(nodes: Vec<Vec<f64>>, weights: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        for (i, w) in weights.iter().enumerate() {
            if w.iter().any(|&(k, v)| k >= nodes.len() || !(v >= 0.0) || !v.is_finite()) {
                return Err(Error::validation(format!(
                    "weights of domain {} must be nonnegative and refer to existing nodes",
                    i + 1
                )));
            }
            let total: f64 = w.iter().map(|&(_, v)| v).sum();
            if !w.is_empty() && (total - 1.0).abs() > 1e-12 {
                return Err(Error::validation(format!(
                    "weights of domain {} sum to {total}, not 1",
                    i + 1
                )));
            }
        }
        Ok(QuadratureRule { nodes, weights })
    }

    /// Per-domain Gauss rules with `nodes` points per axis.
    pub fn for_problem(problem: &HistoProblem, nodes: usize) -> Result<Self> {
        let mut rule = QuadratureRule::default();
        for d in problem.domains() {
            rule.push_domain(d, nodes)?;
        }
        Ok(rule)
    }

    /// Appends a rule for one more domain, indexed after the existing ones.
    pub(crate) fn push_extra(&mut self, d: &Domain, nodes: usize) -> Result<()> {
        self.push_domain(d, nodes)
    }

    fn push_domain(&mut self, d: &Domain, nodes: usize) -> Result<()> {
        let (pts, ws) = domain_rule(d, nodes)?;
        let start = self.nodes.len();
        self.nodes.extend(pts);
        self.weights
            .push(ws.into_iter().enumerate().map(|(k, w)| (start + k, w)).collect());
        Ok(())
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Vec<(usize, f64)>] {
        &self.weights
    }

    pub fn domains(&self) -> usize {
        self.weights.len()
    }

    /// `(w^{(j)})^T Φ^Q w^{(i)}`.
    pub(crate) fn entry(&self, base: &BaseKernel, i: usize, j: usize) -> f64 {
        let mut diff = vec![0.0; self.nodes.first().map_or(0, |n| n.len())];
        let mut total = 0.0;
        for &(k, wk) in &self.weights[i] {
            let xk = &self.nodes[k];
            let mut row = 0.0;
            for &(l, wl) in &self.weights[j] {
                for (t, (a, b)) in diff.iter_mut().zip(xk.iter().zip(&self.nodes[l])) {
                    *t = a - b;
                }
                row += wl * base.eval(&diff);
            }
            total += wk * row;
        }
        total
    }

    /// `Σ_k w_k^{(i)} Φ(x − x_k)`: the quadrature version of `A(x, τ_i)`.
    pub(crate) fn alpha_at(&self, base: &BaseKernel, i: usize, x: &[f64]) -> f64 {
        let mut diff = vec![0.0; x.len()];
        self.weights[i]
            .iter()
            .map(|&(k, w)| {
                for (t, (a, b)) in diff.iter_mut().zip(x.iter().zip(&self.nodes[k])) {
                    *t = a - b;
                }
                w * base.eval(&diff)
            })
            .sum()
    }

    /// Applies domain `i`'s weights to a function.
    pub(crate) fn mean_of(&self, i: usize, f: &mut dyn FnMut(&[f64]) -> Result<f64>) -> Result<f64> {
        let mut total = 0.0;
        for &(k, w) in &self.weights[i] {
            total += w * f(&self.nodes[k])?;
        }
        Ok(total)
    }
}

/// Nodes and normalized weights for one domain.
///
/// Boxes use a tensor Gauss rule with `n` nodes per axis. Disks use `n` Gauss
/// nodes in the radius and `2n` equispaced angles; three-dimensional balls add
/// `n` Gauss nodes in the polar cosine. Balls in more dimensions are not supported.
pub fn domain_rule(d: &Domain, n: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::validation("quadrature needs at least one node per axis"));
    }
    let gl = cached_rule(n);
    let c = d.center();
    let mut pts = Vec::new();
    let mut ws = Vec::new();
    match (d.kind(), d.dim()) {
        (DomainKind::Segment | DomainKind::Box, _) | (DomainKind::Ball, 1) => {
            let dim = d.dim();
            let mut idx = vec![0usize; dim];
            loop {
                let mut p = Vec::with_capacity(dim);
                let mut w = 1.0;
                for k in 0..dim {
                    p.push(c[k] + d.half_width(k) * gl.nodes()[idx[k]]);
                    w *= 0.5 * gl.weights()[idx[k]];
                }
                pts.push(p);
                ws.push(w);
                let mut k = 0;
                loop {
                    if k == dim {
                        return Ok((pts, ws));
                    }
                    idx[k] += 1;
                    if idx[k] < n {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
        (DomainKind::Ball, 2) => {
            let r = d.extent()[0];
            let m = 2 * n;
            for (s, w) in gl.mapped(0.0, r) {
                let radial = w * s / (0.5 * r * r);
                for j in 0..m {
                    let t = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                    pts.push(vec![c[0] + s * t.cos(), c[1] + s * t.sin()]);
                    ws.push(radial / m as f64);
                }
            }
            Ok((pts, ws))
        }
        (DomainKind::Ball, 3) => {
            let r = d.extent()[0];
            let m = 2 * n;
            for (s, w) in gl.mapped(0.0, r) {
                let radial = w * s * s / (r * r * r / 3.0);
                for (u, wu) in gl.mapped(-1.0, 1.0) {
                    let sin = (1.0 - u * u).sqrt();
                    for j in 0..m {
                        let t = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                        pts.push(vec![c[0] + s * sin * t.cos(), c[1] + s * sin * t.sin(), c[2] + s * u]);
                        ws.push(radial * 0.5 * wu / m as f64);
                    }
                }
            }
            Ok((pts, ws))
        }
        (DomainKind::Ball, dim) => Err(Error::Unsupported(format!(
            "quadrature over balls is available in 1 to 3 dimensions, not {dim}"
        ))),
    }
}

/// `K^Q` with entries `(w^{(j)})^T Φ^Q w^{(i)}`; symmetric by construction.
pub fn assemble_quadrature(problem: &HistoProblem, base: &BaseKernel, rule: &QuadratureRule) -> Result<HistoMatrix> {
    let n = problem.len();
    if rule.domains() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rule.domains(),
        });
    }
    if let Some(i) = rule.weights().iter().position(|w| w.is_empty()) {
        return Err(Error::validation(format!("quadrature rule has no weights for domain {}", i + 1)));
    }
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rule.entry(base, i, j);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(HistoMatrix::new(m, Assembly::Quadrature))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_normalized() {
        for d in [
            Domain::segment(0.3, 0.2).unwrap(),
            Domain::boxed(vec![0.0, 1.0, 2.0], vec![0.1, 0.2, 0.3]).unwrap(),
            Domain::ball(vec![1.0, 1.0], 0.5).unwrap(),
            Domain::ball(vec![0.0, 0.0, 0.0], 2.0).unwrap(),
        ] {
            let (pts, ws) = domain_rule(&d, 5).unwrap();
            assert_eq!(pts.len(), ws.len());
            assert!(ws.iter().all(|&w| w > 0.0));
            assert!((ws.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(pts.iter().all(|p| d.contains(p)));
        }
        assert!(domain_rule(&Domain::ball(vec![0.0; 4], 1.0).unwrap(), 4).is_err());
    }

    #[test]
    fn disk_rule_integrates_radial_polynomial() {
        let d = Domain::ball(vec![0.5, -0.5], 1.0).unwrap();
        let (pts, ws) = domain_rule(&d, 8).unwrap();
        let mean: f64 = pts
            .iter()
            .zip(&ws)
            .map(|(p, w)| w * ((p[0] - 0.5).powi(2) + (p[1] + 0.5).powi(2)))
            .sum();
        assert!((mean - 0.5).abs() < 1e-14);
    }

    #[test]
    fn single_node_rule() {
        let p = HistoProblem::uniform_segments(&[0.0], 1.0, &[1.0]).unwrap();
        let rule = QuadratureRule::new(vec![vec![0.0]], vec![vec![(0, 1.0)]]).unwrap();
        let base = BaseKernel::Radial(RadialProfile::matern(1.0).unwrap());
        let m = assemble_quadrature(&p, &base, &rule).unwrap();
        assert_eq!(m.entries()[(0, 0)], 1.0);
    }

    #[test]
    fn rejects_bad_rules() {
        assert!(QuadratureRule::new(vec![vec![0.0]], vec![vec![(0, -1.0)]]).is_err());
        assert!(QuadratureRule::new(vec![vec![0.0]], vec![vec![(0, 0.5)]]).is_err());
        assert!(QuadratureRule::new(vec![vec![0.0]], vec![vec![(3, 1.0)]]).is_err());
        let p = HistoProblem::uniform_segments(&[0.0, 1.0], 1.0, &[1.0, 1.0]).unwrap();
        let rule = QuadratureRule::new(vec![vec![0.0]], vec![vec![(0, 1.0)], vec![]]).unwrap();
        let base = BaseKernel::Radial(RadialProfile::matern(1.0).unwrap());
        assert!(assemble_quadrature(&p, &base, &rule).is_err());
    }
}
