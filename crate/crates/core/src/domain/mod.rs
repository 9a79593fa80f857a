//! Averaging domains, observed mean values and histopolation problems.

mod geometry;
mod io;
mod unisolvence;

pub use geometry::{average_of, fill_distance, overlap_measure, unit_ball_volume, MC_SAMPLES};
pub use io::{load_samples, read_samples, save_samples, write_samples};
pub use unisolvence::{
    unisolvence_precheck, verify_witness, FailureReport, UnisolvenceReport, Witness, WitnessBall,
    DEFAULT_RESOLUTION,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Segment,
    Box,
    Ball,
}

impl DomainKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DomainKind::Segment => "segment",
            DomainKind::Box => "box",
            DomainKind::Ball => "ball",
        }
    }
}

/// An averaging region: a segment, an axis-aligned box or a ball.
///
/// `extent` holds the half-widths for segments and boxes and the single
/// radius for balls.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    kind: DomainKind,
    center: Vec<f64>,
    extent: Vec<f64>,
}

fn check_finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::validation(format!("{what} must be finite")))
    }
}

fn check_positive(values: &[f64], what: &str) -> Result<()> {
    if values.iter().all(|&v| v > 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(Error::validation(format!("{what} must be positive and finite, got {values:?}")))
    }
}

impl Domain {
    /// The segment `[center - half_width, center + half_width]`.
    pub fn segment(center: f64, half_width: f64) -> Result<Self> {
        check_finite(&[center], "segment center")?;
        check_positive(&[half_width], "segment half-width")?;
        Ok(Domain {
            kind: DomainKind::Segment,
            center: vec![center],
            extent: vec![half_width],
        })
    }

    pub fn boxed(center: Vec<f64>, half_widths: Vec<f64>) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::validation("box needs at least one axis"));
        }
        if center.len() != half_widths.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                got: half_widths.len(),
            });
        }
        check_finite(&center, "box center")?;
        check_positive(&half_widths, "box half-widths")?;
        Ok(Domain {
            kind: DomainKind::Box,
            center,
            extent: half_widths,
        })
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::validation("ball needs at least one axis"));
        }
        check_finite(&center, "ball center")?;
        check_positive(&[radius], "ball radius")?;
        Ok(Domain {
            kind: DomainKind::Ball,
            center,
            extent: vec![radius],
        })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn extent(&self) -> &[f64] {
        &self.extent
    }

    /// Segments and boxes are products of intervals.
    pub fn is_box_like(&self) -> bool {
        self.kind != DomainKind::Ball
    }

    /// The interval `[lo, hi]` along `axis` for box-like domains.
    pub fn interval(&self, axis: usize) -> Option<(f64, f64)> {
        if !self.is_box_like() {
            return None;
        }
        let (c, h) = (self.center[axis], self.extent[axis]);
        Some((c - h, c + h))
    }

    /// Half-width along `axis`; for balls, the radius.
    pub fn half_width(&self, axis: usize) -> f64 {
        if self.is_box_like() {
            self.extent[axis]
        } else {
            self.extent[0]
        }
    }

    pub fn radius(&self) -> Option<f64> {
        (self.kind == DomainKind::Ball).then(|| self.extent[0])
    }

    /// Lebesgue measure `|ω|`.
    pub fn measure(&self) -> f64 {
        match self.kind {
            DomainKind::Segment | DomainKind::Box => self.extent.iter().map(|h| 2.0 * h).product(),
            DomainKind::Ball => unit_ball_volume(self.dim()) * self.extent[0].powi(self.dim() as i32),
        }
    }

    /// Lower and upper corners of the bounding box.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.dim();
        let lo = (0..d).map(|k| self.center[k] - self.half_width(k)).collect();
        let hi = (0..d).map(|k| self.center[k] + self.half_width(k)).collect();
        (lo, hi)
    }

    /// True when `other` is a translate of `self` (same kind and extent).
    pub fn is_translate_of(&self, other: &Domain) -> bool {
        self.kind == other.kind && self.extent == other.extent
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.depth(p) >= 0.0
    }

    /// Signed distance from `p` to the boundary, positive inside.
    ///
    /// For boxes this is the inradius at `p`, i.e. the largest ball around `p` that
    /// stays inside; for points outside it is only a lower bound on the distance.
    pub fn depth(&self, p: &[f64]) -> f64 {
        match self.kind {
            DomainKind::Segment | DomainKind::Box => p
                .iter()
                .zip(&self.center)
                .zip(&self.extent)
                .map(|((x, c), h)| h - (x - c).abs())
                .fold(f64::INFINITY, f64::min),
            DomainKind::Ball => self.extent[0] - euclid(p, &self.center),
        }
    }

    /// Euclidean distance from `p` to the closed domain; zero inside.
    pub fn distance_to(&self, p: &[f64]) -> f64 {
        match self.kind {
            DomainKind::Segment | DomainKind::Box => p
                .iter()
                .zip(&self.center)
                .zip(&self.extent)
                .map(|((x, c), h)| ((x - c).abs() - h).max(0.0).powi(2))
                .sum::<f64>()
                .sqrt(),
            DomainKind::Ball => (euclid(p, &self.center) - self.extent[0]).max(0.0),
        }
    }
}

/// Euclidean distance between two points.
pub fn euclid_distance(p: &[f64], q: &[f64]) -> f64 {
    euclid(p, q)
}

pub(crate) fn euclid(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// A domain together with the observed mean of the unknown function over it.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageSample {
    pub domain: Domain,
    pub value: f64,
}

impl AverageSample {
    pub fn new(domain: Domain, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::validation(format!("sample value must be finite, got {value}")));
        }
        Ok(AverageSample { domain, value })
    }
}

/// An ordered, nonempty list of samples over pairwise distinct domains of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoProblem {
    samples: Vec<AverageSample>,
    dim: usize,
}

impl HistoProblem {
    pub fn new(samples: Vec<AverageSample>) -> Result<Self> {
        let problem = Self::new_allowing_duplicates(samples)?;
        if let Some((i, j)) = first_duplicate(&problem.samples) {
            return Err(Error::validation(format!(
                "samples {} and {} lie on identical domains",
                i + 1,
                j + 1
            )));
        }
        Ok(problem)
    }

    /// Like [`HistoProblem::new`] but keeps repeated domains.
    ///
    /// Such problems are singular; they exist to exercise the failure paths of
    /// the solver and of [`unisolvence_precheck`].
    pub fn new_allowing_duplicates(samples: Vec<AverageSample>) -> Result<Self> {
        let first = samples
            .first()
            .ok_or_else(|| Error::validation("a histopolation problem needs at least one sample"))?;
        let dim = first.domain.dim();
        for s in &samples {
            if s.domain.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: s.domain.dim(),
                });
            }
            if !s.value.is_finite() {
                return Err(Error::validation(format!("sample value must be finite, got {}", s.value)));
            }
        }
        Ok(HistoProblem { samples, dim })
    }

    /// Builds a problem from parallel lists of domains and values.
    pub fn from_parts(domains: Vec<Domain>, values: &[f64]) -> Result<Self> {
        if domains.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: domains.len(),
                got: values.len(),
            });
        }
        let samples = domains
            .into_iter()
            .zip(values)
            .map(|(d, &v)| AverageSample::new(d, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(samples)
    }

    /// Segments of common length `a` centered at `centers`.
    pub fn uniform_segments(centers: &[f64], a: f64, values: &[f64]) -> Result<Self> {
        let domains = centers
            .iter()
            .map(|&c| Domain::segment(c, 0.5 * a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(domains, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[AverageSample] {
        &self.samples
    }

    pub fn domain(&self, i: usize) -> &Domain {
        &self.samples[i].domain
    }

    pub fn domains(&self) -> impl Iterator<Item = &Domain> + '_ {
        self.samples.iter().map(|s| &s.domain)
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }

    /// The same domains with new observed values.
    pub fn with_values(&self, values: &[f64]) -> Result<Self> {
        Self::from_parts(self.domains().cloned().collect(), values)
    }

    /// True when all domains are translates of the first one.
    pub fn is_uniform(&self) -> bool {
        let first = &self.samples[0].domain;
        self.domains().all(|d| d.is_translate_of(first))
    }
}

fn first_duplicate(samples: &[AverageSample]) -> Option<(usize, usize)> {
    // Sort indices by center so that equal domains become neighbours.
    let mut idx: Vec<usize> = (0..samples.len()).collect();
    let key = |i: usize| &samples[i].domain;
    idx.sort_by(|&i, &j| {
        key(i)
            .center
            .partial_cmp(&key(j).center)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    // Runs of equal centers may still differ in kind or extent.
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && key(idx[end]).center == key(idx[start]).center {
            end += 1;
        }
        for a in start..end {
            for b in a + 1..end {
                if key(idx[a]) == key(idx[b]) {
                    let (i, j) = (idx[a].min(idx[b]), idx[a].max(idx[b]));
                    return Some((i, j));
                }
            }
        }
        start = end;
    }
    None
}
