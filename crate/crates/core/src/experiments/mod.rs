//! Reproducible experiments: convergence studies, kernel and Lagrange tables,
//! and image binning/upscaling.

pub mod convergence;
pub mod functions;
pub mod image;
pub mod tables;

pub use convergence::{converge, write_convergence_csv, ConvergenceRow, WidthPolicy};
pub use functions::TestFunction;
pub use image::{
    image_bin, image_upscale, nearest_neighbor_upscale, rmse, synthetic_test_image, ImageGrid, UpscaleMode,
};
use crate::domain::{DomainKind, HistoProblem};
use crate::error::{Error, Result};
use crate::kernel::{kernel_by_name, pair_by_name, tensor, RadialProfile};
use crate::radial_nd::BallAveragedKernel;
use crate::solver::Kernel;

pub use tables::{kernel_table, lagrange_table, write_kernel_table_csv, KernelRow, LagrangeTable};

/// `n` equispaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Picks the kernel matching the shape of the first domain of `problem`.
///
/// Segments get the univariate pair of the segment length, boxes a tensor
/// product of such pairs, balls the named profile averaged over balls of the
/// first radius (`name` may also be a full `ball:<profile>:<d>` name).
pub fn kernel_for_problem(name: &str, shape: f64, problem: &HistoProblem) -> Result<Kernel> {
    let first = problem.domain(0);
    match first.kind() {
        DomainKind::Segment => Ok(pair_by_name(name, shape, 2.0 * first.half_width(0))?.into()),
        DomainKind::Box => {
            let pairs = (0..first.dim())
                .map(|k| pair_by_name(name, shape, 2.0 * first.half_width(k)))
                .collect::<Result<Vec<_>>>()?;
            Ok(tensor(pairs)?.into())
        }
        DomainKind::Ball => {
            let radius = first.radius().unwrap_or(0.0);
            if name.starts_with("ball:") {
                let kernel: Kernel = kernel_by_name(name, shape, radius)?.into();
                kernel.check_dim(problem.dim())?;
                Ok(kernel)
            } else {
                let profile = RadialProfile::by_name(name, shape)?;
                Ok(BallAveragedKernel::new(profile, problem.dim(), radius)?.into())
            }
        }
    }
}

/// Parses `lo:hi:n` into `n` equispaced points.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::validation(format!("expected lo:hi:n, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || n == 0 {
        return Err(bad());
    }
    Ok(linspace(lo, hi, n))
}

/// Tensor grid from one `lo:hi:n` range per axis, separated by commas.
///
/// A single range is reused for every axis. Points are returned with the last
/// axis varying fastest.
pub fn parse_grid(spec: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut axes = spec.split(',').map(parse_range).collect::<Result<Vec<_>>>()?;
    if axes.len() == 1 && dim > 1 {
        axes = vec![axes[0].clone(); dim];
    }
    if axes.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: axes.len(),
        });
    }
    let mut points = vec![Vec::new()];
    for axis in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

/// Reads evaluation points from CSV, one point per row; a non-numeric first row is a header.
pub fn read_points(path: &std::path::Path, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(p) if p.len() == dim => points.push(p),
            Ok(p) => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    row: row + 1,
                    message: format!("expected {dim} coordinates, got {}", p.len()),
                })
            }
            Err(_) if row == 0 => continue,
            Err(e) => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    row: row + 1,
                    message: e.to_string(),
                })
            }
        }
    }
    if points.is_empty() {
        return Err(Error::validation(format!("{}: no evaluation points", path.display())));
    }
    Ok(points)
}
