//! Images as cell averages: binning, histopolation upscaling and a baseline.
//!
//! Distances are measured in input pixels: each input pixel is the mean over
//! a unit cell, so the univariate kernels use width `a = 1` and the shape
//! parameter is relative to one pixel.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::io::GrayImage;
use crate::kernel::{pair_by_name, AveragedKernelPair};
use crate::solver::{kronecker_solve, uniform_axis_matrix};

/// Row-major grayscale values; each pixel is the mean over a square cell of side `cell_size`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
    pub cell_size: f64,
}

impl ImageGrid {
    pub fn new(width: usize, height: usize, values: Vec<f64>, cell_size: f64) -> Result<Self> {
        if width == 0 || height == 0 || values.len() != width * height {
            return Err(Error::validation(format!(
                "image of {width}x{height} needs {} values, got {}",
                width * height,
                values.len()
            )));
        }
        Ok(ImageGrid {
            width,
            height,
            values,
            cell_size,
        })
    }

    /// Pixels mapped to `[0, 1]` by `v/255`, unit cells.
    pub fn from_gray(img: &GrayImage) -> Self {
        ImageGrid {
            width: img.width,
            height: img.height,
            values: img.pixels.iter().map(|&p| p as f64 / 255.0).collect(),
            cell_size: 1.0,
        }
    }

    /// Clamps to `[0, 1]` and quantizes to 8 bits.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self
                .values
                .iter()
                .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
                .collect(),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }

    pub fn as_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.height, self.width, &self.values)
    }

    fn from_matrix(m: &DMatrix<f64>, cell_size: f64) -> Self {
        let (height, width) = m.shape();
        let values = (0..height)
            .flat_map(|r| (0..width).map(move |c| (r, c)))
            .map(|(r, c)| m[(r, c)])
            .collect();
        ImageGrid {
            width,
            height,
            values,
            cell_size,
        }
    }

    fn clamped(mut self) -> Self {
        for v in &mut self.values {
            *v = v.clamp(0.0, 1.0);
        }
        self
    }
}

/// Replaces every `b×b` block by its mean.
pub fn image_bin(grid: &ImageGrid, b: usize) -> Result<ImageGrid> {
    if b == 0 || !grid.width.is_multiple_of(b) || !grid.height.is_multiple_of(b) {
        return Err(Error::validation(format!(
            "binning factor {b} must divide both {}x{}",
            grid.width, grid.height
        )));
    }
    let (w, h) = (grid.width / b, grid.height / b);
    let mut values = vec![0.0; w * h];
    for r in 0..h {
        for c in 0..w {
            let mut s = 0.0;
            for i in 0..b {
                for j in 0..b {
                    s += grid.get(r * b + i, c * b + j);
                }
            }
            values[r * w + c] = s / (b * b) as f64;
        }
    }
    Ok(ImageGrid {
        width: w,
        height: h,
        values,
        cell_size: grid.cell_size * b as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpscaleMode {
    /// `s_f` at the centers of the target cells.
    Pointwise,
    /// Exact means of `s_f` over the target cells.
    CellAverage,
}

impl UpscaleMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pointwise" => Ok(UpscaleMode::Pointwise),
            "cellavg" | "cell-average" => Ok(UpscaleMode::CellAverage),
            other => Err(Error::validation(format!("mode must be pointwise or cellavg, got `{other}`"))),
        }
    }
}

/// Evaluation matrix for one axis: rows are target cells, columns input cells.
fn axis_evaluation(pair: &AveragedKernelPair, inputs: usize, targets: usize, mode: UpscaleMode) -> DMatrix<f64> {
    let step = inputs as f64 / targets as f64;
    DMatrix::from_fn(targets, inputs, |t, i| {
        let offset = (t as f64 + 0.5) * step - (i as f64 + 0.5);
        match mode {
            UpscaleMode::Pointwise => pair.alpha(offset),
            UpscaleMode::CellAverage => pair.alpha_mean(offset, step),
        }
    })
}

/// Tensor-product histopolation of the pixel means, evaluated on a `to_width × to_height` grid.
///
/// The coefficient matrix comes from the Kronecker solve of the two 1D
/// systems; the output is clamped to `[0, 1]`.
pub fn image_upscale(
    grid: &ImageGrid,
    to_width: usize,
    to_height: usize,
    kernel: &str,
    shape: f64,
    mode: UpscaleMode,
) -> Result<ImageGrid> {
    if to_width == 0 || to_height == 0 {
        return Err(Error::validation("target dimensions must be positive"));
    }
    let pair = pair_by_name(kernel, shape, 1.0)?;
    let centers = |n: usize| (0..n).map(|i| i as f64 + 0.5).collect::<Vec<_>>();
    let mut rows = uniform_axis_matrix(&pair, &centers(grid.height));
    let mut cols = uniform_axis_matrix(&pair, &centers(grid.width));
    let coeffs = kronecker_solve(&mut rows, &mut cols, &grid.as_matrix())?;
    let er = axis_evaluation(&pair, grid.height, to_height, mode);
    let ec = axis_evaluation(&pair, grid.width, to_width, mode);
    let out = er * coeffs * ec.transpose();
    let cell = grid.cell_size * grid.width as f64 / to_width as f64;
    Ok(ImageGrid::from_matrix(&out, cell).clamped())
}

/// Pixel replication baseline.
pub fn nearest_neighbor_upscale(grid: &ImageGrid, to_width: usize, to_height: usize) -> ImageGrid {
    let mut values = Vec::with_capacity(to_width * to_height);
    for r in 0..to_height {
        let sr = ((r as f64 + 0.5) * grid.height as f64 / to_height as f64) as usize;
        for c in 0..to_width {
            let sc = ((c as f64 + 0.5) * grid.width as f64 / to_width as f64) as usize;
            values.push(grid.get(sr.min(grid.height - 1), sc.min(grid.width - 1)));
        }
    }
    ImageGrid {
        width: to_width,
        height: to_height,
        values,
        cell_size: grid.cell_size * grid.width as f64 / to_width as f64,
    }
}

pub fn rmse(a: &ImageGrid, b: &ImageGrid) -> Result<f64> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::validation(format!(
            "cannot compare {}x{} with {}x{}",
            a.width, a.height, b.width, b.height
        )));
    }
    let s: f64 = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).powi(2)).sum();
    Ok((s / a.values.len() as f64).sqrt())
}

/// Deterministic moon-like test picture: a shaded disk with craters over a
/// faint background gradient.
pub fn synthetic_test_image(size: usize) -> GrayImage {
    let craters = [
        (0.42, 0.38, 0.06, 0.35),
        (0.63, 0.55, 0.09, 0.30),
        (0.50, 0.70, 0.04, 0.40),
        (0.70, 0.33, 0.05, 0.25),
        (0.36, 0.58, 0.07, 0.28),
        (0.55, 0.47, 0.025, 0.45),
    ];
    let n = size as f64;
    let mut pixels = Vec::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            let x = (c as f64 + 0.5) / n;
            let y = (r as f64 + 0.5) / n;
            let mut v = 0.08 + 0.06 * x + 0.03 * (6.0 * std::f64::consts::PI * y).sin();
            let (dx, dy) = (x - 0.53, y - 0.5);
            let rho2 = (dx * dx + dy * dy) / (0.33 * 0.33);
            if rho2 < 1.0 {
                let nz = (1.0 - rho2).sqrt();
                // Light from the upper left.
                let light = (0.35 * (-dx / 0.33) + 0.35 * (-dy / 0.33) + 0.87 * nz).max(0.0);
                let mut surface = 0.25 + 0.6 * light;
                for &(cx, cy, s, depth) in &craters {
                    let d2 = (x - cx).powi(2) + (y - cy).powi(2);
                    surface -= depth * (-d2 / (2.0 * s * s)).exp();
                    // Bright rim just outside each crater.
                    surface += 0.5 * depth * (-(d2.sqrt() - 1.6 * s).powi(2) / (0.08 * s * s)).exp();
                }
                v = surface;
            }
            pixels.push((v.clamp(0.0, 1.0) * 255.0).round() as u8);
        }
    }
    GrayImage {
        width: size,
        height: size,
        pixels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(w: usize, h: usize, v: f64) -> ImageGrid {
        ImageGrid::new(w, h, vec![v; w * h], 1.0).unwrap()
    }

    #[test]
    fn binning_examples() {
        assert_eq!(image_bin(&constant(4, 6, 0.3), 2).unwrap().values, vec![0.3; 6]);
        let checker = ImageGrid::new(2, 2, vec![0.0, 1.0, 1.0, 0.0], 1.0).unwrap();
        assert_eq!(image_bin(&checker, 2).unwrap().values, vec![0.5]);
        let img = ImageGrid::from_gray(&synthetic_test_image(32));
        let twice = image_bin(&image_bin(&img, 2).unwrap(), 2).unwrap();
        let once = image_bin(&img, 4).unwrap();
        for (a, b) in twice.values.iter().zip(&once.values) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(once.cell_size, 4.0);
        assert!(image_bin(&img, 5).is_err());
    }

    #[test]
    fn cell_average_at_same_size_reproduces_input() {
        let img = image_bin(&ImageGrid::from_gray(&synthetic_test_image(64)), 4).unwrap();
        let out = image_upscale(&img, 16, 16, "matern", 1.0, UpscaleMode::CellAverage).unwrap();
        for (a, b) in out.values.iter().zip(&img.values) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn constant_image_stays_constant_in_the_interior() {
        let out = image_upscale(&constant(12, 12, 0.4), 48, 48, "matern", 1.0, UpscaleMode::CellAverage).unwrap();
        // Far from the border the histopolant of constant data is nearly constant.
        let mid = out.get(24, 24);
        assert!((mid - 0.4).abs() < 1e-2, "{mid}");
        let same = image_upscale(&constant(3, 3, 0.4), 3, 3, "matern", 1.0, UpscaleMode::CellAverage).unwrap();
        assert!(same.values.iter().all(|v| (v - 0.4).abs() < 1e-12));
    }

    #[test]
    fn nearest_neighbor_replicates() {
        let img = ImageGrid::new(2, 1, vec![0.1, 0.9], 1.0).unwrap();
        let nn = nearest_neighbor_upscale(&img, 4, 2);
        assert_eq!(nn.values, vec![0.1, 0.1, 0.9, 0.9, 0.1, 0.1, 0.9, 0.9]);
    }

    #[test]
    fn synthetic_image_is_deterministic() {
        assert_eq!(synthetic_test_image(64), synthetic_test_image(64));
    }
}
