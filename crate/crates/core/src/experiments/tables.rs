use std::io::Write;

use nalgebra::DVector;

use crate::domain::{Domain, HistoProblem};
use crate::error::Result;
use crate::io::fmt_float;
use crate::kernel::AveragedKernelPair;
use crate::solver::{assemble, cross_vector, lagrange_values, AssemblyOptions, Kernel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRow {
    pub x: f64,
    pub alpha: f64,
    pub kappa: f64,
    /// `α(x)/κ(0)`.
    pub alpha_normalized: f64,
    /// `κ(x)/κ(0)`.
    pub kappa_normalized: f64,
}

pub fn kernel_table(pair: &AveragedKernelPair, xs: &[f64]) -> Vec<KernelRow> {
    let k0 = pair.kappa(0.0);
    xs.iter()
        .map(|&x| {
            let (alpha, kappa) = (pair.alpha(x), pair.kappa(x));
            KernelRow {
                x,
                alpha,
                kappa,
                alpha_normalized: alpha / k0,
                kappa_normalized: kappa / k0,
            }
        })
        .collect()
}

pub fn write_kernel_table_csv<W: Write>(rows: &[KernelRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "alpha", "kappa", "alpha_over_kappa0", "kappa_over_kappa0"])?;
    for r in rows {
        w.write_record([
            fmt_float(r.x),
            fmt_float(r.alpha),
            fmt_float(r.kappa),
            fmt_float(r.alpha_normalized),
            fmt_float(r.kappa_normalized),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Lagrange basis `ℓ_j` of histopolation on segments of the pair's width.
///
/// `values[r][j] = ℓ_j(x_r)`, and `means[r][j]` is the mean of `ℓ_j` over the
/// window of the same width centered at `x_r`; at a data center `c_i` that mean
/// is `δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeTable {
    pub centers: Vec<f64>,
    pub xs: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub means: Vec<Vec<f64>>,
}

pub fn lagrange_table(pair: &AveragedKernelPair, centers: &[f64], xs: &[f64]) -> Result<LagrangeTable> {
    let a = pair.width();
    let problem = HistoProblem::uniform_segments(centers, a, &vec![0.0; centers.len()])?;
    let kernel = Kernel::Pair(pair.clone());
    let opts = AssemblyOptions::default();
    let mut matrix = assemble(&problem, &kernel, &opts)?;
    let mut values = Vec::with_capacity(xs.len());
    let mut means = Vec::with_capacity(xs.len());
    for &x in xs {
        // ℓ(x) = K⁻¹ a(x) because K is symmetric.
        let avec = DVector::from_iterator(centers.len(), centers.iter().map(|&c| pair.alpha(x - c)));
        values.push(matrix.solve(avec.as_slice())?.iter().copied().collect());
        let (k, _) = cross_vector(&problem, &kernel, &Domain::segment(x, 0.5 * a)?, &opts)?;
        means.push(lagrange_values(&mut matrix, &k)?.iter().copied().collect());
    }
    Ok(LagrangeTable {
        centers: centers.to_vec(),
        xs: xs.to_vec(),
        values,
        means,
    })
}

impl LagrangeTable {
    /// Columns `x, l1..ln, mean_l1..mean_ln`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let n = self.centers.len();
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["x".to_string()];
        header.extend((1..=n).map(|j| format!("l{j}")));
        header.extend((1..=n).map(|j| format!("mean_l{j}")));
        w.write_record(&header)?;
        for (r, &x) in self.xs.iter().enumerate() {
            let mut rec = vec![fmt_float(x)];
            rec.extend(self.values[r].iter().map(|v| fmt_float(*v)));
            rec.extend(self.means[r].iter().map(|v| fmt_float(*v)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}
