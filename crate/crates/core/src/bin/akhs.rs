//! Command-line driver for the histopolation experiments.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 for numeric failures.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use akhs::domain::load_samples;
use akhs::experiments::{
    converge, image_bin, image_upscale, kernel_for_problem, kernel_table, lagrange_table,
    nearest_neighbor_upscale, parse_grid, parse_range, read_points, rmse, synthetic_test_image,
    write_convergence_csv, write_kernel_table_csv, ImageGrid, TestFunction, UpscaleMode, WidthPolicy,
};
use akhs::fourier::{
    alpha_options, certify_averaging, kappa_hat_check, kappa_options, DEFAULT_BANDS, DEFAULT_SAMPLES,
};
use akhs::io::{fmt_float, read_image, write_image};
use akhs::kernel::pair_by_name;
use akhs::solver::{histopolate, AssemblyOptions, DEFAULT_NODES};
use akhs::{Error, Result};

#[derive(Parser)]
#[command(name = "akhs", version, about = "Kernel histopolation from mean values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KernelArgs {
    /// Catalog name: indicator, bspline:<n>, matern, inverse-quadratic,
    /// inverse-multiquadric, mexican-hat, gaussian, fd:<profile>, quad:<profile>.
    #[arg(long, default_value = "matern")]
    kernel: String,
    /// Shape parameter λ (ignored by indicator and B-spline kernels).
    #[arg(long, default_value_t = 1.0)]
    shape: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a histopolant to sample means and evaluate it.
    Histopolate {
        /// CSV with columns kind, c1.., e1.. (or r), value.
        #[arg(long)]
        samples: PathBuf,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Either a CSV of points or `lo:hi:n[,lo:hi:n...]`.
        #[arg(long, allow_hyphen_values = true)]
        eval_grid: String,
        /// Gauss–Legendre nodes per axis when quadrature assembly is needed.
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform and mean errors of 1D histopolation for growing n.
    Converge {
        #[command(flatten)]
        kernel: KernelArgs,
        /// `fixed:<a>` or `shrink` (a = 2/(n-1)).
        #[arg(long, default_value = "fixed:0.5")]
        a: String,
        /// Comma-separated segment counts.
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,40,80")]
        n: Vec<usize>,
        /// runge, constant, linear or step.
        #[arg(long, default_value = "runge")]
        function: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate α and κ of a univariate pair.
    KernelTable {
        #[command(flatten)]
        kernel: KernelArgs,
        /// Segment length.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value = "-3:3:601", allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the Lagrange basis of histopolation on uniform segments.
    LagrangeTable {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        /// Comma-separated centers or `lo:hi:n`.
        #[arg(long, default_value = "-1:1:5", allow_hyphen_values = true)]
        centers: String,
        #[arg(long, default_value = "-1.5:1.5:301", allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the alternating band signs of the Fourier transform of α.
    FourierCheck {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Number of bands of width 2π/a to sample.
        #[arg(long, default_value_t = DEFAULT_BANDS)]
        bands: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Sign slack; defaults to 1e-9·max|α̂|.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace every b×b block of an image by its mean.
    ImageBin {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        factor: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Upscale an image by tensor-product histopolation of its pixel means.
    ImageUpscale {
        #[arg(long)]
        input: PathBuf,
        /// Target size `WxH`.
        #[arg(long)]
        to: String,
        #[command(flatten)]
        kernel: KernelArgs,
        /// pointwise or cellavg.
        #[arg(long, default_value = "pointwise")]
        mode: String,
        #[arg(long)]
        out: PathBuf,
        /// Reference image; prints RMSE of the result and of nearest-neighbour upscaling.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Write the built-in synthetic test image.
    TestImage {
        #[arg(long, default_value_t = 256)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_list(spec: &str) -> Result<Vec<f64>> {
    if spec.contains(':') {
        return parse_range(spec);
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Validation(format!("not a number: `{s}`")))
        })
        .collect()
}

fn parse_size(spec: &str) -> Result<(usize, usize)> {
    let bad = || Error::Validation(format!("expected WxH, got `{spec}`"));
    let (w, h) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Histopolate {
            samples,
            kernel,
            eval_grid,
            nodes,
            out,
        } => {
            let problem = load_samples(&samples)?;
            let k = kernel_for_problem(&kernel.kernel, kernel.shape, &problem)?;
            let dim = problem.dim();
            let points = if Path::new(&eval_grid).is_file() {
                read_points(Path::new(&eval_grid), dim)?
            } else {
                parse_grid(&eval_grid, dim)?
            };
            let s = histopolate(&problem, &k, &AssemblyOptions { nodes })?;
            eprintln!(
                "n = {}, assembly = {:?}, condition estimate = {:e}, jitter = {:e}",
                problem.len(),
                s.assembly(),
                s.condition_estimate(),
                s.jitter()
            );
            let mut w = csv::Writer::from_writer(output(&out)?);
            let mut header: Vec<String> = (1..=dim).map(|k| format!("x{k}")).collect();
            header.push("value".into());
            w.write_record(&header)?;
            for p in &points {
                let mut rec: Vec<String> = p.iter().map(|v| fmt_float(*v)).collect();
                rec.push(fmt_float(s.evaluate(p)?));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Command::Converge {
            kernel,
            a,
            n,
            function,
            out,
        } => {
            let rows = converge(
                &kernel.kernel,
                kernel.shape,
                TestFunction::by_name(&function)?,
                &n,
                WidthPolicy::parse(&a)?,
            )?;
            for r in &rows {
                if let Some(msg) = &r.failure {
                    eprintln!("n = {}: {msg}", r.n);
                } else if r.jitter_used > 0.0 {
                    eprintln!("n = {}: diagonal jitter {:e} was needed", r.n, r.jitter_used);
                }
            }
            write_convergence_csv(&rows, output(&out)?)?;
        }
        Command::KernelTable { kernel, a, grid, out } => {
            let pair = pair_by_name(&kernel.kernel, kernel.shape, a)?;
            write_kernel_table_csv(&kernel_table(&pair, &parse_range(&grid)?), output(&out)?)?;
        }
        Command::LagrangeTable {
            kernel,
            a,
            centers,
            grid,
            out,
        } => {
            let pair = pair_by_name(&kernel.kernel, kernel.shape, a)?;
            let table = lagrange_table(&pair, &parse_list(&centers)?, &parse_range(&grid)?)?;
            table.write_csv(output(&out)?)?;
        }
        Command::FourierCheck {
            kernel,
            a,
            bands,
            samples,
            delta,
            out,
        } => {
            let pair = pair_by_name(&kernel.kernel, kernel.shape, a)?;
            let s_max = bands as f64 * 2.0 * std::f64::consts::PI / a;
            let alpha = |x: f64| pair.alpha(x);
            let kappa = |x: f64| pair.kappa(x);
            let cert = certify_averaging(&alpha, a, s_max, samples, delta, &alpha_options(&pair))?;
            let kopts = kappa_options(&pair);
            let khat = kappa_hat_check(&alpha, a, s_max, samples, &alpha_options(&pair), Some((&kappa, &kopts)))?;
            eprintln!("{}: {} (δ = {:e})", pair.name(), cert.overall.as_str(), cert.tolerance);
            if let Some(b) = cert.first_failure() {
                eprintln!("first failing band: {} on [{}, {}]", b.index, b.s_lo, b.s_hi);
            }
            eprintln!(
                "kappa transform: min {:e}, {}; direct vs product max diff {:e}",
                khat.min,
                if khat.pass { "nonnegative" } else { "NEGATIVE" },
                khat.direct_max_diff.unwrap_or(f64::NAN)
            );
            cert.write_csv(output(&out)?)?;
        }
        Command::ImageBin { input, factor, out } => {
            let grid = ImageGrid::from_gray(&read_image(&input)?);
            write_image(&image_bin(&grid, factor)?.to_gray(), &out)?;
        }
        Command::ImageUpscale {
            input,
            to,
            kernel,
            mode,
            out,
            compare,
        } => {
            let (w, h) = parse_size(&to)?;
            let grid = ImageGrid::from_gray(&read_image(&input)?);
            let up = image_upscale(&grid, w, h, &kernel.kernel, kernel.shape, UpscaleMode::parse(&mode)?)?;
            write_image(&up.to_gray(), &out)?;
            if let Some(reference) = compare {
                let reference = ImageGrid::from_gray(&read_image(&reference)?);
                let nn = nearest_neighbor_upscale(&grid, w, h);
                println!("rmse_histopolation,{}", fmt_float(rmse(&up, &reference)?));
                println!("rmse_nearest_neighbor,{}", fmt_float(rmse(&nn, &reference)?));
            }
        }
        Command::TestImage { size, out } => {
            if size == 0 {
                return Err(Error::Validation("size must be positive".into()));
            }
            write_image(&synthetic_test_image(size), &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 3 })
        }
    }
}

