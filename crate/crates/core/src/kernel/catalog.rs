//! String names for catalog kernels, as used on the command line.
//!
//! | name | kernel |
//! |------|--------|
//! | `indicator` | normalized indicator / hat |
//! | `bspline:<n>` | `M_{2n-1}` / `M_{2n}` B-spline pair |
//! | `matern`, `inverse-quadratic`, `inverse-multiquadric`, `mexican-hat` | closed forms |
//! | `fd:<profile>` | finite differences of the profile's anti-derivatives |
//! | `quad:<profile>`, `gaussian` | quadrature of the profile |
//! | `ball:<profile>:<d>` | radial kernel averaged over `d`-balls |

use crate::error::{Error, Result};
use crate::radial_nd::BallAveragedKernel;

use super::pair::{self, AveragedKernelPair};
use super::profile::RadialProfile;

/// A kernel resolved from the catalog.
#[derive(Debug, Clone)]
pub enum CatalogKernel {
    Pair(AveragedKernelPair),
    Ball(BallAveragedKernel),
}

/// Resolves a univariate pair; `width` is the segment length `a`.
pub fn pair_by_name(name: &str, shape: f64, width: f64) -> Result<AveragedKernelPair> {
    match name {
        "indicator" => pair::indicator_pair(width),
        "matern" => pair::matern_pair(shape, width),
        "inverse-quadratic" => pair::inverse_quadratic_pair(shape, width),
        "inverse-multiquadric" => pair::inverse_multiquadric_pair(shape, width),
        "mexican-hat" => pair::mexican_hat_pair(shape, width),
        "gaussian" => pair::pair_from_quadrature(RadialProfile::gaussian(shape)?, width),
        _ => {
            if let Some(n) = name.strip_prefix("bspline:") {
                let n: u32 = n
                    .parse()
                    .map_err(|_| Error::UnknownKernel(name.to_string()))?;
                pair::bspline_kernel_pair(n, width)
            } else if let Some(p) = name.strip_prefix("fd:") {
                pair::pair_from_antiderivatives(RadialProfile::by_name(p, shape)?, width)
            } else if let Some(p) = name.strip_prefix("quad:") {
                pair::pair_from_quadrature(RadialProfile::by_name(p, shape)?, width)
            } else {
                Err(Error::UnknownKernel(name.to_string()))
            }
        }
    }
}

/// Resolves any catalog kernel. For `ball:` kernels `width` is the ball radius.
pub fn kernel_by_name(name: &str, shape: f64, width: f64) -> Result<CatalogKernel> {
    if let Some(rest) = name.strip_prefix("ball:") {
        let (profile, dim) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::UnknownKernel(name.to_string()))?;
        let dim: usize = dim
            .parse()
            .map_err(|_| Error::UnknownKernel(name.to_string()))?;
        let profile = RadialProfile::by_name(profile, shape)?;
        return BallAveragedKernel::new(profile, dim, width).map(CatalogKernel::Ball);
    }
    pair_by_name(name, shape, width).map(CatalogKernel::Pair)
}
