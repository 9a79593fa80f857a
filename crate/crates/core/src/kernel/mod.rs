//! Univariate averaged kernels, B-splines and tensor products.

pub mod bspline;
pub mod catalog;
pub mod pair;
pub mod profile;
pub mod tensor;

pub use bspline::bspline_central;
pub use catalog::{kernel_by_name, pair_by_name, CatalogKernel};
pub use pair::{
    bspline_kernel_pair, indicator_pair, inverse_multiquadric_pair, inverse_quadratic_pair,
    matern_pair, mexican_hat_pair, pair_from_antiderivatives, pair_from_quadrature,
    AveragedKernelPair, Source,
};
pub use profile::RadialProfile;
pub use tensor::{tensor, TensorKernel};
