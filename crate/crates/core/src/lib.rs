//! Kernel-based histopolation: reconstruction of functions from their mean
//! values over segments, boxes and balls.

pub mod domain;
pub mod error;
pub mod experiments;
pub mod fourier;
pub mod io;
pub mod kernel;
pub mod quadrature;
pub mod radial_nd;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
