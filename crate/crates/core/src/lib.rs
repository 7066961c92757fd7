pub mod cli;
pub mod config;
pub mod error;
pub mod group;
pub mod quadrature;
pub mod special;
pub mod spherical;
pub mod convolution;
pub mod io;
pub mod kernels;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
