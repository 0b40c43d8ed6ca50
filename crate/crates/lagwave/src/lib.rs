//! Wavelet frames from Fourier transforms of Laguerre functions.
//!
//! The crate evaluates the rational analyzing wavelets whose Fourier
//! transforms are Laguerre functions, the Bergman (analytic wavelet)
//! transform they induce, hyperbolic-lattice geometry on the upper
//! half-plane / unit disc with Beurling density estimation, and empirical
//! frame bounds for the discretized wavelet systems. A `lwf` binary exposes
//! the same machinery as a CLI.

pub mod error;
pub mod special;

pub(crate) mod linalg;
pub mod quadrature;

pub mod geometry;
pub mod transforms;

pub mod frames;

pub mod cli;
pub mod verify;

pub use error::{Error, Result};
pub use special::WaveletOrder;
