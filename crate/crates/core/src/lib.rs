//! Spectral operators, weighted Lebesgue norms and a numerical harness for
//! weighted fractional Leibniz (Kato-Ponce) inequalities on periodic grids.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: grids, the smooth dyadic bump pair, Fourier multipliers,
//!   Bessel and Riesz potentials, Littlewood-Paley projections.
//! - [`norms`]: weighted and mixed Lebesgue norms, Hölder exponent algebra,
//!   the two-sided geometric sequence interpolation bound.
//! - [`kernels`]: the exponentially damped Bessel kernel by quadrature, its
//!   decay envelope, power-law tail fits and a convolution cross-check.
//! - [`decomposition`]: paraproduct and commutator splittings, symbol
//!   remainders and finite Fourier-series representations of multipliers.
//! - [`harness`]: inequality ratios, test families, sweeps and the
//!   acceptance suite.
//! - [`cli`]: JSON-configured runs with CSV and JSON output.

pub mod cli;
pub mod decomposition;
mod error;
pub mod harness;
pub mod kernels;
pub mod norms;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
