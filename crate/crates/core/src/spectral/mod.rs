//! Periodic grids, the dyadic bump pair and Fourier multipliers.
//!
//! Transforms are unitary, so Parseval holds exactly and the forward/inverse
//! round trip is exact up to rounding. Symbols are evaluated at the grid
//! frequencies `2πk/L`, `k ∈ {-N/2, .., N/2-1}` per axis.

mod bump;
mod grid;
mod ops;
mod symbol;
pub mod transform;

pub use bump::{annular, dyadic_bump, evaluate_bump, low_pass, BumpKind};
pub use grid::{Grid, GridFunction};
pub use ops::{
    apply_symbol, convolve, derivative_symbol, fractional_op, gradient, lp_project, magnitude,
    plane_wave, random_band_limited, synthesize, translate, Fractional, Projection, Spectrum,
};
pub use symbol::{Symbol, SymbolKind};
