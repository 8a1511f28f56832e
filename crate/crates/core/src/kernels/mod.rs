//! The exponentially damped Bessel kernel
//! `K(y) = ∫_0^∞ exp(-|y|²/t) exp(-δ² t) t^{-(s+n)/2} dt/t`,
//! its decay envelope, power-law tail fits and a direct convolution route to
//! the damped Bessel potential.

mod fit;
mod kernel;
mod oracle;

pub use fit::{least_squares_line, tail_exponent_fit, LineFit, TailFit};
pub use kernel::{kernel_bound_check, kernel_ks_delta, BoundCheck, KernelValue, ENVELOPE_SLACK};
pub use oracle::{jsdelta_tail_profile, kernel_convolution_oracle, TailProfile};
