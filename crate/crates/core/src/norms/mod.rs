//! Weighted and mixed Lebesgue (quasi-)norms on grids, Hölder exponent
//! bookkeeping and the two-sided geometric sequence bound.

mod exponents;
mod mixed;
mod weighted;

pub use exponents::{holder_exponents, interp_sequence_bound, ExponentTuple, SequenceBound};
pub use mixed::{mixed_norm, MixedComponent, MixedSpec};
pub use weighted::{weighted_norm, weighted_norm_with, Weight};
