//! Bilinear frequency decompositions and the symbol calculus behind them.
//!
//! Paraproduct pieces use the exact index-pair partition `P_0 = S_0`,
//! `P_k = Δ_k` (`k >= 1`), so the four buckets always sum to the full
//! product up to rounding.

mod commutator;
mod paraproduct;
mod remainder;
mod series;

pub use commutator::{commutator_lhs, commutator_terms, first_order_correction, CommutatorOrder};
pub use paraproduct::{lp_pieces, paraproduct, Bucket, BucketSums};
pub use remainder::{symbol_remainder, RemainderComparison, REMAINDER_AGREEMENT};
pub use series::{fourier_series_apply, series_coefficients};
