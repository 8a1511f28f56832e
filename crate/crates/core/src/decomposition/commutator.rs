use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::paraproduct::{bucket_products, lp_pieces, BucketSums};
use crate::spectral::{apply_symbol, gradient, Spectrum, Symbol};
use crate::spectral::GridFunction;
use crate::Result;

/// Truncation order of the commutator expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorOrder {
    /// `J^s(fg) - f J^s g`.
    First,
    /// The first-order commutator minus [`first_order_correction`].
    Second,
}

/// Bucketed pieces `J^s(P_j f · P_k g) - P_j f · J^s P_k g`. They add up to
/// `J^s(fg) - f J^s g`.
pub fn commutator_terms(f: &GridFunction, g: &GridFunction, s: f64, k_max: usize) -> Result<BucketSums> {
    let fp = lp_pieces(f, k_max)?;
    let gp = lp_pieces(g, k_max)?;
    let bessel = Symbol::bessel(s);
    let smoothed_g: Vec<GridFunction> =
        gp.iter().map(|p| apply_symbol(p, &bessel)).collect::<Result<_>>()?;
    let outer = bucket_products(&fp, &gp).map(|b| apply_symbol(b, &bessel))?;
    let inner = bucket_products(&fp, &smoothed_g);
    Ok(outer.sub(&inner))
}

/// The bilinear operator with symbol `s ξ·η ⟨η⟩^{s-2}` (`ξ` the frequency of
/// `f`, `η` that of `g`), i.e. `-s ∇f · ∇J^{s-2} g`. It is the linear term of
/// `⟨ξ+η⟩^s - ⟨η⟩^s` in `ξ`.
pub fn first_order_correction(f: &GridFunction, g: &GridFunction, s: f64) -> Result<GridFunction> {
    let df = gradient(f)?;
    let smoothed = Spectrum::of(g).apply(&Symbol::bessel(s - 2.0))?;
    let dg = gradient(&smoothed)?;
    let mut out = GridFunction::zeros(*f.grid());
    for (a, b) in df.iter().zip(&dg) {
        out.add_assign(&a.mul(b));
    }
    Ok(out.scale(Complex64::new(-s, 0.0)))
}

pub fn commutator_lhs(f: &GridFunction, g: &GridFunction, s: f64, order: CommutatorOrder) -> Result<GridFunction> {
    let bessel = Symbol::bessel(s);
    let first = apply_symbol(&f.mul(g), &bessel)?.sub(&f.mul(&apply_symbol(g, &bessel)?));
    match order {
        CommutatorOrder::First => Ok(first),
        CommutatorOrder::Second => Ok(first.sub(&first_order_correction(f, g, s)?)),
    }
}
