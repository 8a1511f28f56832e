use serde::{Deserialize, Serialize};

use super::weighted::{check_exponent, lp_sum};
use crate::spectral::GridFunction;
use crate::{Error, Result};

/// Exponent, weight power and number of axes of one factor of a mixed norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedComponent {
    pub p: f64,
    pub a: f64,
    pub dim: usize,
}

/// `‖ ‖f(·, y)‖_{L^{p_in}_{a_in}} ‖_{L^{p_out}_{a_out}(y)}` with the inner
/// variable on the leading axes. Both blocks share the grid's side and
/// resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedSpec {
    pub inner: MixedComponent,
    pub outer: MixedComponent,
}

impl MixedSpec {
    pub fn new(inner: MixedComponent, outer: MixedComponent) -> Self {
        Self { inner, outer }
    }
}

pub fn mixed_norm(f: &GridFunction, spec: &MixedSpec) -> Result<f64> {
    let grid = f.grid();
    let (di, dout) = (spec.inner.dim, spec.outer.dim);
    if di == 0 || dout == 0 {
        return Err(Error::pre("both blocks of a mixed norm need at least one axis"));
    }
    if di + dout != grid.dim() {
        return Err(Error::pre(format!(
            "mixed norm blocks {di}+{dout} do not match grid dimension {}",
            grid.dim()
        )));
    }
    check_exponent(spec.inner.p)?;
    check_exponent(spec.outer.p)?;

    let n = grid.points();
    let inner_len = n.pow(di as u32);
    let outer_len = n.pow(dout as u32);
    let h = grid.spacing();

    let radius_sq = |mut flat: usize, dims: usize| -> f64 {
        let mut r2 = 0.0;
        for _ in 0..dims {
            let x = grid.coordinate(flat % n);
            r2 += x * x;
            flat /= n;
        }
        r2
    };
    let inner_w: Vec<f64> =
        (0..inner_len).map(|i| (1.0 + radius_sq(i, di)).powf(0.5 * spec.inner.a)).collect();
    let outer_w: Vec<f64> =
        (0..outer_len).map(|o| (1.0 + radius_sq(o, dout)).powf(0.5 * spec.outer.a)).collect();

    let values = f.values();
    let slices: Vec<f64> = (0..outer_len)
        .map(|o| {
            let column = (0..inner_len).map(|i| values[i * outer_len + o].norm());
            if spec.inner.p.is_infinite() {
                column.fold(0.0, f64::max)
            } else {
                lp_sum(column, &inner_w, spec.inner.p, h.powi(di as i32))
            }
        })
        .collect();
    if spec.outer.p.is_infinite() {
        return Ok(slices.iter().cloned().fold(0.0, f64::max));
    }
    Ok(lp_sum(slices.into_iter(), &outer_w, spec.outer.p, h.powi(dout as i32)))
}
