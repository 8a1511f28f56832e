use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Expected behaviour of the Kato-Ponce ratio for given `(s, p, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `s` is a positive even integer: `J^s` is a differential operator and
    /// the estimate holds for every `p`.
    EvenIntegerException,
    /// `s > max(0, n(1/p - 1))`.
    BoundedExpected,
    /// `0 < s <= n(1/p - 1)` (or `s <= 0`): the ratio can blow up.
    DivergentExpected,
}

const EVEN_TOL: f64 = 1e-12;

pub fn sharpness_classify(s: f64, p: f64, n: usize) -> Result<Regime> {
    if !s.is_finite() || p.is_nan() || p <= 0.0 || n == 0 {
        return Err(Error::pre(format!("invalid arguments s = {s}, p = {p}, n = {n}")));
    }
    let half = 0.5 * s;
    if half >= 1.0 - EVEN_TOL && (half - half.round()).abs() <= EVEN_TOL {
        return Ok(Regime::EvenIntegerException);
    }
    let inv_p = if p.is_infinite() { 0.0 } else { 1.0 / p };
    let threshold = (n as f64 * (inv_p - 1.0)).max(0.0);
    Ok(if s > threshold { Regime::BoundedExpected } else { Regime::DivergentExpected })
}
