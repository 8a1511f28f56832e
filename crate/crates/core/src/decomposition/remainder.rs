use serde::Serialize;

use super::commutator::CommutatorOrder;
use crate::quadrature::tanh_sinh;
use crate::{Error, Result};

/// Required agreement `|direct - quadrature| <= REMAINDER_AGREEMENT (1 + |direct|)`.
pub const REMAINDER_AGREEMENT: f64 = 1e-8;

const QUAD_TOL: f64 = 1e-10;

/// Closed-form and integral-representation values of a symbol remainder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RemainderComparison {
    pub direct: f64,
    pub quadrature: f64,
    pub quadrature_error: f64,
}

impl RemainderComparison {
    pub fn gap(&self) -> f64 {
        (self.direct - self.quadrature).abs()
    }

    pub fn agrees(&self) -> bool {
        self.gap() <= REMAINDER_AGREEMENT * (1.0 + self.direct.abs())
    }
}

fn bracket(w2: f64, power: f64) -> f64 {
    (1.0 + w2).powf(0.5 * power)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨ξ+η⟩^s - ⟨η⟩^s` (first order) or that minus `s ξ·η ⟨η⟩^{s-2}` (second
/// order), directly and through the Taylor integral along `w(t) = tξ + η`:
///
/// - first order: `∫_0^1 s ξ·w ⟨w⟩^{s-2} dt`;
/// - second order: `∫_0^1 ∫_0^t s (|ξ|² ⟨w⟩^{s-2} + (s-2)(ξ·w)² ⟨w⟩^{s-4}) dt' dt`.
pub fn symbol_remainder(xi: &[f64], eta: &[f64], s: f64, order: CommutatorOrder) -> Result<RemainderComparison> {
    if xi.len() != eta.len() || xi.is_empty() {
        return Err(Error::pre("frequency vectors must share a positive dimension"));
    }
    let n2 = |v: &[f64]| dot(v, v);
    let sum: Vec<f64> = xi.iter().zip(eta).map(|(a, b)| a + b).collect();
    let base = bracket(n2(&sum), s) - bracket(n2(eta), s);
    let linear = s * dot(xi, eta) * bracket(n2(eta), s - 2.0);
    let xi2 = n2(xi);

    let w = |t: f64| -> Vec<f64> { xi.iter().zip(eta).map(|(a, b)| t * a + b).collect() };
    let gradient_term = |t: f64| {
        let wt = w(t);
        s * dot(xi, &wt) * bracket(n2(&wt), s - 2.0)
    };
    let hessian_term = |t: f64| {
        let wt = w(t);
        let w2 = n2(&wt);
        let xw = dot(xi, &wt);
        s * (xi2 * bracket(w2, s - 2.0) + (s - 2.0) * xw * xw * bracket(w2, s - 4.0))
    };

    let (direct, est) = match order {
        CommutatorOrder::First => (base, tanh_sinh(&gradient_term, 0.0, 1.0, QUAD_TOL, QUAD_TOL)?),
        CommutatorOrder::Second => {
            let mut inner_error = 0.0f64;
            let mut failure = None;
            let outer = tanh_sinh(
                |t| match tanh_sinh(&hessian_term, 0.0, t, 1e-3 * QUAD_TOL, 1e-3 * QUAD_TOL) {
                    Ok(e) => {
                        inner_error = inner_error.max(e.error);
                        e.value
                    }
                    Err(err) => {
                        failure.get_or_insert(err);
                        0.0
                    }
                },
                0.0,
                1.0,
                QUAD_TOL,
                QUAD_TOL,
            )?;
            if let Some(err) = failure {
                return Err(err);
            }
            (base - linear, crate::quadrature::Estimate { value: outer.value, error: outer.error + inner_error })
        }
    };
    Ok(RemainderComparison { direct, quadrature: est.value, quadrature_error: est.error })
}
