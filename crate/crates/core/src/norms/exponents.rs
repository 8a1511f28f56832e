use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const RELATION_TOL: f64 = 1e-12;

fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Exponents `p1, p2, p` and weight powers `a1, a2, a` satisfying
/// `1/p = 1/p1 + 1/p2` and `a/p = a1/p1 + a2/p2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentTuple {
    pub p1: f64,
    pub p2: f64,
    pub p: f64,
    pub a1: f64,
    pub a2: f64,
    pub a: f64,
}

impl ExponentTuple {
    /// Validates a fully specified tuple; inconsistent inputs are rejected,
    /// never repaired.
    pub fn new(p1: f64, p2: f64, p: f64, a1: f64, a2: f64, a: f64) -> Result<Self> {
        let t = Self { p1, p2, p, a1, a2, a };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p1", self.p1), ("p2", self.p2), ("p", self.p)] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::pre(format!("{name} must lie in (0, ∞], got {v}")));
            }
        }
        for (name, v) in [("a1", self.a1), ("a2", self.a2), ("a", self.a)] {
            if !v.is_finite() {
                return Err(Error::pre(format!("{name} must be finite, got {v}")));
            }
        }
        let lhs = recip(self.p);
        let rhs = recip(self.p1) + recip(self.p2);
        if (lhs - rhs).abs() > RELATION_TOL * lhs.max(rhs).max(1.0) {
            return Err(Error::pre(format!(
                "1/p = {lhs} but 1/p1 + 1/p2 = {rhs}"
            )));
        }
        let lhs = self.a * recip(self.p);
        let rhs = self.a1 * recip(self.p1) + self.a2 * recip(self.p2);
        if (lhs - rhs).abs() > RELATION_TOL * lhs.abs().max(rhs.abs()).max(1.0) {
            return Err(Error::pre(format!(
                "a/p = {lhs} but a1/p1 + a2/p2 = {rhs}"
            )));
        }
        Ok(())
    }
}

/// Target exponent and weight power from the two factors. When both factors
/// are `L^∞` the target weight power is undetermined and set to 0.
pub fn holder_exponents(p1: f64, p2: f64, a1: f64, a2: f64) -> Result<ExponentTuple> {
    for (name, v) in [("p1", p1), ("p2", p2)] {
        if v.is_nan() || v <= 0.0 {
            return Err(Error::pre(format!("{name} must lie in (0, ∞], got {v}")));
        }
    }
    let inv = recip(p1) + recip(p2);
    let (p, a) = if inv == 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        let p = 1.0 / inv;
        (p, p * (a1 * recip(p1) + a2 * recip(p2)))
    };
    ExponentTuple::new(p1, p2, p, a1, a2, a)
}

/// Left and right sides of `‖min(2^{ka}A, 2^{-kb}B)‖_{ℓ^u(|k|<=K)} <=
/// C A^{b/(a+b)} B^{a/(a+b)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SequenceBound {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn interp_sequence_bound(
    a: f64,
    b: f64,
    big_a: f64,
    big_b: f64,
    u: f64,
    terms: u32,
) -> Result<SequenceBound> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::pre(format!("growth rates must be positive, got {a}, {b}")));
    }
    if !(big_a > 0.0 && big_b > 0.0) || !big_a.is_finite() || !big_b.is_finite() {
        return Err(Error::pre("amplitudes must be positive and finite"));
    }
    if u.is_nan() || u <= 0.0 {
        return Err(Error::pre(format!("sequence exponent must lie in (0, ∞], got {u}")));
    }
    let k = terms as i32;
    let entries = (-k..=k).map(|j| {
        let up = 2f64.powf(j as f64 * a) * big_a;
        let down = 2f64.powf(-(j as f64) * b) * big_b;
        up.min(down)
    });
    let lhs = if u.is_infinite() {
        entries.fold(0.0, f64::max)
    } else {
        entries.map(|v| v.powf(u)).sum::<f64>().powf(1.0 / u)
    };
    let rhs = big_a.powf(b / (a + b)) * big_b.powf(a / (a + b));
    Ok(SequenceBound { lhs, rhs })
}
