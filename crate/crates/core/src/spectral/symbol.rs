use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::bump::{dyadic_bump, BumpKind};
use crate::{Error, Result};

/// What a [`Symbol`] represents, for reporting and dispatch.
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolKind {
    /// `(1 + |ξ|²)^(s/2)`.
    Bessel { s: f64 },
    /// `(δ² + |ξ|²)^(s/2)`.
    BesselDelta { s: f64, delta: f64 },
    /// `|ξ|^s`, set to zero at the origin.
    Riesz { s: f64 },
    /// `kind(2^-j ξ)`.
    Bump { kind: BumpKind, j: i32 },
    Custom(String),
}

type Evaluator = dyn Fn(&[f64]) -> Complex64 + Send + Sync;

/// A Fourier multiplier: an evaluator plus a descriptor.
#[derive(Clone)]
pub struct Symbol {
    kind: SymbolKind,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol").field("kind", &self.kind).finish()
    }
}

fn norm_sq(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v * v).sum()
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

impl Symbol {
    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        (self.eval)(xi)
    }

    pub fn custom(
        label: impl Into<String>,
        eval: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self { kind: SymbolKind::Custom(label.into()), eval: Arc::new(eval) }
    }

    /// Real-valued custom multiplier.
    pub fn custom_real(
        label: impl Into<String>,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::custom(label, move |xi| real(eval(xi)))
    }

    pub fn bessel(s: f64) -> Self {
        Self {
            kind: SymbolKind::Bessel { s },
            eval: Arc::new(move |xi| real((1.0 + norm_sq(xi)).powf(0.5 * s))),
        }
    }

    /// Requires `delta` in `(0, 1]`.
    pub fn bessel_delta(s: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::pre(format!("delta must lie in (0, 1], got {delta}")));
        }
        let d2 = delta * delta;
        Ok(Self {
            kind: SymbolKind::BesselDelta { s, delta },
            eval: Arc::new(move |xi| real((d2 + norm_sq(xi)).powf(0.5 * s))),
        })
    }

    /// Requires `s > 0`.
    pub fn riesz(s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::pre(format!("Riesz potential needs s > 0, got {s}")));
        }
        Ok(Self {
            kind: SymbolKind::Riesz { s },
            eval: Arc::new(move |xi| {
                let r2 = norm_sq(xi);
                if r2 == 0.0 {
                    real(0.0)
                } else {
                    real(r2.powf(0.5 * s))
                }
            }),
        })
    }

    pub fn bump(kind: BumpKind, j: i32) -> Self {
        Self {
            kind: SymbolKind::Bump { kind, j },
            eval: Arc::new(move |xi| real(dyadic_bump(kind, j, norm_sq(xi).sqrt()))),
        }
    }

    /// `self(ξ) * other(ξ)`.
    pub fn times(&self, other: &Symbol) -> Symbol {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Symbol::custom(format!("{:?} * {:?}", self.kind, other.kind), move |xi| a(xi) * b(xi))
    }

    /// `self(c ξ)`.
    pub fn dilate(&self, c: f64) -> Symbol {
        let a = self.eval.clone();
        Symbol::custom(format!("{:?} at scale {c}", self.kind), move |xi| {
            let mut scaled = [0.0; 3];
            for (t, v) in scaled.iter_mut().zip(xi) {
                *t = c * v;
            }
            a(&scaled[..xi.len()])
        })
    }
}
