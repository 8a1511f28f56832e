use serde::Serialize;

use crate::{Error, Result};

/// Ordinary least-squares line with the root-mean-square residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

pub fn least_squares_line(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::pre("a line fit needs at least two paired samples"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::pre("abscissae are all equal"));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let fit = LineFit { slope, intercept, residual: (ss / n).sqrt() };
    if !(fit.slope.is_finite() && fit.intercept.is_finite()) {
        return Err(Error::NonFinite("line fit".into()));
    }
    Ok(fit)
}

/// Power law `value ≈ e^intercept · radius^exponent` fitted in log-log space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailFit {
    pub exponent: f64,
    pub intercept: f64,
    pub residual: f64,
}

/// Needs at least four strictly increasing positive radii and positive values.
pub fn tail_exponent_fit(radii: &[f64], values: &[f64]) -> Result<TailFit> {
    if radii.len() != values.len() {
        return Err(Error::pre("radii and values differ in length"));
    }
    if radii.len() < 4 {
        return Err(Error::pre(format!("tail fit needs at least 4 points, got {}", radii.len())));
    }
    if radii.windows(2).any(|w| !(w[1] > w[0])) || radii[0] <= 0.0 {
        return Err(Error::pre("radii must be positive and strictly increasing"));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::pre(format!("tail values must be positive, found {v}")));
    }
    let lx: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let line = least_squares_line(&lx, &ly)?;
    Ok(TailFit { exponent: line.slope, intercept: line.intercept, residual: line.residual })
}
