use serde::Serialize;

use crate::quadrature::tanh_sinh;
use crate::{Error, Result};

/// Relative accuracy demanded of every accepted kernel evaluation.
pub const KERNEL_REL_TOL: f64 = 1e-8;

// Beyond this the integrand is below e^{-LOG_CUTOFF} times its own power factor.
const LOG_CUTOFF: f64 = 800.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: f64,
    pub error: f64,
}

/// Evaluates the damped Bessel kernel at radius `y > 0` for `s >= -n`.
///
/// With `t = e^u` the integrand is `exp(-y² e^{-u} - δ² e^u - u(s+n)/2)`,
/// which decays double-exponentially in both directions. The `u`-line is
/// split at `t = y²` and `t = 1/δ²` and each piece is integrated by
/// tanh-sinh quadrature.
pub fn kernel_ks_delta(y: f64, s: f64, delta: f64, n: usize) -> Result<KernelValue> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::pre(format!("kernel radius must be positive, got {y}")));
    }
    if !(1..=3).contains(&n) {
        return Err(Error::pre(format!("unsupported dimension {n}")));
    }
    let order = s + n as f64;
    if !(order >= 0.0) {
        return Err(Error::pre(format!("kernel needs s >= -n, got s = {s}, n = {n}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::pre(format!("delta must lie in (0, 1], got {delta}")));
    }
    let y2 = y * y;
    let d2 = delta * delta;
    let log_integrand = move |u: f64| -y2 * (-u).exp() - d2 * u.exp() - 0.5 * order * u;

    let inner = y2.ln();
    let outer = -d2.ln();
    let lo = inner - LOG_CUTOFF.ln() - 0.5 * order.max(1.0) * 4.0;
    let hi = (LOG_CUTOFF / d2).ln();
    let mut cuts = vec![lo, inner.min(outer), inner.max(outer), hi];
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    // Shift by the peak of the log-integrand so the pieces stay in range.
    let peak = cuts.iter().map(|&u| log_integrand(u)).fold(f64::NEG_INFINITY, f64::max);
    let peak = peak.max(log_integrand(0.5 * (inner + outer)));

    let mut value = 0.0;
    let mut error = 0.0;
    for w in cuts.windows(2) {
        let est = tanh_sinh(|u| (log_integrand(u) - peak).exp(), w[0], w[1], 0.0, 1e-13)
            .or_else(|_| tanh_sinh(|u| (log_integrand(u) - peak).exp(), w[0], w[1], 0.0, 1e-10))?;
        value += est.value;
        error += est.error;
    }
    let scale = peak.exp();
    let result = KernelValue { value: value * scale, error: error * scale };
    if !result.value.is_finite() {
        return Err(Error::NonFinite(format!("kernel value at y = {y}, s = {s}, delta = {delta}")));
    }
    if result.error > KERNEL_REL_TOL * result.value {
        return Err(Error::Numerical(format!(
            "kernel quadrature error {} exceeds {KERNEL_REL_TOL} of value {}",
            result.error, result.value
        )));
    }
    Ok(result)
}

/// Kernel value against the calibrated envelope
/// `C y^{-(n+s)} exp(-4δy/(n+s+2))`, where `C` makes the envelope exact at
/// `y = 1, δ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub value: f64,
    pub envelope: f64,
    pub constant: f64,
    pub passes: bool,
}

/// Slack allowed over the envelope.
pub const ENVELOPE_SLACK: f64 = 10.0;

fn envelope_shape(y: f64, s: f64, delta: f64, n: usize) -> f64 {
    let order = s + n as f64;
    y.powf(-order) * (-4.0 * delta * y / (order + 2.0)).exp()
}

/// Requires `y >= 1` and `-n < s < 0`; non-negative orders are served by the
/// spectral route only.
pub fn kernel_bound_check(y: f64, s: f64, delta: f64, n: usize) -> Result<BoundCheck> {
    if s >= 0.0 {
        return Err(Error::pre(format!(
            "kernel evaluation is limited to negative orders, got s = {s}"
        )));
    }
    if !(y >= 1.0) {
        return Err(Error::pre(format!("envelope check needs y >= 1, got {y}")));
    }
    let calibration = kernel_ks_delta(1.0, s, 1.0, n)?.value;
    let constant = calibration / envelope_shape(1.0, s, 1.0, n);
    let value = kernel_ks_delta(y, s, delta, n)?.value;
    let envelope = constant * envelope_shape(y, s, delta, n);
    Ok(BoundCheck { value, envelope, constant, passes: value <= ENVELOPE_SLACK * envelope })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values of 2 (y/δ)^{-(s+n)/2} K_{(s+n)/2}(2δy) from mpmath at
    // 30 digits.
    const REFERENCE: &[(f64, f64, f64, usize, f64)] = &[
        (1.0, -0.5, 1.0, 1, 0.23075655368171351),
        (0.5, -0.5, 0.5, 1, 1.920632649863772),
        (2.0, -0.5, 0.25, 1, 0.51223880448892518),
        (3.0, -1.0, 0.5, 1, 0.069479008772558496),
        (1.5, -0.3, 0.1, 2, 0.4951765575132196),
        (0.7, 0.7, 1.0, 3, 2.3462539871074649),
    ];

    #[test]
    fn matches_reference_values() {
        for &(y, s, d, n, expected) in REFERENCE {
            let got = kernel_ks_delta(y, s, d, n).unwrap();
            assert!(
                (got.value - expected).abs() <= 1e-9 * expected,
                "y={y} s={s} d={d} n={n}: {} vs {expected}",
                got.value
            );
        }
    }

    #[test]
    fn preconditions() {
        assert!(kernel_ks_delta(0.0, -0.5, 1.0, 1).is_err());
        assert!(kernel_ks_delta(1.0, -1.5, 1.0, 1).is_err());
        assert!(kernel_ks_delta(1.0, -0.5, 0.0, 1).is_err());
        assert!(kernel_bound_check(8.0, 0.7, 1.0, 3).is_err());
        assert!(kernel_bound_check(0.5, -0.5, 1.0, 1).is_err());
    }

    #[test]
    fn envelope_is_exact_at_calibration_point() {
        let c = kernel_bound_check(1.0, -0.5, 1.0, 1).unwrap();
        assert!((c.value - c.envelope).abs() <= 1e-12 * c.value);
        let far = kernel_bound_check(50.0, -0.5, 0.01, 1).unwrap();
        assert!(far.passes);
    }
}
