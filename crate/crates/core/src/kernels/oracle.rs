use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::gamma;

use super::fit::{tail_exponent_fit, TailFit};
use super::kernel::kernel_ks_delta;
use crate::quadrature::tanh_sinh;
use crate::spectral::{convolve, fractional_op, Fractional, GridFunction};
use crate::{Error, Result};

/// Shell maxima of `|J^s_δ f|` at each radius and their power-law fit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub fit: TailFit,
}

/// Half-width of the shell sampled around radius `r`.
fn shell_half_width(r: f64, spacing: f64) -> f64 {
    (r / 8.0).max(spacing)
}

/// Computes `J^s_δ f` spectrally and records `max |J^s_δ f(x)|` over the
/// shell `||x| - r| <= max(r/8, h)` for each radius.
pub fn jsdelta_tail_profile(f: &GridFunction, s: f64, delta: f64, radii: &[f64]) -> Result<TailProfile> {
    let grid = *f.grid();
    let h = grid.spacing();
    for &r in radii {
        if r + shell_half_width(r, h) >= 0.5 * grid.side() {
            return Err(Error::pre(format!("radius {r} reaches outside the box")));
        }
    }
    let potential = fractional_op(f, Fractional::BesselDelta { s, delta })?;
    let radius: Vec<f64> = (0..grid.len()).map(|i| grid.radius(i)).collect();
    let values: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let w = shell_half_width(r, h);
            potential
                .values()
                .iter()
                .zip(&radius)
                .filter(|(_, &rho)| (rho - r).abs() <= w)
                .map(|(v, _)| v.norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let fit = tail_exponent_fit(radii, &values)?;
    Ok(TailProfile { radii: radii.to_vec(), values, fit })
}

fn unit_ball_volume(n: usize) -> f64 {
    PI.powf(0.5 * n as f64) / gamma(0.5 * n as f64 + 1.0)
}

/// Average of the radial kernel over the ball whose volume equals one grid
/// cell; exact for the origin cell in one dimension.
fn origin_cell_average(s: f64, delta: f64, n: usize, h: f64) -> Result<f64> {
    let volume = h.powi(n as i32);
    let r_eq = (volume / unit_ball_volume(n)).powf(1.0 / n as f64);
    let mut failure = None;
    let est = tanh_sinh(
        |r| match kernel_ks_delta(r, s, delta, n) {
            Ok(k) => k.value * r.powi(n as i32 - 1),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        r_eq,
        0.0,
        1e-10,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(n as f64 * unit_ball_volume(n) * est.value / volume)
}

/// `J^s_δ f` by direct convolution with grid samples of the damped Bessel
/// kernel, for `-n <= s < 0`.
///
/// The kernel with parameter `δ/2` has Fourier transform
/// `π^{n/2} Γ(-s/2) 2^{-s} (δ² + |ξ|²)^{s/2}`, so the convolution is divided
/// by that constant. The integrable singularity at the origin is handled by
/// replacing the origin sample with a cell average.
pub fn kernel_convolution_oracle(f: &GridFunction, s: f64, delta: f64) -> Result<GridFunction> {
    let grid = *f.grid();
    let n = grid.dim();
    if !(s < 0.0 && s >= -(n as f64)) {
        return Err(Error::pre(format!(
            "the kernel route needs -n <= s < 0, got s = {s} with n = {n}"
        )));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::pre(format!("delta must lie in (0, 1], got {delta}")));
    }
    if f.max_abs() == 0.0 {
        return Ok(GridFunction::zeros(grid));
    }
    let half = 0.5 * delta;
    let h = grid.spacing();
    let centre = grid.points() / 2;
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut samples = vec![Complex64::default(); grid.len()];
    let mut idx = [0usize; 3];
    for (flat, slot) in samples.iter_mut().enumerate() {
        grid.unravel(flat, &mut idx[..n]);
        let key: u64 = idx[..n]
            .iter()
            .map(|&i| {
                let d = i as i64 - centre as i64;
                (d * d) as u64
            })
            .sum();
        let value = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let v = if key == 0 {
                    origin_cell_average(s, half, n, h)?
                } else {
                    kernel_ks_delta(h * (key as f64).sqrt(), s, half, n)?.value
                };
                cache.insert(key, v);
                v
            }
        };
        *slot = Complex64::new(value, 0.0);
    }
    let kernel = GridFunction::from_values(grid, samples)?;
    let normaliser = PI.powf(0.5 * n as f64) * gamma(-0.5 * s) * 2f64.powf(-s);
    Ok(convolve(f, &kernel).scale(Complex64::new(1.0 / normaliser, 0.0)))
}
