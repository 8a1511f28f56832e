use std::f64::consts::PI;

use num_complex::Complex64;

use crate::spectral::transform;
use crate::spectral::{GridFunction, Projection, Spectrum, Symbol};
use crate::{Error, Result};

/// Fourier coefficients `c_m`, `|m|_∞ <= m_trunc`, of `sigma` on the cube
/// `[-R, R]^n` with period `2R`, so that `sigma(z) = Σ c_m e^{-iπ m·z/R}`.
/// Computed by the periodic trapezoid rule with `2(2M+1)` nodes per axis.
/// The result is row-major over `m ∈ {-M..M}^n`.
pub fn series_coefficients(sigma: &Symbol, dim: usize, radius: f64, m_trunc: usize) -> Vec<Complex64> {
    let modes = 2 * m_trunc + 1;
    let nodes = 2 * modes;
    let total = nodes.pow(dim as u32);
    let mut samples = vec![Complex64::default(); total];
    let mut z = [0.0; 3];
    for (flat, slot) in samples.iter_mut().enumerate() {
        let mut rest = flat;
        for a in (0..dim).rev() {
            z[a] = -radius + (rest % nodes) as f64 * 2.0 * radius / nodes as f64;
            rest /= nodes;
        }
        *slot = sigma.eval(&z[..dim]);
    }
    let dims = vec![nodes; dim];
    transform::inverse_dims(&dims, &mut samples);
    // Unitary inverse DFT → trapezoid average, then the e^{-iπm} shift from
    // starting the nodes at -R.
    let norm = 1.0 / (total as f64).sqrt();
    let mut out = Vec::with_capacity(modes.pow(dim as u32));
    let mut m = [0i64; 3];
    for flat in 0..modes.pow(dim as u32) {
        let mut rest = flat;
        for a in (0..dim).rev() {
            m[a] = (rest % modes) as i64 - m_trunc as i64;
            rest /= modes;
        }
        let mut src = 0usize;
        for &ma in &m[..dim] {
            src = src * nodes + ma.rem_euclid(nodes as i64) as usize;
        }
        let parity: i64 = m[..dim].iter().sum();
        let sign = if parity.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        out.push(samples[src] * norm * sign);
    }
    out
}

fn check_support(sigma: &Symbol, dim: usize, radius: f64) -> Result<()> {
    let mut directions: Vec<[f64; 3]> = Vec::new();
    let steps = 24;
    match dim {
        1 => directions.extend([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]),
        2 => {
            for i in 0..steps {
                let t = 2.0 * PI * i as f64 / steps as f64;
                directions.push([t.cos(), t.sin(), 0.0]);
            }
        }
        _ => {
            for i in 0..steps {
                for j in 1..steps / 2 {
                    let (t, p) = (2.0 * PI * i as f64 / steps as f64, PI * j as f64 / (steps / 2) as f64);
                    directions.push([p.sin() * t.cos(), p.sin() * t.sin(), p.cos()]);
                }
            }
            directions.extend([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]);
        }
    }
    for d in &directions {
        for i in 0..=16 {
            let r = radius * (1.0 + i as f64 / 16.0);
            let xi: Vec<f64> = d[..dim].iter().map(|v| v * r).collect();
            let v = sigma.eval(&xi);
            if v.norm() > 0.0 {
                return Err(Error::pre(format!(
                    "symbol does not vanish outside radius {radius}: value {v} at {xi:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Applies `sigma(2^{-k} ·)` to `S_k h` through the truncated Fourier series
/// of `sigma` on `[-R, R]^n`:
/// `Σ_{|m|_∞ <= M} c_m (S_k h)(x - π 2^{-k} m / R)`.
/// The translations are applied as phases in frequency space. `sigma` must
/// vanish for `|ξ| >= R`.
pub fn fourier_series_apply(
    sigma: &Symbol,
    k: i32,
    h: &GridFunction,
    radius: f64,
    m_trunc: usize,
) -> Result<GridFunction> {
    let grid = *h.grid();
    let dim = grid.dim();
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::pre(format!("series radius must be positive, got {radius}")));
    }
    check_support(sigma, dim, radius)?;
    let coeffs = series_coefficients(sigma, dim, radius, m_trunc);
    let modes = 2 * m_trunc + 1;
    let n = grid.points();
    let step = PI * 2f64.powi(-k) / radius;

    // Per-axis translation phases e^{-i ξ τ_m}.
    let phases: Vec<Complex64> = (0..modes)
        .flat_map(|mi| {
            let m = mi as f64 - m_trunc as f64;
            (0..n).map(move |i| Complex64::from_polar(1.0, -grid.frequency(i) * step * m))
        })
        .collect();

    // Contract one coefficient axis at a time against the phase table; the
    // contracted axis moves to the back, so after `dim` passes the axes are
    // back in order with the grid index in place of the mode index.
    let mut data = coeffs;
    let mut rest_len = modes.pow(dim as u32 - 1);
    let mut front = modes;
    for _ in 0..dim {
        let mut next = vec![Complex64::default(); rest_len * n];
        for m in 0..front {
            let row = &data[m * rest_len..(m + 1) * rest_len];
            let table = &phases[m * n..(m + 1) * n];
            for (r, &c) in row.iter().enumerate() {
                if c == Complex64::default() {
                    continue;
                }
                let out = &mut next[r * n..(r + 1) * n];
                for (o, &p) in out.iter_mut().zip(table) {
                    *o += c * p;
                }
            }
        }
        data = next;
        rest_len = rest_len / modes.max(1) * n;
        front = modes;
        if rest_len == 0 {
            break;
        }
    }
    let multiplier = data;
    let low = Spectrum::of(h).apply(&Projection::Low(k).symbol())?;
    let spec = Spectrum::of(&low);
    let mut values: Vec<Complex64> =
        spec.coeffs().iter().zip(&multiplier).map(|(a, b)| a * b).collect();
    transform::inverse(&grid, &mut values);
    GridFunction::from_values(grid, values)
}
