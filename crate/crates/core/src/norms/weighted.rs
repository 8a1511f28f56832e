use serde::{Deserialize, Serialize};

use crate::spectral::{Grid, GridFunction};
use crate::{Error, Result};

/// Polynomial weights. `Japanese(a)` is `(1+|x|²)^(a/2)`; `Homogeneous(a)` is
/// `|x|^a`, whose origin cell uses the exact cell average.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "a")]
pub enum Weight {
    Japanese(f64),
    Homogeneous(f64),
}

impl Weight {
    pub fn exponent(self) -> f64 {
        match self {
            Weight::Japanese(a) | Weight::Homogeneous(a) => a,
        }
    }

    /// Same family, different exponent.
    pub fn with_exponent(self, a: f64) -> Weight {
        match self {
            Weight::Japanese(_) => Weight::Japanese(a),
            Weight::Homogeneous(_) => Weight::Homogeneous(a),
        }
    }
}

/// Average of `|x|^a` over the cube `[-h/2, h/2]^dim`, by a midpoint rule on
/// a fine sub-grid. The integrand is singular only at the centre, which no
/// sub-cell midpoint touches.
pub(crate) fn origin_cell_average(a: f64, h: f64, dim: usize) -> f64 {
    if dim == 1 {
        return (0.5 * h).powf(a) / (a + 1.0);
    }
    let m: usize = if dim == 2 { 256 } else { 64 };
    let step = h / m as f64;
    let mut total = 0.0;
    let count = m.pow(dim as u32);
    let mut idx = [0usize; 3];
    for flat in 0..count {
        let mut rest = flat;
        for slot in idx[..dim].iter_mut() {
            *slot = rest % m;
            rest /= m;
        }
        let r2: f64 = idx[..dim]
            .iter()
            .map(|&i| (-0.5 * h + (i as f64 + 0.5) * step).powi(2))
            .sum();
        total += r2.powf(0.5 * a);
    }
    total / count as f64
}

pub(crate) fn weight_values(grid: &Grid, weight: Weight) -> Vec<f64> {
    let mut out = vec![0.0; grid.len()];
    match weight {
        Weight::Japanese(a) => grid.for_each_point(|flat, x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            out[flat] = (1.0 + r2).powf(0.5 * a);
        }),
        Weight::Homogeneous(a) => {
            let centre = origin_cell_average(a, grid.spacing(), grid.dim());
            grid.for_each_point(|flat, x| {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                out[flat] = if r2 == 0.0 { centre } else { r2.powf(0.5 * a) };
            });
        }
    }
    out
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::pre(format!("Lebesgue exponent must be positive, got {p}")));
    }
    Ok(())
}

/// Riemann-sum `(Σ |f|^p w (L/N)^n)^(1/p)`; `p = ∞` gives `max|f|` and
/// ignores the weight.
pub fn weighted_norm_with(f: &GridFunction, p: f64, weight: Weight) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(f.max_abs());
    }
    let w = weight_values(f.grid(), weight);
    Ok(lp_sum(f.values().iter().map(|v| v.norm()), &w, p, f.grid().cell_volume()))
}

pub(crate) fn lp_sum(abs: impl Iterator<Item = f64>, w: &[f64], p: f64, cell: f64) -> f64 {
    // Scale by the maximum first so large exponents do not overflow.
    let vals: Vec<f64> = abs.collect();
    let peak = vals.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let sum: f64 = vals.iter().zip(w).map(|(v, wi)| (v / peak).powf(p) * wi).sum();
    peak * (sum * cell).powf(1.0 / p)
}

/// Norm with the weight `(1+|x|²)^(a/2)`.
pub fn weighted_norm(f: &GridFunction, p: f64, a: f64) -> Result<f64> {
    weighted_norm_with(f, p, Weight::Japanese(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn constant_one_unweighted() {
        let grid = Grid::new(1, 10.0, 64).unwrap();
        let f = GridFunction::from_fn(grid, |_| Complex64::new(1.0, 0.0));
        assert_relative_eq!(weighted_norm(&f, 2.0, 0.0).unwrap(), 10f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(weighted_norm(&f, 1.0, 0.0).unwrap(), 10.0, max_relative = 1e-14);
    }

    #[test]
    fn sup_norm_ignores_weight() {
        let grid = Grid::new(1, 10.0, 64).unwrap();
        let f = GridFunction::from_fn(grid, |x| Complex64::new(-3.0 * (-x[0] * x[0]).exp(), 0.0));
        assert_eq!(weighted_norm(&f, f64::INFINITY, 5.0).unwrap(), 3.0);
    }

    #[test]
    fn rejects_nonpositive_exponent() {
        let grid = Grid::new(1, 10.0, 64).unwrap();
        let f = GridFunction::zeros(grid);
        assert!(matches!(weighted_norm(&f, 0.0, 0.0), Err(Error::Precondition(_))));
        assert!(matches!(weighted_norm(&f, -1.0, 0.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn origin_cell_average_matches_closed_form_in_one_dimension() {
        // (1/h)∫_{-h/2}^{h/2}|x|^a dx = (h/2)^a/(a+1)
        assert_relative_eq!(origin_cell_average(2.0, 1.0, 1), 1.0 / 12.0, max_relative = 1e-15);
        // 2-D, a = 2: (1/h²)∫∫ (x²+y²) = h²/6
        assert_relative_eq!(origin_cell_average(2.0, 1.0, 2), 1.0 / 6.0, max_relative = 1e-4);
    }
}
