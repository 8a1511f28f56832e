use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform periodic grid on the cube `[-L/2, L/2)^n`.
///
/// Samples are stored row-major: axis 0 varies slowest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    side: f64,
    points: usize,
}

impl Grid {
    /// `dim` must be 1, 2 or 3 and `points` even and at least 8.
    pub fn new(dim: usize, side: f64, points: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::pre(format!("unsupported dimension {dim}")));
        }
        if !(side.is_finite() && side > 0.0) {
            return Err(Error::pre(format!("side length must be positive, got {side}")));
        }
        if points < 8 || points % 2 != 0 {
            return Err(Error::pre(format!("points per axis must be even and >= 8, got {points}")));
        }
        Ok(Self { dim, side, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Number of samples, `points^dim`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Mesh width `L/N`.
    pub fn spacing(&self) -> f64 {
        self.side / self.points as f64
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Frequency spacing `2π/L`.
    pub fn frequency_step(&self) -> f64 {
        2.0 * PI / self.side
    }

    /// Largest representable frequency magnitude per axis, `πN/L`.
    pub fn nyquist(&self) -> f64 {
        PI * self.points as f64 / self.side
    }

    /// Coordinate of index `i` along any axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        -0.5 * self.side + i as f64 * self.spacing()
    }

    /// Signed frequency index of FFT slot `i`, in `-N/2..N/2`.
    pub fn wavenumber(&self, i: usize) -> i64 {
        let n = self.points as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Angular frequency of FFT slot `i`.
    pub fn frequency(&self, i: usize) -> f64 {
        self.frequency_step() * self.wavenumber(i) as f64
    }

    /// Per-axis indices of a flat sample index.
    pub fn unravel(&self, mut flat: usize, out: &mut [usize]) {
        for axis in (0..self.dim).rev() {
            out[axis] = flat % self.points;
            flat /= self.points;
        }
    }

    /// Visits every sample with its position vector.
    pub fn for_each_point(&self, mut visit: impl FnMut(usize, &[f64])) {
        let mut idx = [0usize; 3];
        let mut x = [0.0; 3];
        for flat in 0..self.len() {
            self.unravel(flat, &mut idx[..self.dim]);
            for a in 0..self.dim {
                x[a] = self.coordinate(idx[a]);
            }
            visit(flat, &x[..self.dim]);
        }
    }

    /// Visits every FFT slot with its frequency vector.
    pub fn for_each_frequency(&self, mut visit: impl FnMut(usize, &[f64])) {
        let mut idx = [0usize; 3];
        let mut xi = [0.0; 3];
        for flat in 0..self.len() {
            self.unravel(flat, &mut idx[..self.dim]);
            for a in 0..self.dim {
                xi[a] = self.frequency(idx[a]);
            }
            visit(flat, &xi[..self.dim]);
        }
    }

    /// Parity `(-1)^(k_1+..+k_n)` of FFT slot `flat`; relates DFT
    /// coefficients to the continuous transform on a box centred at zero.
    pub(crate) fn centre_phase(&self, flat: usize) -> f64 {
        let mut idx = [0usize; 3];
        self.unravel(flat, &mut idx[..self.dim]);
        let total: i64 = idx[..self.dim].iter().map(|&i| self.wavenumber(i)).sum();
        if total.rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Euclidean norm of the sample position at `flat`.
    pub fn radius(&self, flat: usize) -> f64 {
        let mut idx = [0usize; 3];
        self.unravel(flat, &mut idx[..self.dim]);
        idx[..self.dim]
            .iter()
            .map(|&i| self.coordinate(i).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Complex samples on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::pre(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self> {
        Self::from_values(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        grid.for_each_point(|_, x| values.push(f(x)));
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    fn check_same_grid(&self, other: &Self) {
        assert_eq!(self.grid, other.grid, "grid functions live on different grids");
    }

    fn zip(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        self.check_same_grid(other);
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        Self { grid: self.grid, values }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check_same_grid(other);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| v * c).collect() }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Largest modulus over the grid.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max|self - other| / max|other|`, or the absolute gap when `other` vanishes.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let gap = self.sub(other).max_abs();
        let scale = other.max_abs();
        if scale > 0.0 {
            gap / scale
        } else {
            gap
        }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}
