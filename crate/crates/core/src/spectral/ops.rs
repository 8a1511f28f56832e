use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bump::BumpKind;
use super::grid::{Grid, GridFunction};
use super::symbol::Symbol;
use super::transform;
use crate::{Error, Result};

/// Unitary DFT coefficients of a grid function.
#[derive(Clone, Debug)]
pub struct Spectrum {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn of(f: &GridFunction) -> Self {
        let mut coeffs = f.values().to_vec();
        transform::forward(f.grid(), &mut coeffs);
        Self { grid: *f.grid(), coeffs }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Multiplies by `symbol` and transforms back.
    pub fn apply(&self, symbol: &Symbol) -> Result<GridFunction> {
        let mut out = self.coeffs.clone();
        let mut failure = None;
        self.grid.for_each_frequency(|flat, xi| {
            if failure.is_some() {
                return;
            }
            let m = symbol.eval(xi);
            if !(m.re.is_finite() && m.im.is_finite()) {
                failure = Some(format!("symbol {:?} is {m} at frequency {xi:?}", symbol.kind()));
                return;
            }
            out[flat] *= m;
        });
        if let Some(msg) = failure {
            return Err(Error::NonFinite(msg));
        }
        transform::inverse(&self.grid, &mut out);
        GridFunction::from_values(self.grid, out)
    }

    pub fn inverse(&self) -> GridFunction {
        let mut out = self.coeffs.clone();
        transform::inverse(&self.grid, &mut out);
        GridFunction::from_values(self.grid, out).expect("length preserved")
    }

    /// Euclidean norm of the coefficients, equal to the discrete L² norm of the samples.
    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|ξ|` carrying a coefficient above `tol * max|coeff|`.
    pub fn occupied_radius(&self, tol: f64) -> f64 {
        let peak = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut radius: f64 = 0.0;
        if peak == 0.0 {
            return 0.0;
        }
        self.grid.for_each_frequency(|flat, xi| {
            if self.coeffs[flat].norm() > tol * peak {
                radius = radius.max(xi.iter().map(|v| v * v).sum::<f64>().sqrt());
            }
        });
        radius
    }
}

/// Inverse transform of `symbol(ξ_k) * FFT f`.
pub fn apply_symbol(f: &GridFunction, symbol: &Symbol) -> Result<GridFunction> {
    Spectrum::of(f).apply(symbol)
}

/// Bessel, damped Bessel and Riesz potentials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fractional {
    Bessel { s: f64 },
    BesselDelta { s: f64, delta: f64 },
    Riesz { s: f64 },
}

impl Fractional {
    pub fn symbol(self) -> Result<Symbol> {
        match self {
            Fractional::Bessel { s } => Ok(Symbol::bessel(s)),
            Fractional::BesselDelta { s, delta } => Symbol::bessel_delta(s, delta),
            Fractional::Riesz { s } => Symbol::riesz(s),
        }
    }
}

pub fn fractional_op(f: &GridFunction, op: Fractional) -> Result<GridFunction> {
    apply_symbol(f, &op.symbol()?)
}

/// Multiplier of `∂_axis`, namely `i ξ_axis`.
pub fn derivative_symbol(axis: usize) -> Symbol {
    Symbol::custom(format!("d/dx{axis}"), move |xi| Complex64::new(0.0, xi[axis]))
}

/// Partial derivatives along every axis.
pub fn gradient(f: &GridFunction) -> Result<Vec<GridFunction>> {
    let spec = Spectrum::of(f);
    (0..f.grid().dim()).map(|axis| spec.apply(&derivative_symbol(axis))).collect()
}

/// Pointwise Euclidean length of a vector field.
pub fn magnitude(field: &[GridFunction]) -> GridFunction {
    let grid = *field[0].grid();
    let values = (0..grid.len())
        .map(|i| {
            let sq: f64 = field.iter().map(|c| c.values()[i].norm_sqr()).sum();
            Complex64::new(sq.sqrt(), 0.0)
        })
        .collect();
    GridFunction::from_values(grid, values).expect("length preserved")
}

/// Littlewood-Paley projections at an arbitrary integer scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Annular piece with multiplier `annular(2^-j ξ)`.
    Band(i32),
    /// Low-pass piece with multiplier `low_pass(2^-j ξ)`.
    Low(i32),
    /// Sum of the annular pieces with index within distance 2 of `j`.
    Widened(i32),
}

impl Projection {
    pub fn symbol(self) -> Symbol {
        match self {
            Projection::Band(j) => Symbol::bump(BumpKind::Annular, j),
            Projection::Low(j) => Symbol::bump(BumpKind::LowPass, j),
            Projection::Widened(j) => {
                let parts: Vec<Symbol> =
                    (j - 2..=j + 2).map(|k| Symbol::bump(BumpKind::Annular, k)).collect();
                Symbol::custom(format!("widened band {j}"), move |xi| {
                    parts.iter().map(|p| p.eval(xi)).sum()
                })
            }
        }
    }
}

pub fn lp_project(f: &GridFunction, projection: Projection) -> Result<GridFunction> {
    apply_symbol(f, &projection.symbol())
}

/// Samples of `x ↦ ∫ m(ξ) e^{i x·ξ} dξ` approximated by the Riemann sum over
/// grid frequencies; exact on the torus for band-limited `m`.
pub fn synthesize(grid: Grid, m: &Symbol) -> Result<GridFunction> {
    let mut coeffs = vec![Complex64::default(); grid.len()];
    let mut failure = None;
    grid.for_each_frequency(|flat, xi| {
        let v = m.eval(xi);
        if !(v.re.is_finite() && v.im.is_finite()) && failure.is_none() {
            failure = Some(format!("symbol {:?} is {v} at frequency {xi:?}", m.kind()));
        }
        coeffs[flat] = v * grid.centre_phase(flat);
    });
    if let Some(msg) = failure {
        return Err(Error::NonFinite(msg));
    }
    transform::inverse(&grid, &mut coeffs);
    let dim = grid.dim() as i32;
    let scale = grid.frequency_step().powi(dim) * (grid.len() as f64).sqrt();
    for c in coeffs.iter_mut() {
        *c *= scale;
    }
    GridFunction::from_values(grid, coeffs)
}

/// Circular convolution `(f*g)(x) = Σ_y f(y) g(x-y) h^n` on the centred box.
pub fn convolve(f: &GridFunction, g: &GridFunction) -> GridFunction {
    assert_eq!(f.grid(), g.grid(), "convolution operands live on different grids");
    let grid = *f.grid();
    let a = Spectrum::of(f);
    let b = Spectrum::of(g);
    let mut coeffs: Vec<Complex64> = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .enumerate()
        .map(|(flat, (x, y))| x * y * grid.centre_phase(flat))
        .collect();
    transform::inverse(&grid, &mut coeffs);
    let scale = grid.cell_volume() * (grid.len() as f64).sqrt();
    for c in coeffs.iter_mut() {
        *c *= scale;
    }
    GridFunction::from_values(grid, coeffs).expect("length preserved")
}

/// Real random function with spectrum supported in `|ξ| <= band`.
pub fn random_band_limited(grid: Grid, band: f64, seed: u64) -> GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::default(); grid.len()];
    grid.for_each_frequency(|flat, xi| {
        let r = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if r <= band {
            coeffs[flat] = z;
        }
    });
    transform::inverse(&grid, &mut coeffs);
    let values: Vec<f64> = coeffs.iter().map(|c| c.re).collect();
    GridFunction::from_real(grid, &values).expect("length preserved")
}

/// Plane wave `e^{i ξ·x}`; every component of `xi` must be a grid frequency.
pub fn plane_wave(grid: Grid, xi: &[f64]) -> Result<GridFunction> {
    if xi.len() != grid.dim() {
        return Err(Error::pre("frequency vector has the wrong dimension"));
    }
    for &v in xi {
        let k = v / grid.frequency_step();
        if (k - k.round()).abs() > 1e-9 * k.abs().max(1.0) {
            return Err(Error::pre(format!("{v} is not a grid frequency")));
        }
        if v.abs() >= grid.nyquist() {
            return Err(Error::pre(format!("{v} is at or beyond the Nyquist frequency")));
        }
    }
    let step = grid.frequency_step();
    let snapped: Vec<f64> = xi.iter().map(|v| (v / step).round() * step).collect();
    Ok(GridFunction::from_fn(grid, |x| {
        let phase: f64 = x.iter().zip(&snapped).map(|(a, b)| a * b).sum();
        Complex64::from_polar(1.0, phase)
    }))
}

/// Frequency-domain translation `f(· - shift)`.
pub fn translate(f: &GridFunction, shift: &[f64]) -> Result<GridFunction> {
    let shift = shift.to_vec();
    let sym = Symbol::custom("translation", move |xi| {
        let phase: f64 = xi.iter().zip(&shift).map(|(a, b)| a * b).sum();
        Complex64::from_polar(1.0, -phase)
    });
    apply_symbol(f, &sym)
}

