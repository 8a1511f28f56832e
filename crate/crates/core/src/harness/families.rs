use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spectral::{annular, low_pass, plane_wave, synthesize, Grid, GridFunction, Symbol};
use crate::{Error, Result};

/// Radial profile whose inverse transform seeds the dilation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseProfile {
    /// Inverse transform of the low-pass bump.
    LowPass,
    /// Inverse transform of the annular bump.
    Annular,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FamilyKind {
    /// `f_k = e^{i 2^k x_1} φ`, `g_k = e^{-i 2^k x_1} φ` with `φ` the inverse
    /// transform of the low-pass bump; parameters are the integers `k`.
    Modulated,
    /// `f = g = base(x/δ)`; parameters are `δ ∈ (0, 1]`.
    Dilated { base: BaseProfile },
    /// `f = g = ψ(x/δ)` with `ψ` the inverse transform of the annular bump;
    /// used with commutators.
    PsiSquared,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<f64>,
}

/// Spatial radius beyond which the base profiles are treated as negligible.
const PROFILE_RADIUS: f64 = 16.0;

fn half_nyquist(grid: &Grid) -> f64 {
    0.5 * grid.nyquist()
}

fn check_dilation(grid: &Grid, delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::pre(format!("dilation parameter must lie in (0, 1], got {delta}")));
    }
    let band = 2.0 / delta;
    if band > half_nyquist(grid) {
        return Err(Error::pre(format!(
            "dilation {delta} occupies |ξ| <= {band}, above half-Nyquist {}",
            half_nyquist(grid)
        )));
    }
    if PROFILE_RADIUS * delta > 0.5 * grid.side() {
        return Err(Error::pre(format!("dilation {delta} does not fit inside the box")));
    }
    Ok(())
}

/// Checks one family parameter against the grid without generating the pair.
pub fn family_check(grid: &Grid, kind: FamilyKind, param: f64) -> Result<()> {
    match kind {
        FamilyKind::Modulated => {
            if param.fract() != 0.0 || param < 0.0 {
                return Err(Error::pre(format!("modulation index must be a non-negative integer, got {param}")));
            }
            let band = 2f64.powf(param) + 2.0;
            if band > half_nyquist(grid) {
                return Err(Error::pre(format!(
                    "modulation 2^{param} occupies |ξ| <= {band}, above half-Nyquist {}",
                    half_nyquist(grid)
                )));
            }
            Ok(())
        }
        FamilyKind::Dilated { .. } | FamilyKind::PsiSquared => check_dilation(grid, param),
    }
}

fn dilated_profile(grid: Grid, base: BaseProfile, delta: f64) -> Result<GridFunction> {
    let jacobian = delta.powi(grid.dim() as i32);
    let profile = move |r: f64| match base {
        BaseProfile::LowPass => low_pass(r),
        BaseProfile::Annular => annular(r),
    };
    let sym = Symbol::custom_real("dilated profile", move |xi| {
        let r = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        jacobian * profile(delta * r)
    });
    // The profiles are real and even, so drop the rounding-level imaginary part.
    Ok(synthesize(grid, &sym)?.map(|v| Complex64::new(v.re, 0.0)))
}

/// The pair `(f, g)` at one family parameter.
pub fn family_generate(grid: Grid, kind: FamilyKind, param: f64) -> Result<(GridFunction, GridFunction)> {
    family_check(&grid, kind, param)?;
    match kind {
        FamilyKind::Modulated => {
            let base = dilated_profile(grid, BaseProfile::LowPass, 1.0)?;
            let mut up = vec![0.0; grid.dim()];
            up[0] = 2f64.powf(param);
            let wave = plane_wave(grid, &up)?;
            let f = wave.mul(&base);
            let g = wave.map(|v| v.conj()).mul(&base);
            Ok((f, g))
        }
        FamilyKind::Dilated { base } => {
            let f = dilated_profile(grid, base, param)?;
            Ok((f.clone(), f))
        }
        FamilyKind::PsiSquared => {
            let f = dilated_profile(grid, BaseProfile::Annular, param)?;
            Ok((f.clone(), f))
        }
    }
}
