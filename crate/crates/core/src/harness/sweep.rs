use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::families::{family_generate, FamilyKind, FamilySpec};
use super::ratios::{commutator_ratio, kp_ratio_with, InequalityReport, TheoremId};
use crate::decomposition::CommutatorOrder;
use crate::kernels::{least_squares_line, LineFit};
use crate::norms::{ExponentTuple, Weight};
use crate::spectral::Grid;
use crate::{Error, Result};

/// One sweep: a theorem, its exponents and a family of pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub theorem: TheoremId,
    pub s: f64,
    pub exponents: ExponentTuple,
    pub family: FamilySpec,
    /// Weight family; the powers come from `exponents`.
    #[serde(default = "default_weight")]
    pub weight: Weight,
}

fn default_weight() -> Weight {
    Weight::Japanese(0.0)
}

/// Log-log slopes against the family abscissa (`2^k` or `δ`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepFit {
    pub ratio: LineFit,
    pub lhs: LineFit,
    pub rhs: LineFit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub reports: Vec<InequalityReport>,
    pub abscissa: Vec<f64>,
    /// Indices of the reports entering the fit.
    pub fit_window: Vec<usize>,
    pub fit: Option<SweepFit>,
}

impl SweepResult {
    /// `max/min` of a positive quantity across the sweep.
    pub fn spread(&self, pick: impl Fn(&InequalityReport) -> f64) -> f64 {
        let vals: Vec<f64> = self.reports.iter().map(pick).collect();
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        hi / lo
    }

    pub fn max_ratio(&self) -> f64 {
        self.reports.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }
}

fn abscissa(kind: FamilyKind, param: f64) -> f64 {
    match kind {
        FamilyKind::Modulated => 2f64.powf(param),
        _ => param,
    }
}

fn evaluate(grid: Grid, spec: &SweepSpec, param: f64) -> Result<InequalityReport> {
    let (f, g) = family_generate(grid, spec.family.kind, param)?;
    let e = &spec.exponents;
    let report = match spec.theorem {
        TheoremId::KatoPonce => kp_ratio_with(&f, &g, spec.s, e, spec.weight)?,
        TheoremId::CommutatorFirst | TheoremId::CommutatorSecond => {
            if !matches!(spec.weight, Weight::Japanese(_)) {
                return Err(Error::pre("commutator sweeps use the inhomogeneous weight"));
            }
            let order = if spec.theorem == TheoremId::CommutatorFirst {
                CommutatorOrder::First
            } else {
                CommutatorOrder::Second
            };
            commutator_ratio(&f, &g, spec.s, e, order)?
        }
        TheoremId::Mixed | TheoremId::Biparameter => {
            return Err(Error::pre("sweeps cover the single-norm inequalities only"))
        }
    };
    let mut report = report;
    report.family_param = param;
    // Dilation families are reported in the scale-free normalisation: every
    // norm of the δ-dilated pair carries the common factor δ^{n/p - s}, or
    // δ^{(n+a)/p - s} with homogeneous weights.
    Ok(match spec.family.kind {
        FamilyKind::Modulated => report,
        _ => {
            let homogeneous = match spec.weight {
                Weight::Homogeneous(_) => e.a,
                Weight::Japanese(_) => 0.0,
            };
            let n = grid.dim() as f64;
            let inv_p = if e.p.is_infinite() { 0.0 } else { 1.0 / e.p };
            report.rescaled(param.powf(spec.s - (n + homogeneous) * inv_p))
        }
    })
}

/// Evaluates every family parameter (in parallel) and fits log ratio,
/// log lhs and log rhs against the log abscissa. With four or more
/// parameters the smallest and largest abscissae are left out of the fit.
pub fn sweep(grid: Grid, spec: &SweepSpec) -> Result<SweepResult> {
    spec.exponents.validate()?;
    if spec.family.params.is_empty() {
        return Err(Error::pre("a sweep needs at least one family parameter"));
    }
    let reports: Vec<InequalityReport> = spec
        .family
        .params
        .par_iter()
        .map(|&p| evaluate(grid, spec, p))
        .collect::<Result<_>>()?;
    let abscissa: Vec<f64> = spec.family.params.iter().map(|&p| abscissa(spec.family.kind, p)).collect();

    let mut order: Vec<usize> = (0..abscissa.len()).collect();
    order.sort_by(|&a, &b| abscissa[a].total_cmp(&abscissa[b]));
    let fit_window: Vec<usize> =
        if order.len() >= 4 { order[1..order.len() - 1].to_vec() } else { order.clone() };
    let usable = fit_window.len() >= 2
        && fit_window.iter().all(|&i| reports[i].lhs > 0.0 && reports[i].rhs > 0.0);
    let fit = if usable {
        let x: Vec<f64> = fit_window.iter().map(|&i| abscissa[i].ln()).collect();
        let line = |pick: &dyn Fn(&InequalityReport) -> f64| {
            let y: Vec<f64> = fit_window.iter().map(|&i| pick(&reports[i]).ln()).collect();
            least_squares_line(&x, &y)
        };
        Some(SweepFit {
            ratio: line(&|r| r.ratio)?,
            lhs: line(&|r| r.lhs)?,
            rhs: line(&|r| r.rhs)?,
        })
    } else {
        None
    };
    Ok(SweepResult { reports, abscissa, fit_window, fit })
}
