//! The acceptance suite: twelve numbered criteria, each reduced to a list of
//! measured quantities compared against fixed thresholds.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::function::gamma::gamma;

use super::families::{BaseProfile, FamilyKind, FamilySpec};
use super::ratios::{biparameter_ratio, InequalityReport, MixedExponents, TheoremId};
use super::sweep::{sweep, SweepResult, SweepSpec};
use crate::decomposition::{
    commutator_terms, fourier_series_apply, paraproduct, symbol_remainder, CommutatorOrder,
};
use crate::kernels::{jsdelta_tail_profile, kernel_convolution_oracle, kernel_ks_delta};
use crate::norms::{mixed_norm, weighted_norm, ExponentTuple, MixedComponent, MixedSpec, Weight};
use crate::spectral::{
    apply_symbol, convolve, fractional_op, low_pass, lp_project, random_band_limited, synthesize,
    BumpKind, Fractional, Grid, GridFunction, Projection, Symbol,
};
use crate::{Error, Result};

/// Identifiers of all criteria, in order.
pub const ALL_CRITERIA: [u8; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Criteria re-run by the determinism check: every other criterion.
pub const DETERMINISM_SUBSET: [u8; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Relation {
    AtMost { value: f64 },
    AtLeast { value: f64 },
    Above { value: f64 },
    Below { value: f64 },
    Within { target: f64, tol: f64 },
}

impl Relation {
    pub fn holds(self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            Relation::AtMost { value } => x <= value,
            Relation::AtLeast { value } => x >= value,
            Relation::Above { value } => x > value,
            Relation::Below { value } => x < value,
            Relation::Within { target, tol } => (x - target).abs() <= tol,
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::AtMost { value } => write!(f, "<= {value:e}"),
            Relation::AtLeast { value } => write!(f, ">= {value:e}"),
            Relation::Above { value } => write!(f, "> {value:e}"),
            Relation::Below { value } => write!(f, "< {value:e}"),
            Relation::Within { target, tol } => write!(f, "= {target} ± {tol}"),
        }
    }
}

/// One measured quantity against its threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub relation: Relation,
    pub passed: bool,
    /// Set when the quantity could not be computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn new(label: impl Into<String>, measured: f64, relation: Relation) -> Self {
        Self { label: label.into(), measured, relation, passed: relation.holds(measured), error: None }
    }

    pub fn failed(label: impl Into<String>, relation: Relation, err: &Error) -> Self {
        Self { label: label.into(), measured: f64::NAN, relation, passed: false, error: Some(err.to_string()) }
    }

    fn from_result(label: impl Into<String>, measured: Result<f64>, relation: Relation) -> Self {
        match measured {
            Ok(m) => Check::new(label, m, relation),
            Err(e) => Check::failed(label, relation, &e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Inequality instances evaluated along the way.
    pub reports: Vec<InequalityReport>,
}

impl CriterionOutcome {
    fn new(id: u8, title: &str, checks: Vec<Check>, reports: Vec<InequalityReport>) -> Self {
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        Self { id, title: title.to_string(), passed, checks, reports }
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "exact reconstruction of paraproduct and commutator buckets",
        2 => "integral representations of the symbol remainders",
        3 => "Fourier-series representation of dilated multipliers",
        4 => "kernel closed form as the damping vanishes",
        5 => "kernel convolution against the spectral damped potential",
        6 => "tail decay rates of the damped potential",
        7 => "sharpness: negative-direction families",
        8 => "bounded ratios with weights beyond the Muckenhoupt range",
        9 => "Bernstein ratio window on a single band",
        10 => "mixed and bi-parameter sanity",
        11 => "weighted Young inequality with constant one",
        12 => "determinism of repeated runs",
        _ => "unknown criterion",
    }
}

/// Runs one criterion. Computational failures become failed checks, so
/// this only errors on an unknown id.
pub fn run_criterion(id: u8) -> Result<CriterionOutcome> {
    let (checks, reports) = match id {
        1 => (reconstruction(), Vec::new()),
        2 => (symbol_identities(), Vec::new()),
        3 => (series_representation(), Vec::new()),
        4 => (kernel_closed_form(), Vec::new()),
        5 => (kernel_oracle(), Vec::new()),
        6 => (decay_rates(), Vec::new()),
        7 => sharpness_negative(),
        8 => beyond_muckenhoupt(),
        9 => (bernstein_window(), Vec::new()),
        10 => mixed_sanity(),
        11 => (weighted_young(), Vec::new()),
        12 => (determinism(), Vec::new()),
        _ => return Err(Error::pre(format!("unknown acceptance criterion {id}"))),
    };
    Ok(CriterionOutcome::new(id, title(id), checks, reports))
}

pub fn run_all() -> Vec<CriterionOutcome> {
    ALL_CRITERIA.iter().map(|&id| run_criterion(id).expect("known id")).collect()
}

fn at_most(value: f64) -> Relation {
    Relation::AtMost { value }
}

fn within(target: f64, tol: f64) -> Relation {
    Relation::Within { target, tol }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

// 1 ---------------------------------------------------------------------

fn reconstruction() -> Vec<Check> {
    let tol = at_most(1e-10);
    let mut checks = Vec::new();
    let run = |s: f64| -> Result<(f64, f64)> {
        // N = 256 with frequency step 1/8: Nyquist 16, pairs band-limited to 4.
        let grid = Grid::new(1, 16.0 * std::f64::consts::PI, 256)?;
        let bessel = Symbol::bessel(s);
        let (mut para, mut comm) = (0.0f64, 0.0f64);
        for i in 0..20u64 {
            let seed = 1000 * (s * 10.0).round() as u64 + 2 * i;
            let f = random_band_limited(grid, 4.0, seed);
            let g = random_band_limited(grid, 4.0, seed + 1);
            let target = apply_symbol(&f.mul(&g), &bessel)?;
            para = para.max(paraproduct(&f, &g, s, 3)?.total().relative_distance(&target));
            let comm_target = target.sub(&f.mul(&apply_symbol(&g, &bessel)?));
            comm = comm.max(commutator_terms(&f, &g, s, 3)?.total().relative_distance(&comm_target));
        }
        Ok((para, comm))
    };
    for s in [0.5, 1.5, 2.0, 3.7] {
        match run(s) {
            Ok((p, c)) => {
                checks.push(Check::new(format!("paraproduct s={s}"), p, tol));
                checks.push(Check::new(format!("commutator s={s}"), c, tol));
            }
            Err(e) => checks.push(Check::failed(format!("s={s}"), tol, &e)),
        }
    }
    checks
}

// 2 ---------------------------------------------------------------------

fn symbol_identities() -> Vec<Check> {
    let tol = at_most(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = [0.0f64; 2];
    let mut failure = None;
    for _ in 0..100 {
        let dim = rng.gen_range(1..=3usize);
        let xi: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let eta: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let s = rng.gen_range(-2.0..4.0);
        for (slot, order) in [CommutatorOrder::First, CommutatorOrder::Second].into_iter().enumerate() {
            match symbol_remainder(&xi, &eta, s, order) {
                // Scaled so the pass threshold is 1.
                Ok(r) => worst[slot] = worst[slot].max(r.gap() / (1e-8 * (1.0 + r.direct.abs()))),
                Err(e) => {
                    failure.get_or_insert(e);
                }
            }
        }
    }
    if let Some(e) = failure {
        return vec![Check::failed("symbol remainder quadrature", tol, &e)];
    }
    vec![
        Check::new("first order, max gap / (1e-8 (1+|direct|))", worst[0], tol),
        Check::new("second order, max gap / (1e-8 (1+|direct|))", worst[1], tol),
    ]
}

// 3 ---------------------------------------------------------------------

fn series_gap(sigma: &Symbol, k: i32, radius: f64) -> Result<f64> {
    let grid = Grid::new(1, 64.0, 4096)?;
    let h = random_band_limited(grid, grid.nyquist(), 3);
    let series = fourier_series_apply(sigma, k, &h, radius, 64)?;
    let scale = 2f64.powi(-k);
    let direct = apply_symbol(&h, &sigma.dilate(scale).times(&Projection::Low(k).symbol()))?;
    Ok(series.relative_distance(&direct))
}

fn series_representation() -> Vec<Check> {
    let s = 1.5;
    let tol = at_most(1e-6);
    let mut checks = Vec::new();
    let sigma1 = Symbol::custom_real("bessel times low-pass at scale 8", move |xi| {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        (1.0 + r2).powf(0.5 * s) * low_pass(r2.sqrt() / 8.0)
    });
    checks.push(Check::from_result("sigma_1, k=3, R=16", series_gap(&sigma1, 3, 16.0), tol));
    for k in [2, 5] {
        let damping = 2f64.powi(-2 * k);
        let sigma = Symbol::custom_real(format!("high-low symbol k={k}"), move |xi| {
            let r2: f64 = xi.iter().map(|v| v * v).sum();
            (damping + r2).powf(0.5 * s) * low_pass(r2.sqrt() / 32.0)
        });
        checks.push(Check::from_result(format!("high-low symbol, k={k}, R=64"), series_gap(&sigma, k, 64.0), tol));
    }
    checks
}

// 4 ---------------------------------------------------------------------

fn kernel_closed_form() -> Vec<Check> {
    let tol = at_most(0.01);
    let mut checks = Vec::new();
    for s in [-0.5, -1.5] {
        let target = gamma(0.5 * (1.0 + s));
        for y in [0.5, 1.0, 2.0, 4.0] {
            let label = format!("s={s}, y={y}: relative gap to Gamma((n+s)/2) = {target:.6}");
            let gap = kernel_ks_delta(y, s, 1e-6, 1).map(|k| (k.value * y.powf(1.0 + s) - target).abs() / target.abs());
            checks.push(Check::from_result(label, gap, tol));
        }
    }
    checks
}

// 5 ---------------------------------------------------------------------

fn kernel_oracle() -> Vec<Check> {
    let (s, delta) = (-1.0, 0.5);
    let gap = (|| -> Result<f64> {
        let grid = Grid::new(1, 32.0, 2048)?;
        let psi = synthesize(grid, &Symbol::bump(BumpKind::Annular, 0))?;
        let f = psi.map(|v| Complex64::new(v.re * v.re, 0.0));
        let spectral = fractional_op(&f, Fractional::BesselDelta { s, delta })?;
        let direct = kernel_convolution_oracle(&f, s, delta)?;
        Ok(direct.relative_distance(&spectral))
    })();
    vec![Check::from_result("relative sup gap, s=-1, delta=0.5", gap, at_most(1e-3))]
}

// 6 ---------------------------------------------------------------------

fn decay_rates() -> Vec<Check> {
    let setup = || -> Result<GridFunction> {
        let grid = Grid::new(1, 4096.0, 32768)?;
        let psi = synthesize(grid, &Symbol::bump(BumpKind::Annular, 0))?;
        Ok(psi.map(|v| Complex64::new(v.re * v.re, 0.0)))
    };
    let f = match setup() {
        Ok(f) => f,
        Err(e) => return vec![Check::failed("test function", at_most(0.0), &e)],
    };
    let radii: Vec<f64> = (0..7).map(|i| 16.0 * 4f64.powf(i as f64 / 6.0)).collect();
    let slope = |s: f64, delta: f64| jsdelta_tail_profile(&f, s, delta, &radii).map(|p| p.fit.exponent);
    let near = [14.0, 16.0, 20.0, 24.0];
    let suppression = (|| -> Result<f64> {
        let damped = jsdelta_tail_profile(&f, 0.3, 1.0, &near)?;
        let undamped = jsdelta_tail_profile(&f, 0.3, 1e-3, &near)?;
        Ok(undamped.values[0] / damped.values[0])
    })();
    vec![
        Check::from_result("tail exponent s=0.3, delta=1e-3", slope(0.3, 1e-3), within(-1.3, 0.15)),
        Check::from_result("tail exponent s=2, delta=1e-3", slope(2.0, 1e-3), at_most(-5.0)),
        Check::from_result(
            "suppression at r=14, delta=1 vs 1e-3 (s=0.3)",
            suppression,
            Relation::AtLeast { value: 10.0 },
        ),
    ]
}

// 7 ---------------------------------------------------------------------

fn dyadic_deltas() -> Vec<f64> {
    (1..=6).map(|j| 2f64.powi(-j)).collect()
}

fn sweep_checks(
    label: &str,
    grid: Result<Grid>,
    spec: SweepSpec,
    checks: &mut Vec<Check>,
    reports: &mut Vec<InequalityReport>,
    judge: impl FnOnce(&SweepResult) -> Vec<Check>,
) {
    match grid.and_then(|g| sweep(g, &spec)) {
        Ok(res) => {
            if res.fit.is_none() {
                checks.push(Check::failed(label, at_most(0.0), &Error::Numerical("no usable fit".into())));
            } else {
                checks.extend(judge(&res));
            }
            reports.extend(res.reports);
        }
        Err(e) => checks.push(Check::failed(label, at_most(0.0), &e)),
    }
}

fn slope(res: &SweepResult, pick: fn(&super::sweep::SweepFit) -> f64) -> f64 {
    res.fit.as_ref().map(pick).unwrap_or(f64::NAN)
}

fn sharpness_negative() -> (Vec<Check>, Vec<InequalityReport>) {
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let l2 = ExponentTuple { p1: 2.0, p2: 2.0, p: 1.0, a1: 0.0, a2: 0.0, a: 0.0 };
    let l1 = ExponentTuple { p1: 1.0, p2: 1.0, p: 0.5, a1: 0.0, a2: 0.0, a: 0.0 };
    let weight = Weight::Japanese(0.0);

    let modulated = SweepSpec {
        theorem: TheoremId::KatoPonce,
        s: -0.5,
        exponents: l2,
        family: FamilySpec { kind: FamilyKind::Modulated, params: (3..=8).map(f64::from).collect() },
        weight,
    };
    sweep_checks(
        "modulated",
        Grid::new(1, 16.0 * std::f64::consts::PI, 16384),
        modulated,
        &mut checks,
        &mut reports,
        |res| {
            vec![
                Check::new(
                    "modulated s=-0.5: slope of rhs/lhs vs 2^k",
                    slope(res, |f| f.rhs.slope - f.lhs.slope),
                    within(-0.5, 0.1),
                ),
                Check::new("modulated s=-0.5: lhs max/min", res.spread(|r| r.lhs), at_most(1.05)),
            ]
        },
    );

    let dilated = SweepSpec {
        theorem: TheoremId::KatoPonce,
        s: 0.3,
        exponents: l1,
        family: FamilySpec { kind: FamilyKind::Dilated { base: BaseProfile::Annular }, params: dyadic_deltas() },
        weight,
    };
    sweep_checks("dilated", Grid::new(1, 64.0, 16384), dilated, &mut checks, &mut reports, |res| {
        vec![
            Check::new("dilated s=0.3, p=1/2: lhs exponent in delta", slope(res, |f| f.lhs.slope), within(-0.7, 0.15)),
            Check::new("dilated s=0.3, p=1/2: rhs max/min", res.spread(|r| r.rhs), at_most(2.0)),
        ]
    });

    for (theorem, name) in [(TheoremId::CommutatorFirst, "first"), (TheoremId::CommutatorSecond, "second")] {
        let spec = SweepSpec {
            theorem,
            s: 0.3,
            exponents: l1,
            family: FamilySpec { kind: FamilyKind::PsiSquared, params: dyadic_deltas() },
            weight,
        };
        sweep_checks(name, Grid::new(1, 64.0, 16384), spec, &mut checks, &mut reports, |res| {
            let mut out = vec![Check::new(
                format!("psi squared, {name} order: rhs max/min"),
                res.spread(|r| r.rhs),
                at_most(4.0),
            )];
            for t in 0..2 {
                out.push(Check::new(
                    format!("psi squared, {name} order: rhs term {} max/min", t + 1),
                    res.spread(|r| r.rhs_terms[t]),
                    at_most(4.0),
                ));
            }
            // Growth as delta -> 0 is a positive exponent in 1/delta.
            out.push(Check::new(
                format!("psi squared, {name} order: lhs exponent in 1/delta"),
                -slope(res, |f| f.lhs.slope),
                Relation::Above { value: 0.0 },
            ));
            out
        });
    }
    (checks, reports)
}

// 8 ---------------------------------------------------------------------

fn beyond_muckenhoupt() -> (Vec<Check>, Vec<InequalityReport>) {
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let configs = [
        ("p1=p2=2, a1=a2=4", ExponentTuple { p1: 2.0, p2: 2.0, p: 1.0, a1: 4.0, a2: 4.0, a: 4.0 }),
        ("p1=p2=1, a1=a2=2", ExponentTuple { p1: 1.0, p2: 1.0, p: 0.5, a1: 2.0, a2: 2.0, a: 2.0 }),
    ];
    for (name, e) in configs {
        let spec = SweepSpec {
            theorem: TheoremId::KatoPonce,
            s: 1.5,
            exponents: e,
            family: FamilySpec { kind: FamilyKind::Modulated, params: (3..=8).map(f64::from).collect() },
            weight: Weight::Japanese(0.0),
        };
        let run = |points: usize| Grid::new(1, 2.0 * std::f64::consts::PI, points).and_then(|g| sweep(g, &spec));
        match (run(2048), run(4096)) {
            (Ok(coarse), Ok(fine)) => {
                checks.push(Check::new(
                    format!("{name}: ratio slope vs 2^k"),
                    slope(&coarse, |f| f.ratio.slope),
                    at_most(0.05),
                ));
                checks.push(Check::new(format!("{name}: max ratio"), coarse.max_ratio(), at_most(1e3)));
                let drift = max_of(
                    coarse.reports.iter().zip(&fine.reports).map(|(c, f)| (f.ratio / c.ratio - 1.0).abs()),
                );
                checks.push(Check::new(format!("{name}: ratio drift N=2048 -> 4096"), drift, at_most(0.2)));
                reports.extend(coarse.reports);
                reports.extend(fine.reports);
            }
            (Err(e), _) | (_, Err(e)) => checks.push(Check::failed(name, at_most(0.0), &e)),
        }
    }
    (checks, reports)
}

// 9 ---------------------------------------------------------------------

fn bernstein_window() -> Vec<Check> {
    let s = 1.5;
    let window = (2f64.powf(-s - 1.0), 2f64.powf(s + 1.0));
    let run = || -> Result<Vec<Check>> {
        let grid = Grid::new(1, 64.0, 8192)?;
        let bessel = Symbol::bessel(s);
        let mut out = Vec::new();
        for k in 2..=7 {
            let f = lp_project(&random_band_limited(grid, grid.nyquist(), 90 + k as u64), Projection::Band(k))?;
            let band = lp_project(&f, Projection::Band(k))?;
            let lifted = lp_project(&apply_symbol(&f, &bessel)?, Projection::Band(k))?;
            let ratio = weighted_norm(&lifted, 2.0, 0.0)? / (2f64.powf(k as f64 * s) * weighted_norm(&band, 2.0, 0.0)?);
            out.push(Check::new(format!("k={k}: lower end"), ratio, Relation::AtLeast { value: window.0 }));
            out.push(Check::new(format!("k={k}: upper end"), ratio, at_most(window.1)));
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![Check::failed("Bernstein ratios", at_most(window.1), &e)])
}

// 10 --------------------------------------------------------------------

fn component(p: f64, a: f64) -> MixedComponent {
    MixedComponent { p, a, dim: 1 }
}

fn mixed_sanity() -> (Vec<Check>, Vec<InequalityReport>) {
    let tol = at_most(1e-10);
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let side = 32.0;
    let plane = Grid::new(2, side, 128);
    let line = Grid::new(1, side, 128);
    let (plane, line) = match (plane, line) {
        (Ok(p), Ok(l)) => (p, l),
        (Err(e), _) | (_, Err(e)) => return (vec![Check::failed("grids", tol, &e)], reports),
    };

    let separable = (|| -> Result<Vec<Check>> {
        let u = random_band_limited(line, 3.0, 101);
        let v = random_band_limited(line, 3.0, 102);
        let uu = random_band_limited(line, 3.0, 103);
        let vv = random_band_limited(line, 3.0, 104);
        let tensor = |a: &GridFunction, b: &GridFunction| {
            let n = line.points();
            let mut vals = Vec::with_capacity(n * n);
            for i in 0..n {
                for o in 0..n {
                    vals.push(a.values()[i] * b.values()[o]);
                }
            }
            GridFunction::from_values(plane, vals)
        };
        let spec = MixedSpec::new(component(1.5, 2.0), component(3.0, 1.0));
        let f = tensor(&u, &uu)?;
        let norm_gap = {
            let whole = mixed_norm(&f, &spec)?;
            let parts = weighted_norm(&u, 1.5, 2.0)? * weighted_norm(&uu, 3.0, 1.0)?;
            (whole - parts).abs() / parts
        };
        let g = tensor(&v, &vv)?;
        let (s_in, s_out) = (1.5, 0.7);
        let m = MixedExponents {
            target: MixedSpec::new(component(1.0, 2.0), component(1.0, 2.0)),
            first: MixedSpec::new(component(2.0, 2.0), component(2.0, 2.0)),
            second: MixedSpec::new(component(2.0, 2.0), component(2.0, 2.0)),
        };
        let report = biparameter_ratio(&f, &g, s_in, s_out, &m)?;
        let inner = weighted_norm(&apply_symbol(&u.mul(&v), &Symbol::bessel(s_in))?, 1.0, 2.0)?;
        let outer = weighted_norm(&apply_symbol(&uu.mul(&vv), &Symbol::bessel(s_out))?, 1.0, 2.0)?;
        let lhs_gap = (report.lhs - inner * outer).abs() / (inner * outer);
        Ok(vec![
            Check::new("separable mixed norm factorization", norm_gap, tol),
            Check::new("separable bi-parameter lhs factorization", lhs_gap, tol),
        ])
    })();
    match separable {
        Ok(c) => checks.extend(c),
        Err(e) => checks.push(Check::failed("separable identities", tol, &e)),
    }

    for a in [0.0, 2.0] {
        let m = MixedExponents {
            target: MixedSpec::new(component(1.0, a), component(1.0, a)),
            first: MixedSpec::new(component(2.0, a), component(2.0, a)),
            second: MixedSpec::new(component(2.0, a), component(2.0, a)),
        };
        let f = random_band_limited(plane, 3.0, 201);
        let g = random_band_limited(plane, 3.0, 202);
        match biparameter_ratio(&f, &g, 1.5, 1.5, &m) {
            Ok(r) => {
                checks.push(Check::new(format!("bi-parameter ratio, weights a={a}"), r.ratio, at_most(1e3)));
                reports.push(r);
            }
            Err(e) => checks.push(Check::failed(format!("bi-parameter ratio, weights a={a}"), at_most(1e3), &e)),
        }
    }
    (checks, reports)
}

// 11 --------------------------------------------------------------------

/// Smooth compactly supported bump of half-width `w` centred at `c`.
fn bump_at(grid: Grid, c: f64, w: f64) -> GridFunction {
    GridFunction::from_fn(grid, |x| {
        let t = (x[0] - c) / w;
        let v = if t.abs() < 1.0 { (-1.0 / (1.0 - t * t)).exp() } else { 0.0 };
        Complex64::new(v, 0.0)
    })
}

fn weighted_young() -> Vec<Check> {
    let tol = at_most(1.0 + 1e-6);
    let grid = match Grid::new(1, 32.0, 16384) {
        Ok(g) => g,
        Err(e) => return vec![Check::failed("grid", tol, &e)],
    };
    // All supports lie in the central quarter [-4, 4].
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let pairs = [
        ("centred, width 1", bump_at(grid, 0.0, 1.0), bump_at(grid, 0.0, 1.0)),
        ("centred, widths 3 and 0.5", bump_at(grid, 0.0, 3.0), bump_at(grid, 0.0, 0.5)),
        ("both at 1/sqrt 2, width 0.05", bump_at(grid, c, 0.05), bump_at(grid, c, 0.05)),
        ("at 2 and -1, width 0.5", bump_at(grid, 2.0, 0.5), bump_at(grid, -1.0, 0.5)),
        ("at 1/4 width 0.02, at 1 width 0.2", bump_at(grid, 0.25, 0.02), bump_at(grid, 1.0, 0.2)),
    ];
    let mut checks = Vec::new();
    for (p, q, r) in [(1.0, 1.0, 1.0), (1.0, 2.0, 2.0), (2.0, 2.0, f64::INFINITY)] {
        for a in [0.0, 1.0, 3.0] {
            let worst = pairs
                .iter()
                .map(|(_, f, g)| -> Result<f64> {
                    let lhs = weighted_norm(&convolve(f, g), r, a)?;
                    Ok(lhs / (weighted_norm(f, p, a)? * weighted_norm(g, q, a)?))
                })
                .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)));
            checks.push(Check::from_result(format!("(p,q,r)=({p},{q},{r}), a={a}: constant"), worst, tol));
        }
    }
    checks
}

// 12 --------------------------------------------------------------------

static SCRATCH: AtomicUsize = AtomicUsize::new(0);

fn scratch_dir() -> PathBuf {
    let id = SCRATCH.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("fracleib-determinism-{}-{id}", std::process::id()))
}

fn determinism() -> Vec<Check> {
    let relation = at_most(0.0);
    let run = || -> Result<Vec<(String, Vec<u8>)>> {
        let config = crate::cli::RunConfig::suite(DETERMINISM_SUBSET.to_vec());
        let dir = scratch_dir();
        crate::cli::execute_to_dir(&config, &dir)?;
        let mut files = Vec::new();
        for name in crate::cli::CSV_OUTPUTS {
            let path = dir.join(name);
            if path.exists() {
                files.push((name.to_string(), std::fs::read(&path)?));
            }
        }
        std::fs::remove_dir_all(&dir)?;
        Ok(files)
    };
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            if a.is_empty() {
                return vec![Check::failed("csv outputs", relation, &Error::Numerical("no CSV written".into()))];
            }
            let names: Vec<&String> = a.iter().map(|(n, _)| n).collect();
            let mismatched = if names == b.iter().map(|(n, _)| n).collect::<Vec<_>>() {
                a.iter().zip(&b).filter(|(x, y)| x.1 != y.1).count()
            } else {
                a.len().max(b.len())
            };
            vec![Check::new("CSV files differing between two runs", mismatched as f64, relation)]
        }
        (Err(e), _) | (_, Err(e)) => vec![Check::failed("repeated run", relation, &e)],
    }
}
