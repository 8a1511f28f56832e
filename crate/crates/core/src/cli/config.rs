use serde::{Deserialize, Serialize};

use crate::harness::{family_check, suite, Exponents, FamilyKind, SweepSpec, TheoremId};
use crate::norms::Weight;
use crate::spectral::Grid;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub dim: usize,
    pub side: f64,
    pub points_per_axis: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<Grid> {
        if self.points_per_axis < 8 || self.points_per_axis % 2 != 0 {
            return Err(Error::pre(format!(
                "points_per_axis must be even and at least 8, got {}",
                self.points_per_axis
            )));
        }
        Grid::new(self.dim, self.side, self.points_per_axis)
    }
}

/// Where the pair of a `verify` run comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "source", deny_unknown_fields)]
pub enum PairConfig {
    /// One member of a test family.
    Family { family: FamilyKind, param: f64 },
    /// Two seeded random band-limited functions (seeds `seed`, `seed + 1`).
    Random {
        band: f64,
        #[serde(default)]
        seed: u64,
    },
}

fn default_max_ratio() -> f64 {
    1e3
}

fn default_weight() -> Weight {
    Weight::Japanese(0.0)
}

/// A single inequality instance; passes when the ratio is at most
/// `max_ratio`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub grid: GridConfig,
    pub theorem: TheoremId,
    pub s: f64,
    /// Order on the outer block (bi-parameter only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_outer: Option<f64>,
    pub exponents: Exponents,
    pub pair: PairConfig,
    #[serde(default = "default_max_ratio")]
    pub max_ratio: f64,
    /// Weight family for Kato-Ponce instances; its exponent is ignored.
    #[serde(default = "default_weight")]
    pub weight: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Ratio,
    Lhs,
    Rhs,
}

/// Acceptance rule evaluated on a sweep. Slopes are log-log slopes against
/// the family abscissa over the fit window; spreads are max/min over all
/// parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule", deny_unknown_fields)]
pub enum Rule {
    SlopeWithin { quantity: Quantity, target: f64, tol: f64 },
    SlopeAtMost { quantity: Quantity, max: f64 },
    SlopeAtLeast { quantity: Quantity, min: f64 },
    /// Strict upper bound, e.g. `max: 0` for growth as the abscissa shrinks.
    SlopeBelow { quantity: Quantity, max: f64 },
    SpreadAtMost { quantity: Quantity, max: f64 },
    MaxRatioAtMost { max: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub grid: GridConfig,
    pub sweep: SweepSpec,
    #[serde(default)]
    pub rules: Vec<Rule>,
}

/// A sweep judged by the rules implied by the expected regime of
/// `(s, p, n)`; `tolerance` overrides the slope tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleConfig {
    pub grid: GridConfig,
    pub sweep: SweepSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Kernel values and envelope checks at increasing radii `>= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub s: f64,
    pub delta: f64,
    pub dim: usize,
    pub radii: Vec<f64>,
}

fn all_criteria() -> Vec<u8> {
    suite::ALL_CRITERIA.to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "all_criteria")]
    pub criteria: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "command")]
pub enum RunConfig {
    Verify(VerifyConfig),
    Sweep(SweepConfig),
    Counterexample(CounterexampleConfig),
    Kernel(KernelConfig),
    Suite(SuiteConfig),
}

impl RunConfig {
    pub fn suite(criteria: Vec<u8>) -> Self {
        RunConfig::Suite(SuiteConfig { criteria })
    }

    pub fn command(&self) -> &'static str {
        match self {
            RunConfig::Verify(_) => "verify",
            RunConfig::Sweep(_) => "sweep",
            RunConfig::Counterexample(_) => "counterexample",
            RunConfig::Kernel(_) => "kernel",
            RunConfig::Suite(_) => "suite",
        }
    }

    /// Parses JSON; errors carry the line, column and offending field.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Checks every precondition that can be checked before computing.
    pub fn validate(&self) -> Result<()> {
        match self {
            RunConfig::Verify(v) => {
                let grid = v.grid.build()?;
                finite("s", v.s)?;
                match (&v.exponents, v.theorem) {
                    (Exponents::Single(e), TheoremId::KatoPonce | TheoremId::CommutatorFirst | TheoremId::CommutatorSecond) => {
                        e.validate()?
                    }
                    (Exponents::Mixed(m), TheoremId::Mixed | TheoremId::Biparameter) => {
                        m.validate()?;
                        if m.target.inner.dim + m.target.outer.dim != grid.dim() {
                            return Err(Error::pre("exponents: block dimensions do not add up to grid.dim"));
                        }
                    }
                    _ => return Err(Error::pre("exponents: shape does not match theorem")),
                }
                if v.theorem == TheoremId::Biparameter {
                    finite("s_outer", v.s_outer.ok_or_else(|| Error::pre("s_outer is required for biparameter"))?)?;
                }
                match &v.pair {
                    PairConfig::Family { family, param } => family_check(&grid, *family, *param)?,
                    PairConfig::Random { band, .. } => {
                        if !(*band > 0.0 && *band <= grid.nyquist()) {
                            return Err(Error::pre(format!("pair.band must lie in (0, Nyquist], got {band}")));
                        }
                    }
                }
                if !(v.max_ratio > 0.0) {
                    return Err(Error::pre("max_ratio must be positive"));
                }
                Ok(())
            }
            RunConfig::Sweep(c) => validate_sweep(&c.grid, &c.sweep),
            RunConfig::Counterexample(c) => {
                validate_sweep(&c.grid, &c.sweep)?;
                if let Some(t) = c.tolerance {
                    if !(t > 0.0) {
                        return Err(Error::pre("tolerance must be positive"));
                    }
                }
                Ok(())
            }
            RunConfig::Kernel(k) => {
                if !(1..=3).contains(&k.dim) {
                    return Err(Error::pre(format!("dim must be 1, 2 or 3, got {}", k.dim)));
                }
                if !(k.s >= -(k.dim as f64) && k.s < 0.0) {
                    return Err(Error::pre(format!("s must lie in [-dim, 0), got {}", k.s)));
                }
                if !(k.delta > 0.0 && k.delta <= 1.0) {
                    return Err(Error::pre(format!("delta must lie in (0, 1], got {}", k.delta)));
                }
                if k.radii.is_empty() || k.radii.iter().any(|&r| !(r >= 1.0 && r.is_finite())) {
                    return Err(Error::pre("radii must be non-empty and at least 1"));
                }
                if k.radii.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::pre("radii must be strictly increasing"));
                }
                Ok(())
            }
            RunConfig::Suite(s) => {
                if s.criteria.is_empty() {
                    return Err(Error::pre("criteria must not be empty"));
                }
                if let Some(bad) = s.criteria.iter().find(|c| !suite::ALL_CRITERIA.contains(c)) {
                    return Err(Error::pre(format!("criteria: unknown criterion {bad}")));
                }
                Ok(())
            }
        }
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::pre(format!("{name} must be finite")))
    }
}

fn validate_sweep(grid: &GridConfig, spec: &SweepSpec) -> Result<()> {
    let grid = grid.build()?;
    finite("sweep.s", spec.s)?;
    spec.exponents.validate()?;
    if spec.family.params.is_empty() {
        return Err(Error::pre("sweep.family.params must not be empty"));
    }
    for &p in &spec.family.params {
        family_check(&grid, spec.family.kind, p).map_err(|e| Error::pre(format!("sweep.family.params: {e}")))?;
    }
    if matches!(spec.theorem, TheoremId::Mixed | TheoremId::Biparameter) {
        return Err(Error::pre("sweep.theorem must be a single-norm inequality"));
    }
    Ok(())
}
