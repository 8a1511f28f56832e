//! JSON-configured runs. A config names one command (`verify`, `sweep`,
//! `counterexample`, `kernel` or `suite`); a run writes `report.json`,
//! `results.csv`, `checks.csv` and, for sweeps and kernel scans with at least
//! two rows, `plot.dat`.
//!
//! Exit codes: 0 when every rule passes, 1 when a rule fails, then
//! [`Error::exit_code`] for errors (2 parse, 3 precondition, 4 numerical,
//! 5 i/o).

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{
    CounterexampleConfig, GridConfig, KernelConfig, PairConfig, Quantity, RunConfig, Rule, SuiteConfig,
    SweepConfig, VerifyConfig,
};

use crate::harness::suite::{self, Check, CriterionOutcome, Relation};
use crate::harness::{
    biparameter_ratio, commutator_ratio, family_generate, kp_ratio_with, mixed_ratio, sharpness_classify,
    sweep, Exponents, FamilyKind, InequalityReport, Regime, SweepFit, SweepResult, SweepSpec, TheoremId,
};
use crate::decomposition::CommutatorOrder;
use crate::kernels::{kernel_bound_check, least_squares_line, tail_exponent_fit, BoundCheck, LineFit, TailFit};
use crate::spectral::random_band_limited;
use crate::{Error, Result};

/// Names of the CSV files a run may write.
pub const CSV_OUTPUTS: [&str; 2] = ["results.csv", "checks.csv"];

/// One tabular row: `lhs`, `rhs` and `ratio` at a family parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Row {
    pub family_param: f64,
    /// Plot abscissa (`2^k`, `δ` or a radius).
    pub abscissa: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelRow {
    pub radius: f64,
    #[serde(flatten)]
    pub check: BoundCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub config: RunConfig,
    pub passed: bool,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<InequalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<SweepFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<Regime>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kernel: Vec<KernelRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_tail: Option<TailFit>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionOutcome>,
    pub wall_clock_seconds: f64,
}

impl RunReport {
    fn new(config: &RunConfig) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            passed: false,
            rows: Vec::new(),
            checks: Vec::new(),
            reports: Vec::new(),
            fit: None,
            regime: None,
            kernel: Vec::new(),
            kernel_tail: None,
            criteria: Vec::new(),
            wall_clock_seconds: 0.0,
        }
    }

    /// 0 when every rule passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn row_of(r: &InequalityReport, abscissa: f64) -> Row {
    Row { family_param: r.family_param, abscissa, lhs: r.lhs, rhs: r.rhs, ratio: r.ratio }
}

fn pair_for(v: &VerifyConfig) -> Result<(crate::spectral::GridFunction, crate::spectral::GridFunction, f64)> {
    let grid = v.grid.build()?;
    match &v.pair {
        PairConfig::Family { family, param } => {
            let (f, g) = family_generate(grid, *family, *param)?;
            Ok((f, g, *param))
        }
        PairConfig::Random { band, seed } => Ok((
            random_band_limited(grid, *band, *seed),
            random_band_limited(grid, *band, seed.wrapping_add(1)),
            *seed as f64,
        )),
    }
}

fn run_verify(v: &VerifyConfig, out: &mut RunReport) -> Result<()> {
    let (f, g, param) = pair_for(v)?;
    let mut report = match (v.theorem, &v.exponents) {
        (TheoremId::KatoPonce, Exponents::Single(e)) => kp_ratio_with(&f, &g, v.s, e, v.weight)?,
        (TheoremId::CommutatorFirst, Exponents::Single(e)) => commutator_ratio(&f, &g, v.s, e, CommutatorOrder::First)?,
        (TheoremId::CommutatorSecond, Exponents::Single(e)) => {
            commutator_ratio(&f, &g, v.s, e, CommutatorOrder::Second)?
        }
        (TheoremId::Mixed, Exponents::Mixed(m)) => mixed_ratio(&f, &g, v.s, m)?,
        (TheoremId::Biparameter, Exponents::Mixed(m)) => {
            biparameter_ratio(&f, &g, v.s, v.s_outer.unwrap_or(v.s), m)?
        }
        _ => return Err(Error::pre("exponents: shape does not match theorem")),
    };
    report.family_param = param;
    out.rows.push(row_of(&report, param));
    out.checks.push(Check::new("ratio", report.ratio, Relation::AtMost { value: v.max_ratio }));
    out.reports.push(report);
    Ok(())
}

fn pick_slope(fit: &SweepFit, q: Quantity) -> f64 {
    match q {
        Quantity::Ratio => fit.ratio.slope,
        Quantity::Lhs => fit.lhs.slope,
        Quantity::Rhs => fit.rhs.slope,
    }
}

fn pick_value(r: &InequalityReport, q: Quantity) -> f64 {
    match q {
        Quantity::Ratio => r.ratio,
        Quantity::Lhs => r.lhs,
        Quantity::Rhs => r.rhs,
    }
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Ratio => "ratio",
        Quantity::Lhs => "lhs",
        Quantity::Rhs => "rhs",
    }
}

fn judge(res: &SweepResult, rule: Rule) -> Check {
    let slope = |q: Quantity| res.fit.as_ref().map(|f| pick_slope(f, q)).unwrap_or(f64::NAN);
    match rule {
        Rule::SlopeWithin { quantity, target, tol } => Check::new(
            format!("{} slope", quantity_name(quantity)),
            slope(quantity),
            Relation::Within { target, tol },
        ),
        Rule::SlopeAtMost { quantity, max } => Check::new(
            format!("{} slope", quantity_name(quantity)),
            slope(quantity),
            Relation::AtMost { value: max },
        ),
        Rule::SlopeAtLeast { quantity, min } => Check::new(
            format!("{} slope", quantity_name(quantity)),
            slope(quantity),
            Relation::AtLeast { value: min },
        ),
        Rule::SlopeBelow { quantity, max } => Check::new(
            format!("{} slope", quantity_name(quantity)),
            slope(quantity),
            Relation::Below { value: max },
        ),
        Rule::SpreadAtMost { quantity, max } => Check::new(
            format!("{} max/min", quantity_name(quantity)),
            res.spread(|r| pick_value(r, quantity)),
            Relation::AtMost { value: max },
        ),
        Rule::MaxRatioAtMost { max } => Check::new("max ratio", res.max_ratio(), Relation::AtMost { value: max }),
    }
}

fn record_sweep(res: SweepResult, rules: &[Rule], out: &mut RunReport) {
    out.checks.extend(rules.iter().map(|&r| judge(&res, r)));
    out.rows = res.reports.iter().zip(&res.abscissa).map(|(r, &x)| row_of(r, x)).collect();
    out.fit = res.fit;
    out.reports = res.reports;
}

/// Rules implied by the expected regime; `tol` overrides the slope
/// tolerance.
pub fn counterexample_rules(spec: &SweepSpec, dim: usize, regime: Regime, tol: Option<f64>) -> Result<Vec<Rule>> {
    let n = dim as f64;
    let inv_p = if spec.exponents.p.is_infinite() { 0.0 } else { 1.0 / spec.exponents.p };
    if regime != Regime::DivergentExpected {
        return Ok(vec![
            Rule::SlopeAtMost { quantity: Quantity::Ratio, max: tol.unwrap_or(0.05) },
            Rule::MaxRatioAtMost { max: 1e3 },
        ]);
    }
    match spec.family.kind {
        FamilyKind::Modulated => {
            if spec.s >= 0.0 {
                return Err(Error::pre("sweep.s: the modulated family witnesses divergence only for s < 0"));
            }
            // rhs/lhs decays like 2^{ks} while lhs stays put.
            Ok(vec![
                Rule::SlopeWithin { quantity: Quantity::Ratio, target: -spec.s, tol: tol.unwrap_or(0.1) },
                Rule::SpreadAtMost { quantity: Quantity::Lhs, max: 1.05 },
            ])
        }
        FamilyKind::Dilated { .. } => Ok(vec![
            Rule::SlopeWithin { quantity: Quantity::Lhs, target: n + spec.s - n * inv_p, tol: tol.unwrap_or(0.15) },
            Rule::SpreadAtMost { quantity: Quantity::Rhs, max: 2.0 },
        ]),
        FamilyKind::PsiSquared => Ok(vec![
            Rule::SpreadAtMost { quantity: Quantity::Rhs, max: 4.0 },
            Rule::SlopeBelow { quantity: Quantity::Lhs, max: 0.0 },
        ]),
    }
}

fn run_kernel(k: &KernelConfig, out: &mut RunReport) -> Result<()> {
    for &r in &k.radii {
        let check = kernel_bound_check(r, k.s, k.delta, k.dim)?;
        out.rows.push(Row {
            family_param: r,
            abscissa: r,
            lhs: check.value,
            rhs: check.envelope,
            ratio: check.value / check.envelope,
        });
        out.checks.push(Check::new(
            format!("kernel / envelope at r={r}"),
            check.value / check.envelope,
            Relation::AtMost { value: crate::kernels::ENVELOPE_SLACK },
        ));
        out.kernel.push(KernelRow { radius: r, check });
    }
    if k.radii.len() >= 4 {
        let values: Vec<f64> = out.kernel.iter().map(|row| row.check.value).collect();
        out.kernel_tail = Some(tail_exponent_fit(&k.radii, &values)?);
    }
    Ok(())
}

fn run_suite(s: &SuiteConfig, out: &mut RunReport) -> Result<()> {
    for &id in &s.criteria {
        let outcome = suite::run_criterion(id)?;
        for r in &outcome.reports {
            out.rows.push(row_of(r, r.family_param));
        }
        for c in &outcome.checks {
            let mut c = c.clone();
            c.label = format!("{id}: {}", c.label);
            out.checks.push(c);
        }
        out.criteria.push(outcome);
    }
    Ok(())
}

/// Validates and executes a config. Rule failures are reported in the
/// result; errors abort.
pub fn execute(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let start = Instant::now();
    let mut out = RunReport::new(config);
    match config {
        RunConfig::Verify(v) => run_verify(v, &mut out)?,
        RunConfig::Sweep(c) => {
            let res = sweep(c.grid.build()?, &c.sweep)?;
            record_sweep(res, &c.rules, &mut out);
        }
        RunConfig::Counterexample(c) => {
            let grid = c.grid.build()?;
            let regime = sharpness_classify(c.sweep.s, c.sweep.exponents.p, grid.dim())?;
            let rules = counterexample_rules(&c.sweep, grid.dim(), regime, c.tolerance)?;
            out.regime = Some(regime);
            record_sweep(sweep(grid, &c.sweep)?, &rules, &mut out);
        }
        RunConfig::Kernel(k) => run_kernel(k, &mut out)?,
        RunConfig::Suite(s) => run_suite(s, &mut out)?,
    }
    for row in &out.rows {
        if !(row.lhs.is_finite() && row.rhs.is_finite()) {
            return Err(Error::NonFinite(format!("row at parameter {} is not finite", row.family_param)));
        }
    }
    // A sweep without rules only records data and passes vacuously.
    out.passed = out.checks.iter().all(|c| c.passed);
    out.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(out)
}

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

/// `family_param,lhs,rhs,ratio` with 17 significant digits.
pub fn results_csv(report: &RunReport) -> String {
    let mut s = String::from("family_param,lhs,rhs,ratio\n");
    for r in &report.rows {
        let _ = writeln!(s, "{},{},{},{}", number(r.family_param), number(r.lhs), number(r.rhs), number(r.ratio));
    }
    s
}

fn quoted(label: &str) -> String {
    format!("\"{}\"", label.replace('"', "\"\""))
}

/// `label,measured,relation,passed`.
pub fn checks_csv(report: &RunReport) -> String {
    let mut s = String::from("label,measured,relation,passed\n");
    for c in &report.checks {
        let _ = writeln!(s, "{},{},{},{}", quoted(&c.label), number(c.measured), quoted(&c.relation.to_string()), c.passed);
    }
    s
}

/// Least-squares line through `(ln abscissa, ln ratio)` over all rows.
pub fn plot_fit(report: &RunReport) -> Result<LineFit> {
    if report.rows.len() < 2 {
        return Err(Error::pre(format!("plot data needs at least 2 rows, got {}", report.rows.len())));
    }
    let x: Vec<f64> = report.rows.iter().map(|r| r.abscissa.ln()).collect();
    let y: Vec<f64> = report.rows.iter().map(|r| r.ratio.ln()).collect();
    least_squares_line(&x, &y)
}

/// Two columns `ln(abscissa) ln(ratio)` under two `#` header lines, the
/// second holding the fitted line.
pub fn plot_data(report: &RunReport) -> Result<String> {
    let fit = plot_fit(report)?;
    let mut s = String::from("# columns: ln(abscissa) ln(ratio)\n");
    let _ = writeln!(s, "# fit: slope={} intercept={} residual={}", number(fit.slope), number(fit.intercept), number(fit.residual));
    for r in &report.rows {
        let _ = writeln!(s, "{} {}", number(r.abscissa.ln()), number(r.ratio.ln()));
    }
    Ok(s)
}

pub fn emit_plot_data(report: &RunReport, path: &Path) -> Result<()> {
    std::fs::write(path, plot_data(report)?)?;
    Ok(())
}

/// Writes every output file of a finished run into `dir`.
pub fn write_outputs(report: &RunReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::Numerical(e.to_string()))?;
    std::fs::write(dir.join("report.json"), json + "\n")?;
    std::fs::write(dir.join("results.csv"), results_csv(report))?;
    std::fs::write(dir.join("checks.csv"), checks_csv(report))?;
    let plots = matches!(report.config, RunConfig::Sweep(_) | RunConfig::Counterexample(_) | RunConfig::Kernel(_));
    if plots && report.rows.len() >= 2 {
        emit_plot_data(report, &dir.join("plot.dat"))?;
    }
    Ok(())
}

pub fn execute_to_dir(config: &RunConfig, dir: &Path) -> Result<RunReport> {
    let report = execute(config)?;
    write_outputs(&report, dir)?;
    Ok(report)
}

/// Reads, parses and runs a config file.
pub fn run(config_path: &Path, out_dir: &Path) -> Result<RunReport> {
    let text = std::fs::read_to_string(config_path)?;
    let config = RunConfig::parse(&text)?;
    execute_to_dir(&config, out_dir)
}

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "FRACLEIB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "fracleib", version, about = "Numerical checks of weighted fractional Leibniz inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a JSON config and write its reports.
    Run {
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads for sweeps.
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let Command::Run { config, out, threads } = cli.command;
    let outcome = thread_count(threads).and_then(|t| {
        if let Some(t) = t {
            if t == 0 {
                return Err(Error::pre("--threads must be positive"));
            }
            // Fails only if a pool already exists, which is harmless.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
        run(&config, &out)
    });
    match outcome {
        Ok(report) => {
            for c in &report.checks {
                println!("{} {}: {} (need {})", if c.passed { "PASS" } else { "FAIL" }, c.label, c.measured, c.relation);
            }
            println!("{} -> {}", if report.passed { "passed" } else { "failed" }, out.display());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
