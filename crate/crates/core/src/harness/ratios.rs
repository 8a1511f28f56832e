use serde::{Deserialize, Serialize};

use crate::decomposition::{commutator_lhs, CommutatorOrder};
use crate::norms::{mixed_norm, weighted_norm_with, ExponentTuple, MixedSpec, Weight};
use crate::spectral::{apply_symbol, gradient, magnitude, Grid, GridFunction, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `‖J^s(fg)‖ <= ‖J^s f‖‖g‖ + ‖f‖‖J^s g‖` in weighted norms.
    KatoPonce,
    /// First-order commutator `J^s(fg) - f J^s g`.
    CommutatorFirst,
    /// Second-order commutator.
    CommutatorSecond,
    /// Kato-Ponce in weighted mixed norms.
    Mixed,
    /// Bi-parameter Kato-Ponce in weighted mixed norms.
    Biparameter,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub dim: usize,
    pub side: f64,
    pub points: usize,
}

impl From<&Grid> for GridMeta {
    fn from(g: &Grid) -> Self {
        Self { dim: g.dim(), side: g.side(), points: g.points() }
    }
}

/// Exponents and weight powers of the three mixed norms, with the Hölder
/// relations checked block by block.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedExponents {
    pub target: MixedSpec,
    pub first: MixedSpec,
    pub second: MixedSpec,
}

impl MixedExponents {
    pub fn validate(&self) -> Result<()> {
        let blocks = |m: &MixedSpec| (m.inner.dim, m.outer.dim);
        if blocks(&self.first) != blocks(&self.target) || blocks(&self.second) != blocks(&self.target) {
            return Err(Error::pre("mixed norms disagree on the block split"));
        }
        ExponentTuple::new(
            self.first.inner.p,
            self.second.inner.p,
            self.target.inner.p,
            self.first.inner.a,
            self.second.inner.a,
            self.target.inner.a,
        )?;
        ExponentTuple::new(
            self.first.outer.p,
            self.second.outer.p,
            self.target.outer.p,
            self.first.outer.a,
            self.second.outer.a,
            self.target.outer.a,
        )?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponents {
    Single(ExponentTuple),
    Mixed(MixedExponents),
}

/// Both sides of one inequality instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub family_param: f64,
    pub lhs: f64,
    pub rhs_terms: Vec<f64>,
    pub rhs: f64,
    pub ratio: f64,
    pub exponents: Exponents,
    pub s: f64,
    /// Order on the outer block, for bi-parameter instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_outer: Option<f64>,
    /// Common factor applied to every norm (1 unless a dilation family is
    /// reported in rescaled form).
    pub normalization: f64,
    pub grid: GridMeta,
    pub degenerate: bool,
}

impl InequalityReport {
    pub(crate) fn new(
        theorem_id: TheoremId,
        grid: &Grid,
        s: f64,
        exponents: Exponents,
        lhs: f64,
        rhs_terms: Vec<f64>,
    ) -> Result<Self> {
        let rhs: f64 = rhs_terms.iter().sum();
        if !lhs.is_finite() || !rhs.is_finite() {
            return Err(Error::NonFinite(format!("{theorem_id:?}: lhs {lhs}, rhs {rhs}")));
        }
        let degenerate = rhs < f64::MIN_POSITIVE;
        let ratio = if degenerate {
            if lhs > 0.0 {
                return Err(Error::NonFinite(format!(
                    "{theorem_id:?}: right side vanishes while left side is {lhs}"
                )));
            }
            0.0
        } else {
            lhs / rhs
        };
        Ok(Self {
            theorem_id,
            family_param: f64::NAN,
            lhs,
            rhs_terms,
            rhs,
            ratio,
            exponents,
            s,
            s_outer: None,
            normalization: 1.0,
            grid: grid.into(),
            degenerate,
        })
    }

    /// Multiplies every norm by `factor`; the ratio is unchanged.
    pub fn rescaled(mut self, factor: f64) -> Self {
        self.lhs *= factor;
        self.rhs *= factor;
        for t in self.rhs_terms.iter_mut() {
            *t *= factor;
        }
        self.normalization *= factor;
        self
    }
}

fn norm(f: &GridFunction, p: f64, a: f64, weight: Weight) -> Result<f64> {
    weighted_norm_with(f, p, weight.with_exponent(a))
}

/// Weighted Kato-Ponce instance with `(1+|x|²)^{a/2}` weights.
pub fn kp_ratio(f: &GridFunction, g: &GridFunction, s: f64, e: &ExponentTuple) -> Result<InequalityReport> {
    kp_ratio_with(f, g, s, e, Weight::Japanese(0.0))
}

/// As [`kp_ratio`] with the weight family taken from `weight` (its exponent
/// is ignored; the powers come from `e`).
pub fn kp_ratio_with(
    f: &GridFunction,
    g: &GridFunction,
    s: f64,
    e: &ExponentTuple,
    weight: Weight,
) -> Result<InequalityReport> {
    e.validate()?;
    let bessel = Symbol::bessel(s);
    let jf = apply_symbol(f, &bessel)?;
    let jg = apply_symbol(g, &bessel)?;
    let jfg = apply_symbol(&f.mul(g), &bessel)?;
    let lhs = norm(&jfg, e.p, e.a, weight)?;
    let rhs_terms = vec![
        norm(&jf, e.p1, e.a1, weight)? * norm(g, e.p2, e.a2, weight)?,
        norm(f, e.p1, e.a1, weight)? * norm(&jg, e.p2, e.a2, weight)?,
    ];
    InequalityReport::new(TheoremId::KatoPonce, f.grid(), s, Exponents::Single(*e), lhs, rhs_terms)
}

/// Commutator instance; the right side is `‖J^s f‖‖g‖ + ‖∇f‖‖J^{s-1} g‖`
/// with `|∇f|` the pointwise Euclidean length.
pub fn commutator_ratio(
    f: &GridFunction,
    g: &GridFunction,
    s: f64,
    e: &ExponentTuple,
    order: CommutatorOrder,
) -> Result<InequalityReport> {
    e.validate()?;
    let weight = Weight::Japanese(0.0);
    let lhs = norm(&commutator_lhs(f, g, s, order)?, e.p, e.a, weight)?;
    let jf = apply_symbol(f, &Symbol::bessel(s))?;
    let jg = apply_symbol(g, &Symbol::bessel(s - 1.0))?;
    let grad = magnitude(&gradient(f)?);
    let rhs_terms = vec![
        norm(&jf, e.p1, e.a1, weight)? * norm(g, e.p2, e.a2, weight)?,
        norm(&grad, e.p1, e.a1, weight)? * norm(&jg, e.p2, e.a2, weight)?,
    ];
    let id = match order {
        CommutatorOrder::First => TheoremId::CommutatorFirst,
        CommutatorOrder::Second => TheoremId::CommutatorSecond,
    };
    InequalityReport::new(id, f.grid(), s, Exponents::Single(*e), lhs, rhs_terms)
}

/// Kato-Ponce in mixed norms with the full Bessel potential `J^s`.
pub fn mixed_ratio(f: &GridFunction, g: &GridFunction, s: f64, m: &MixedExponents) -> Result<InequalityReport> {
    m.validate()?;
    let bessel = Symbol::bessel(s);
    let jf = apply_symbol(f, &bessel)?;
    let jg = apply_symbol(g, &bessel)?;
    let lhs = mixed_norm(&apply_symbol(&f.mul(g), &bessel)?, &m.target)?;
    let rhs_terms = vec![
        mixed_norm(&jf, &m.first)? * mixed_norm(g, &m.second)?,
        mixed_norm(f, &m.first)? * mixed_norm(&jg, &m.second)?,
    ];
    InequalityReport::new(TheoremId::Mixed, f.grid(), s, Exponents::Mixed(*m), lhs, rhs_terms)
}

/// Potential acting on one block of axes only.
fn block_bessel(s: f64, from: usize, to: usize) -> Symbol {
    Symbol::custom_real(format!("bessel {s} on axes {from}..{to}"), move |xi| {
        let r2: f64 = xi[from..to].iter().map(|v| v * v).sum();
        (1.0 + r2).powf(0.5 * s)
    })
}

/// Bi-parameter instance with `J̇^{s_inner} J̈^{s_outer}`; the right side has
/// the four products `‖J̇J̈f‖‖g‖`, `‖f‖‖J̇J̈g‖`, `‖J̇f‖‖J̈g‖`, `‖J̈f‖‖J̇g‖`.
pub fn biparameter_ratio(
    f: &GridFunction,
    g: &GridFunction,
    s_inner: f64,
    s_outer: f64,
    m: &MixedExponents,
) -> Result<InequalityReport> {
    m.validate()?;
    let split = m.target.inner.dim;
    let total = split + m.target.outer.dim;
    let inner = block_bessel(s_inner, 0, split);
    let outer = block_bessel(s_outer, split, total);
    let both = inner.times(&outer);
    let lhs = mixed_norm(&apply_symbol(&f.mul(g), &both)?, &m.target)?;
    let n1 = |h: &GridFunction| mixed_norm(h, &m.first);
    let n2 = |h: &GridFunction| mixed_norm(h, &m.second);
    let rhs_terms = vec![
        n1(&apply_symbol(f, &both)?)? * n2(g)?,
        n1(f)? * n2(&apply_symbol(g, &both)?)?,
        n1(&apply_symbol(f, &inner)?)? * n2(&apply_symbol(g, &outer)?)?,
        n1(&apply_symbol(f, &outer)?)? * n2(&apply_symbol(g, &inner)?)?,
    ];
    let mut report =
        InequalityReport::new(TheoremId::Biparameter, f.grid(), s_inner, Exponents::Mixed(*m), lhs, rhs_terms)?;
    report.s_outer = Some(s_outer);
    Ok(report)
}
