use serde::Serialize;

use crate::spectral::{apply_symbol, low_pass, BumpKind, Grid, GridFunction, Spectrum, Symbol};
use crate::{Error, Result};

/// Index-pair classes of the partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    /// `j <= k - 3`: low frequencies of the first factor.
    LowHigh,
    /// `k <= j - 3`: the mirror image.
    HighLow,
    /// `|j - k| <= 2` except `(0, 0)`.
    Diagonal,
    /// `(0, 0)`.
    LowLow,
}

impl Bucket {
    pub const ALL: [Bucket; 4] = [Bucket::LowHigh, Bucket::HighLow, Bucket::Diagonal, Bucket::LowLow];

    pub fn of(j: usize, k: usize) -> Bucket {
        if j == 0 && k == 0 {
            Bucket::LowLow
        } else if j + 3 <= k {
            Bucket::LowHigh
        } else if k + 3 <= j {
            Bucket::HighLow
        } else {
            Bucket::Diagonal
        }
    }
}

/// The four bucket sums, in [`Bucket::ALL`] order.
#[derive(Clone, Debug)]
pub struct BucketSums {
    pub low_high: GridFunction,
    pub high_low: GridFunction,
    pub diagonal: GridFunction,
    pub low_low: GridFunction,
}

impl BucketSums {
    pub fn get(&self, bucket: Bucket) -> &GridFunction {
        match bucket {
            Bucket::LowHigh => &self.low_high,
            Bucket::HighLow => &self.high_low,
            Bucket::Diagonal => &self.diagonal,
            Bucket::LowLow => &self.low_low,
        }
    }

    /// Sum of the buckets in fixed order.
    pub fn total(&self) -> GridFunction {
        let mut out = self.low_high.clone();
        out.add_assign(&self.high_low);
        out.add_assign(&self.diagonal);
        out.add_assign(&self.low_low);
        out
    }

    pub(crate) fn map(&self, mut op: impl FnMut(&GridFunction) -> Result<GridFunction>) -> Result<Self> {
        Ok(Self {
            low_high: op(&self.low_high)?,
            high_low: op(&self.high_low)?,
            diagonal: op(&self.diagonal)?,
            low_low: op(&self.low_low)?,
        })
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        Self {
            low_high: self.low_high.sub(&other.low_high),
            high_low: self.high_low.sub(&other.high_low),
            diagonal: self.diagonal.sub(&other.diagonal),
            low_low: self.low_low.sub(&other.low_low),
        }
    }
}

const COMPLETENESS_TOL: f64 = 1e-12;

/// `P_0 f, .., P_{k_max} f`. Fails when these pieces do not reassemble `f`,
/// i.e. when `f` carries energy beyond `|ξ| = 2^{k_max}`.
pub fn lp_pieces(f: &GridFunction, k_max: usize) -> Result<Vec<GridFunction>> {
    let spec = Spectrum::of(f);
    check_complete(&spec, k_max)?;
    (0..=k_max)
        .map(|j| {
            let kind = if j == 0 { BumpKind::LowPass } else { BumpKind::Annular };
            spec.apply(&Symbol::bump(kind, j as i32))
        })
        .collect()
}

fn check_complete(spec: &Spectrum, k_max: usize) -> Result<()> {
    let grid: &Grid = spec.grid();
    let scale = 2f64.powi(-(k_max as i32));
    let mut missing = 0.0;
    let mut total = 0.0;
    grid.for_each_frequency(|flat, xi| {
        let r = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let e = spec.coeffs()[flat].norm_sqr();
        total += e;
        missing += e * (1.0 - low_pass(scale * r)).powi(2);
    });
    if total > 0.0 && missing.sqrt() > COMPLETENESS_TOL * total.sqrt() {
        return Err(Error::pre(format!(
            "k_max = {k_max} does not cover the occupied band: relative energy {:.3e} lies beyond |ξ| = 2^{k_max}",
            (missing / total).sqrt()
        )));
    }
    Ok(())
}

/// Bucketed sums of `P_j f · Q_k` over index pairs, accumulated in
/// increasing `k` and then increasing `j`.
pub(crate) fn bucket_products(
    f_pieces: &[GridFunction],
    g_pieces: &[GridFunction],
) -> BucketSums {
    let grid = *f_pieces[0].grid();
    let mut sums = [
        GridFunction::zeros(grid),
        GridFunction::zeros(grid),
        GridFunction::zeros(grid),
        GridFunction::zeros(grid),
    ];
    let top = f_pieces.len();
    for (k, gk) in g_pieces.iter().enumerate() {
        // Low part of f relative to k, then the diagonal band, then the rest.
        let mut low = GridFunction::zeros(grid);
        for fj in f_pieces.iter().take(k.saturating_sub(2)) {
            low.add_assign(fj);
        }
        if k >= 3 {
            sums[0].add_assign(&low.mul(gk));
        }
        let lo = k.saturating_sub(2);
        let hi = (k + 2).min(top - 1);
        let mut diagonal = GridFunction::zeros(grid);
        let mut origin = None;
        for j in lo..=hi {
            if j == 0 && k == 0 {
                origin = Some(f_pieces[0].mul(gk));
            } else {
                diagonal.add_assign(&f_pieces[j].mul(gk));
            }
        }
        sums[2].add_assign(&diagonal);
        if let Some(o) = origin {
            sums[3].add_assign(&o);
        }
        let mut high = GridFunction::zeros(grid);
        for fj in f_pieces.iter().skip(k + 3) {
            high.add_assign(fj);
        }
        if k + 3 < top {
            sums[1].add_assign(&high.mul(gk));
        }
    }
    let [low_high, high_low, diagonal, low_low] = sums;
    BucketSums { low_high, high_low, diagonal, low_low }
}

/// `J^s(fg)` split into the low-high, high-low, diagonal and low-low
/// buckets. `k_max` must satisfy `2^{k_max} >= ` the occupied band of both
/// factors.
pub fn paraproduct(f: &GridFunction, g: &GridFunction, s: f64, k_max: usize) -> Result<BucketSums> {
    let fp = lp_pieces(f, k_max)?;
    let gp = lp_pieces(g, k_max)?;
    let bessel = Symbol::bessel(s);
    bucket_products(&fp, &gp).map(|b| apply_symbol(b, &bessel))
}

