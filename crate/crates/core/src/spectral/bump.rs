use serde::{Deserialize, Serialize};

/// The two radial profiles of the dyadic partition of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BumpKind {
    /// Equal to 1 on `|ξ| <= 1`, vanishing on `|ξ| >= 2`.
    LowPass,
    /// `low_pass(ξ) - low_pass(2ξ)`, supported in `1/2 <= |ξ| <= 2`.
    Annular,
}

fn flat_step(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth radial profile of magnitude `r = |ξ|`.
pub fn low_pass(r: f64) -> f64 {
    let r = r.abs();
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let rise = flat_step(2.0 - r);
        rise / (rise + flat_step(r - 1.0))
    }
}

pub fn annular(r: f64) -> f64 {
    low_pass(r) - low_pass(2.0 * r)
}

/// Evaluates a bump at a frequency vector.
pub fn evaluate_bump(kind: BumpKind, xi: &[f64]) -> f64 {
    let r = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
    match kind {
        BumpKind::LowPass => low_pass(r),
        BumpKind::Annular => annular(r),
    }
}

/// `kind(2^-j r)`.
pub fn dyadic_bump(kind: BumpKind, j: i32, r: f64) -> f64 {
    let r = r * 2f64.powi(-j);
    match kind {
        BumpKind::LowPass => low_pass(r),
        BumpKind::Annular => annular(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plateau_and_cutoff() {
        assert_eq!(low_pass(0.0), 1.0);
        assert_eq!(low_pass(1.0), 1.0);
        assert_eq!(low_pass(2.0), 0.0);
        assert_eq!(low_pass(7.5), 0.0);
        assert_eq!(annular(0.4), 0.0);
        assert_eq!(annular(2.5), 0.0);
    }

    #[test]
    fn midpoint_is_one_half() {
        assert!((low_pass(1.5) - 0.5).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn low_pass_in_unit_interval_and_monotone(a in 0.0f64..3.0, b in 0.0f64..3.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!((0.0..=1.0).contains(&low_pass(lo)));
            prop_assert!(low_pass(hi) <= low_pass(lo));
        }

        #[test]
        fn dyadic_partition_of_unity(r in 0.0f64..1024.0, levels in 10usize..14) {
            let mut total = low_pass(r);
            for j in 1..=levels as i32 {
                total += dyadic_bump(BumpKind::Annular, j, r);
            }
            prop_assert!((total - 1.0).abs() <= 1e-14);
        }
    }
}
