use std::f64::consts::PI;

use fracleib::decomposition::{
    commutator_lhs, commutator_terms, first_order_correction, fourier_series_apply, lp_pieces,
    paraproduct, symbol_remainder, Bucket, CommutatorOrder,
};
use fracleib::spectral::{
    apply_symbol, fractional_op, random_band_limited, BumpKind, Fractional, Grid, GridFunction,
    Projection, Symbol,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn grid_1d() -> Grid {
    Grid::new(1, 16.0 * PI, 256).unwrap()
}

#[test]
fn second_order_commutator_at_order_two_is_minus_laplacian_times_g() {
    let grid = Grid::new(2, 8.0 * PI, 64).unwrap();
    let f = random_band_limited(grid, 2.0, 4);
    let g = random_band_limited(grid, 2.0, 5);
    let lhs = commutator_lhs(&f, &g, 2.0, CommutatorOrder::Second).unwrap();
    let minus_laplacian = Symbol::custom_real("|ξ|²", |xi| xi.iter().map(|v| v * v).sum());
    let expected = apply_symbol(&f, &minus_laplacian).unwrap().mul(&g);
    assert!(lhs.sub(&expected).max_abs() <= 1e-10 * expected.max_abs());
}

#[test]
fn orders_differ_by_the_correction() {
    let grid = grid_1d();
    let f = random_band_limited(grid, 4.0, 8);
    let g = random_band_limited(grid, 4.0, 9);
    let s = 1.3;
    let first = commutator_lhs(&f, &g, s, CommutatorOrder::First).unwrap();
    let second = commutator_lhs(&f, &g, s, CommutatorOrder::Second).unwrap();
    let correction = first_order_correction(&f, &g, s).unwrap();
    assert!(first.sub(&second).sub(&correction).max_abs() <= 1e-12 * first.max_abs());
}

#[test]
fn commutator_vanishes_for_constant_f() {
    let grid = grid_1d();
    let f = GridFunction::from_fn(grid, |_| Complex64::new(2.5, 0.0));
    let g = random_band_limited(grid, 4.0, 1);
    let c = commutator_lhs(&f, &g, 0.7, CommutatorOrder::First).unwrap();
    assert!(c.max_abs() <= 1e-12 * g.max_abs());
}

#[test]
fn lp_pieces_refuse_incomplete_coverage() {
    let grid = grid_1d();
    let f = random_band_limited(grid, 10.0, 2);
    assert!(lp_pieces(&f, 2).is_err());
    let pieces = lp_pieces(&f, 4).unwrap();
    let mut sum = GridFunction::zeros(grid);
    for p in &pieces {
        sum.add_assign(p);
    }
    assert!(sum.relative_distance(&f) < 1e-13);
}

#[test]
fn buckets_classify_index_pairs() {
    assert_eq!(Bucket::of(0, 0), Bucket::LowLow);
    assert_eq!(Bucket::of(0, 3), Bucket::LowHigh);
    assert_eq!(Bucket::of(1, 3), Bucket::Diagonal);
    assert_eq!(Bucket::of(5, 2), Bucket::HighLow);
    assert_eq!(Bucket::of(4, 2), Bucket::Diagonal);
}

#[test]
fn low_pass_symbol_series_converges_in_the_truncation() {
    let grid = Grid::new(1, 32.0, 1024).unwrap();
    let h = random_band_limited(grid, grid.nyquist(), 12);
    let sigma = Symbol::bump(BumpKind::LowPass, 0);
    let k = 2;
    let direct =
        apply_symbol(&h, &sigma.dilate(2f64.powi(-k)).times(&Projection::Low(k).symbol())).unwrap();
    let gap = |m: usize| fourier_series_apply(&sigma, k, &h, 4.0, m).unwrap().relative_distance(&direct);
    let gaps: Vec<f64> = [8, 16, 32, 64].iter().map(|&m| gap(m)).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!(gaps[3] < 1e-4, "{gaps:?}");
}

#[test]
fn series_needs_a_compactly_supported_symbol() {
    let grid = grid_1d();
    let h = random_band_limited(grid, 4.0, 0);
    assert!(fourier_series_apply(&Symbol::bessel(1.0), 1, &h, 4.0, 8).is_err());
    assert!(fourier_series_apply(&Symbol::bump(BumpKind::LowPass, 0), 1, &h, 0.0, 8).is_err());
}

#[test]
fn remainder_rejects_mismatched_dimensions() {
    assert!(symbol_remainder(&[1.0], &[1.0, 2.0], 1.0, CommutatorOrder::First).is_err());
    assert!(symbol_remainder(&[], &[], 1.0, CommutatorOrder::First).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn paraproduct_reassembles_the_product(s in -1.5f64..3.0, seed in 0u64..500) {
        let grid = grid_1d();
        let f = random_band_limited(grid, 4.0, seed);
        let g = random_band_limited(grid, 4.0, seed + 1000);
        let total = paraproduct(&f, &g, s, 2).unwrap().total();
        let direct = fractional_op(&f.mul(&g), Fractional::Bessel { s }).unwrap();
        prop_assert!(total.relative_distance(&direct) < 1e-12);
    }

    #[test]
    fn commutator_buckets_reassemble_the_commutator(s in -1.0f64..3.0, seed in 0u64..500) {
        let grid = grid_1d();
        let f = random_band_limited(grid, 4.0, seed);
        let g = random_band_limited(grid, 4.0, seed + 1000);
        let total = commutator_terms(&f, &g, s, 2).unwrap().total();
        let direct = commutator_lhs(&f, &g, s, CommutatorOrder::First).unwrap();
        prop_assert!(total.sub(&direct).max_abs() <= 1e-11 * direct.max_abs().max(1e-300));
    }

    #[test]
    fn remainders_match_their_integrals(
        xi in prop::collection::vec(-3.0f64..3.0, 2),
        eta in prop::collection::vec(-3.0f64..3.0, 2),
        s in -2.0f64..4.0,
        second in any::<bool>(),
    ) {
        let order = if second { CommutatorOrder::Second } else { CommutatorOrder::First };
        let r = symbol_remainder(&xi, &eta, s, order).unwrap();
        prop_assert!(r.agrees(), "{r:?}");
    }
}
