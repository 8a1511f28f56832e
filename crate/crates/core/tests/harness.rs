use std::f64::consts::PI;

use approx::assert_relative_eq;
use fracleib::decomposition::CommutatorOrder;
use fracleib::harness::{
    biparameter_ratio, commutator_ratio, family_generate, kp_ratio, mixed_ratio,
    sharpness_classify, sweep, BaseProfile, FamilyKind, FamilySpec, MixedExponents, Regime,
    SweepSpec, TheoremId,
};
use fracleib::norms::{ExponentTuple, MixedComponent, MixedSpec, Weight};
use fracleib::spectral::{
    random_band_limited, synthesize, BumpKind, Grid, GridFunction, Spectrum, Symbol,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn gaussian(grid: Grid, c: f64) -> GridFunction {
    GridFunction::from_fn(grid, |x| Complex64::new((-c * x[0] * x[0]).exp(), 0.0))
}

fn l2_pair() -> ExponentTuple {
    ExponentTuple::new(2.0, 2.0, 1.0, 0.0, 0.0, 0.0).unwrap()
}

fn mixed(p: f64, a: f64) -> MixedSpec {
    MixedSpec::new(MixedComponent { p, a, dim: 1 }, MixedComponent { p, a, dim: 1 })
}

#[test]
fn modulated_family_at_zero_multiplies_to_the_squared_profile() {
    let grid = Grid::new(1, 2.0 * PI, 256).unwrap();
    let (f0, g0) = family_generate(grid, FamilyKind::Modulated, 0.0).unwrap();
    let base = synthesize(grid, &Symbol::bump(BumpKind::LowPass, 0)).unwrap();
    // f_0 g_0 = |φ|² since the two phases cancel.
    assert!(f0.mul(&g0).relative_distance(&base.mul(&base)) < 1e-13);
}

#[test]
fn modulated_family_occupies_the_shifted_band() {
    let grid = Grid::new(1, 2.0 * PI, 256).unwrap();
    let (f, _) = family_generate(grid, FamilyKind::Modulated, 5.0).unwrap();
    let r = Spectrum::of(&f).occupied_radius(1e-12);
    assert!(r <= 34.0 && r >= 30.0, "radius {r}");
}

#[test]
fn unit_dilation_is_the_base_profile() {
    let grid = Grid::new(1, 64.0, 512).unwrap();
    let (f, g) = family_generate(grid, FamilyKind::Dilated { base: BaseProfile::Annular }, 1.0).unwrap();
    let (psi, _) = family_generate(grid, FamilyKind::PsiSquared, 1.0).unwrap();
    assert!(f.relative_distance(&g) == 0.0);
    assert!(f.relative_distance(&psi) < 1e-15);
}

#[test]
fn families_refuse_aliased_or_oversized_parameters() {
    let grid = Grid::new(1, 2.0 * PI, 256).unwrap();
    assert!(family_generate(grid, FamilyKind::Modulated, 7.0).is_err());
    assert!(family_generate(grid, FamilyKind::Modulated, 1.5).is_err());
    let wide = Grid::new(1, 64.0, 512).unwrap();
    assert!(family_generate(wide, FamilyKind::PsiSquared, 0.01).is_err());
    assert!(family_generate(wide, FamilyKind::PsiSquared, 1.5).is_err());
    let small = Grid::new(1, 8.0, 512).unwrap();
    assert!(family_generate(small, FamilyKind::PsiSquared, 1.0).is_err());
}

#[test]
fn zero_pair_is_degenerate_with_zero_ratio() {
    let grid = Grid::new(1, 16.0, 128).unwrap();
    let zero = GridFunction::zeros(grid);
    let g = random_band_limited(grid, 4.0, 1);
    let r = kp_ratio(&zero, &g, 1.0, &l2_pair()).unwrap();
    assert!(r.degenerate);
    assert_eq!(r.ratio, 0.0);
}

#[test]
fn constant_first_factor_is_bounded_by_one() {
    let grid = Grid::new(1, 16.0, 128).unwrap();
    let one = GridFunction::from_fn(grid, |_| Complex64::new(1.0, 0.0));
    let e = ExponentTuple::new(f64::INFINITY, 2.0, 2.0, 0.0, 0.0, 0.0).unwrap();
    for seed in 0..4 {
        let g = random_band_limited(grid, 4.0, seed);
        let r = kp_ratio(&one, &g, 1.7, &e).unwrap();
        assert!(r.ratio <= 1.0 + 1e-12, "{}", r.ratio);
    }
}

#[test]
fn gaussian_pair_at_order_two_matches_closed_forms() {
    // f = g = e^{-x²}, J² = 1 - d²/dx²:
    //   J²(fg) = e^{-2x²}(5 - 16x²), ‖·‖₂² = 8.5√π;
    //   J²f = e^{-x²}(3 - 4x²), ‖·‖₂² = 3√2√π, sup 3;
    //   ‖f‖₂ = (π/2)^{1/4}, ‖g‖_∞ = 1.
    let grid = Grid::new(1, 24.0, 512).unwrap();
    let f = gaussian(grid, 1.0);
    let e = ExponentTuple::new(2.0, f64::INFINITY, 2.0, 0.0, 0.0, 0.0).unwrap();
    let r = kp_ratio(&f, &f, 2.0, &e).unwrap();
    let sqrt_pi = PI.sqrt();
    assert_relative_eq!(r.lhs, (8.5 * sqrt_pi).sqrt(), max_relative = 1e-12);
    assert_relative_eq!(r.rhs_terms[0], (3.0 * 2f64.sqrt() * sqrt_pi).sqrt(), max_relative = 1e-12);
    assert_relative_eq!(r.rhs_terms[1], (PI / 2.0).powf(0.25) * 3.0, max_relative = 1e-6);
}

#[test]
fn commutator_with_constant_first_factor_vanishes() {
    let grid = Grid::new(1, 16.0, 128).unwrap();
    let c = GridFunction::from_fn(grid, |_| Complex64::new(3.0, 0.0));
    let g = random_band_limited(grid, 4.0, 2);
    let r = commutator_ratio(&c, &g, 1.2, &l2_pair(), CommutatorOrder::First).unwrap();
    assert!(r.lhs <= 1e-12 * r.rhs);
}

#[test]
fn mixed_with_equal_exponents_matches_the_single_norm_instance() {
    let grid = Grid::new(2, 12.0, 32).unwrap();
    let f = random_band_limited(grid, 3.0, 6);
    let g = random_band_limited(grid, 3.0, 7);
    // Mixed weights are products over blocks, so only the unweighted case
    // coincides with the single-norm instance.
    let m = MixedExponents { target: mixed(1.0, 0.0), first: mixed(2.0, 0.0), second: mixed(2.0, 0.0) };
    let single = l2_pair();
    let a = mixed_ratio(&f, &g, 1.1, &m).unwrap();
    let b = kp_ratio(&f, &g, 1.1, &single).unwrap();
    assert_relative_eq!(a.ratio, b.ratio, max_relative = 1e-12);
    assert_eq!(a.theorem_id, TheoremId::Mixed);
}

#[test]
fn mixed_exponents_must_satisfy_holder_per_block() {
    let grid = Grid::new(2, 12.0, 32).unwrap();
    let f = random_band_limited(grid, 3.0, 6);
    let m = MixedExponents { target: mixed(2.0, 0.0), first: mixed(2.0, 0.0), second: mixed(2.0, 0.0) };
    assert!(mixed_ratio(&f, &f, 1.0, &m).is_err());
}

#[test]
fn biparameter_at_order_zero_reduces_to_holder() {
    let grid = Grid::new(2, 12.0, 32).unwrap();
    let f = random_band_limited(grid, 3.0, 8);
    let g = random_band_limited(grid, 3.0, 9);
    let m = MixedExponents { target: mixed(1.0, 0.0), first: mixed(2.0, 0.0), second: mixed(2.0, 0.0) };
    let r = biparameter_ratio(&f, &g, 0.0, 0.0, &m).unwrap();
    for t in &r.rhs_terms {
        assert_relative_eq!(*t, r.rhs_terms[0], max_relative = 1e-12);
    }
    assert!(r.ratio <= 0.25 * (1.0 + 1e-12));
    assert_eq!(r.s_outer, Some(0.0));
}

#[test]
fn sharpness_regimes() {
    assert_eq!(sharpness_classify(1.0, 0.5, 2).unwrap(), Regime::DivergentExpected);
    assert_eq!(sharpness_classify(2.5, 0.5, 2).unwrap(), Regime::BoundedExpected);
    assert_eq!(sharpness_classify(4.0, 0.3, 3).unwrap(), Regime::EvenIntegerException);
    assert_eq!(sharpness_classify(0.1, f64::INFINITY, 1).unwrap(), Regime::BoundedExpected);
    assert_eq!(sharpness_classify(-0.5, 2.0, 1).unwrap(), Regime::DivergentExpected);
    assert!(sharpness_classify(1.0, 0.0, 1).is_err());
    assert!(sharpness_classify(1.0, 1.0, 0).is_err());
}

#[test]
fn modulated_sweep_reports_every_parameter_and_fits_the_interior() {
    let grid = Grid::new(1, 2.0 * PI, 256).unwrap();
    let spec = SweepSpec {
        theorem: TheoremId::KatoPonce,
        s: 1.0,
        exponents: l2_pair(),
        family: FamilySpec { kind: FamilyKind::Modulated, params: vec![1.0, 2.0, 3.0, 4.0, 5.0] },
        weight: Weight::Japanese(0.0),
    };
    let out = sweep(grid, &spec).unwrap();
    assert_eq!(out.reports.len(), 5);
    assert_eq!(out.abscissa, vec![2.0, 4.0, 8.0, 16.0, 32.0]);
    assert_eq!(out.fit_window, vec![1, 2, 3]);
    assert!(out.fit.is_some());
    for (r, k) in out.reports.iter().zip(1..) {
        assert_eq!(r.family_param, k as f64);
        assert_eq!(r.normalization, 1.0);
    }
}

#[test]
fn dilation_sweeps_carry_the_scale_free_factor() {
    let grid = Grid::new(1, 64.0, 1024).unwrap();
    let e = ExponentTuple::new(2.0, 2.0, 1.0, 1.0, 1.0, 1.0).unwrap();
    let spec = SweepSpec {
        theorem: TheoremId::KatoPonce,
        s: 0.5,
        exponents: e,
        family: FamilySpec { kind: FamilyKind::Dilated { base: BaseProfile::LowPass }, params: vec![0.5, 0.25] },
        weight: Weight::Japanese(0.0),
    };
    let out = sweep(grid, &spec).unwrap();
    for r in &out.reports {
        assert_relative_eq!(r.normalization, r.family_param.powf(0.5 - 1.0), max_relative = 1e-15);
        let (f, g) = family_generate(grid, spec.family.kind, r.family_param).unwrap();
        let raw = kp_ratio(&f, &g, 0.5, &e).unwrap();
        assert_relative_eq!(r.ratio, raw.ratio, max_relative = 1e-14);
    }
    let homogeneous = SweepSpec { weight: Weight::Homogeneous(0.0), ..spec };
    let out = sweep(grid, &homogeneous).unwrap();
    for r in &out.reports {
        assert_relative_eq!(r.normalization, r.family_param.powf(0.5 - 2.0), max_relative = 1e-15);
    }
}

#[test]
fn sweeps_refuse_aliased_parameters() {
    let grid = Grid::new(1, 2.0 * PI, 128).unwrap();
    let spec = SweepSpec {
        theorem: TheoremId::KatoPonce,
        s: 1.0,
        exponents: l2_pair(),
        family: FamilySpec { kind: FamilyKind::Modulated, params: vec![1.0, 6.0] },
        weight: Weight::Japanese(0.0),
    };
    assert!(sweep(grid, &spec).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ratio_is_symmetric_for_symmetric_exponents(s in -1.0f64..3.0, p in 1.0f64..4.0, a in 0.0f64..2.0, seed in 0u64..200) {
        let grid = Grid::new(1, 16.0, 128).unwrap();
        let f = random_band_limited(grid, 4.0, seed);
        let g = random_band_limited(grid, 4.0, seed + 500);
        let e = ExponentTuple::new(p, p, p / 2.0, a, a, a).unwrap();
        let fg = kp_ratio(&f, &g, s, &e).unwrap();
        let gf = kp_ratio(&g, &f, s, &e).unwrap();
        prop_assert!((fg.ratio - gf.ratio).abs() <= 1e-12 * fg.ratio);
    }

    #[test]
    fn ratio_is_invariant_under_scaling_each_factor(c in 0.1f64..10.0, seed in 0u64..200) {
        let grid = Grid::new(1, 16.0, 128).unwrap();
        let f = random_band_limited(grid, 4.0, seed);
        let g = random_band_limited(grid, 4.0, seed + 500);
        let base = kp_ratio(&f, &g, 1.0, &l2_pair()).unwrap().ratio;
        let scaled = kp_ratio(&f.scale(Complex64::new(c, 0.0)), &g, 1.0, &l2_pair()).unwrap().ratio;
        prop_assert!((base - scaled).abs() <= 1e-12 * base);
    }
}
