use std::f64::consts::PI;

use approx::assert_relative_eq;
use fracleib::spectral::{
    apply_symbol, convolve, derivative_symbol, fractional_op, gradient, lp_project, plane_wave,
    random_band_limited, synthesize, transform, translate, BumpKind, Fractional, Grid, GridFunction,
    Projection, Spectrum, Symbol,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn l2_squared(values: &[Complex64]) -> f64 {
    values.iter().map(|v| v.norm_sqr()).sum()
}

#[test]
fn parseval_and_round_trip_in_three_dimensions() {
    let grid = Grid::new(3, 10.0, 16).unwrap();
    let f = GridFunction::from_fn(grid, |x| Complex64::new((x[0] * x[1]).sin(), x[2].cos() * x[0]));
    let mut data = f.values().to_vec();
    transform::forward(&grid, &mut data);
    assert_relative_eq!(l2_squared(&data), l2_squared(f.values()), max_relative = 1e-12);
    transform::inverse(&grid, &mut data);
    let back = GridFunction::from_values(grid, data).unwrap();
    assert!(back.relative_distance(&f) < 1e-13);
}

#[test]
fn reproducing_formula_is_exact_on_the_band() {
    let grid = Grid::new(1, 8.0 * PI, 512).unwrap();
    let f = random_band_limited(grid, 30.0, 11);
    let mut sum = lp_project(&f, Projection::Low(0)).unwrap();
    for j in 1..=5 {
        sum.add_assign(&lp_project(&f, Projection::Band(j)).unwrap());
    }
    assert!(sum.relative_distance(&f) < 1e-13);
}

#[test]
fn widened_band_is_a_sum_of_five_pieces() {
    let grid = Grid::new(2, 16.0, 64).unwrap();
    let f = random_band_limited(grid, 10.0, 5);
    let wide = lp_project(&f, Projection::Widened(2)).unwrap();
    let mut sum = GridFunction::zeros(grid);
    for k in 0..=4 {
        sum.add_assign(&lp_project(&f, Projection::Band(k)).unwrap());
    }
    assert!(wide.relative_distance(&sum) < 1e-13);
}

#[test]
fn derivative_of_a_plane_wave() {
    let grid = Grid::new(2, 2.0 * PI, 32).unwrap();
    let xi = [3.0, -2.0];
    let wave = plane_wave(grid, &xi).unwrap();
    let grad = gradient(&wave).unwrap();
    for (axis, g) in grad.iter().enumerate() {
        let expected = wave.scale(Complex64::new(0.0, xi[axis]));
        assert!(g.relative_distance(&expected) < 1e-12);
    }
    let d0 = apply_symbol(&wave, &derivative_symbol(0)).unwrap();
    assert!(d0.relative_distance(&grad[0]) < 1e-15);
}

#[test]
fn bessel_potential_on_a_plane_wave() {
    let grid = Grid::new(1, 2.0 * PI, 64).unwrap();
    let wave = plane_wave(grid, &[5.0]).unwrap();
    let out = fractional_op(&wave, Fractional::Bessel { s: 1.3 }).unwrap();
    let expected = wave.scale(Complex64::new(26f64.powf(0.65), 0.0));
    assert!(out.relative_distance(&expected) < 1e-13);
    let riesz = fractional_op(&wave, Fractional::Riesz { s: 0.5 }).unwrap();
    assert!(riesz.relative_distance(&wave.scale(Complex64::new(5f64.sqrt(), 0.0))) < 1e-13);
}

#[test]
fn damped_potential_at_unit_damping_is_the_bessel_potential() {
    let grid = Grid::new(1, 20.0, 256).unwrap();
    let f = random_band_limited(grid, 8.0, 1);
    let a = fractional_op(&f, Fractional::Bessel { s: -0.7 }).unwrap();
    let b = fractional_op(&f, Fractional::BesselDelta { s: -0.7, delta: 1.0 }).unwrap();
    assert!(a.relative_distance(&b) < 1e-15);
    assert!(Symbol::bessel_delta(0.5, 0.0).is_err());
    assert!(Symbol::riesz(0.0).is_err());
}

#[test]
fn synthesized_gaussian_matches_its_transform() {
    // ∫ e^{-|ξ|²/2} e^{ixξ} dξ = √(2π) e^{-x²/2}.
    let grid = Grid::new(1, 40.0, 512).unwrap();
    let g = synthesize(grid, &Symbol::custom_real("gaussian", |xi| (-0.5 * xi[0] * xi[0]).exp())).unwrap();
    let expected = GridFunction::from_fn(grid, |x| Complex64::new((2.0 * PI).sqrt() * (-0.5 * x[0] * x[0]).exp(), 0.0));
    assert!(g.relative_distance(&expected) < 1e-12);
}

#[test]
fn convolution_of_gaussians() {
    // e^{-x²} * e^{-x²} = √(π/2) e^{-x²/2}.
    let grid = Grid::new(1, 40.0, 1024).unwrap();
    let g = GridFunction::from_fn(grid, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
    let c = convolve(&g, &g);
    let expected = GridFunction::from_fn(grid, |x| Complex64::new((PI / 2.0).sqrt() * (-0.5 * x[0] * x[0]).exp(), 0.0));
    assert!(c.relative_distance(&expected) < 1e-12);
}

#[test]
fn translation_moves_samples_by_whole_cells() {
    let grid = Grid::new(1, 16.0, 128).unwrap();
    let f = random_band_limited(grid, 10.0, 3);
    let h = grid.spacing();
    let moved = translate(&f, &[3.0 * h]).unwrap();
    for i in 3..grid.points() {
        assert!((moved.values()[i] - f.values()[i - 3]).norm() < 1e-12);
    }
}

#[test]
fn annular_bump_supports() {
    let grid = Grid::new(1, 64.0, 1024).unwrap();
    let spec = Spectrum::of(&synthesize(grid, &Symbol::bump(BumpKind::Annular, 3)).unwrap());
    let r = spec.occupied_radius(1e-12);
    assert!(r <= 16.0 + grid.frequency_step(), "occupied radius {r}");
    assert!(r >= 15.0);
}

#[test]
fn nonfinite_symbol_values_are_reported() {
    let grid = Grid::new(1, 4.0, 16).unwrap();
    let f = random_band_limited(grid, 2.0, 0);
    let bad = Symbol::custom_real("singular", |xi| 1.0 / xi[0]);
    assert!(apply_symbol(&f, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn potentials_compose(s in -2.0f64..3.0, t in -2.0f64..3.0, seed in 0u64..1000) {
        let grid = Grid::new(1, 12.0, 128).unwrap();
        let f = random_band_limited(grid, 12.0, seed);
        let two_steps = fractional_op(&fractional_op(&f, Fractional::Bessel { s }).unwrap(), Fractional::Bessel { s: t }).unwrap();
        let one_step = fractional_op(&f, Fractional::Bessel { s: s + t }).unwrap();
        prop_assert!(two_steps.relative_distance(&one_step) < 1e-11);
    }

    #[test]
    fn multipliers_are_linear(c in -5.0f64..5.0, seed in 0u64..1000) {
        let grid = Grid::new(2, 10.0, 32).unwrap();
        let f = random_band_limited(grid, 6.0, seed);
        let g = random_band_limited(grid, 6.0, seed + 1);
        let sym = Symbol::bessel(0.8);
        let lhs = apply_symbol(&f.scale(Complex64::new(c, 0.0)).add(&g), &sym).unwrap();
        let rhs = apply_symbol(&f, &sym).unwrap().scale(Complex64::new(c, 0.0)).add(&apply_symbol(&g, &sym).unwrap());
        prop_assert!(lhs.relative_distance(&rhs) < 1e-12);
    }

    #[test]
    fn parseval_holds(seed in 0u64..1000) {
        let grid = Grid::new(2, 7.0, 24).unwrap();
        let f = random_band_limited(grid, 20.0, seed);
        let mut data = f.values().to_vec();
        transform::forward(&grid, &mut data);
        let (a, b) = (l2_squared(&data), l2_squared(f.values()));
        prop_assert!((a - b).abs() <= 1e-12 * b);
    }
}
