use approx::assert_relative_eq;
use fracleib::kernels::{
    jsdelta_tail_profile, kernel_bound_check, kernel_convolution_oracle, kernel_ks_delta,
    least_squares_line, tail_exponent_fit,
};
use fracleib::spectral::{fractional_op, Fractional, Grid, GridFunction};
use num_complex::Complex64;
use proptest::prelude::*;

/// Lanczos approximation (g = 7, nine terms), kept local so the kernel's
/// small-radius limit is compared against something other than the crate's
/// own Gamma dependency.
fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + G + 0.5;
    let series = C[1..].iter().enumerate().fold(C[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0));
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * series
}

#[test]
fn lanczos_reference_is_sane() {
    assert_relative_eq!(lanczos_gamma(5.0), 24.0, max_relative = 1e-13);
    assert_relative_eq!(lanczos_gamma(0.5), std::f64::consts::PI.sqrt(), max_relative = 1e-13);
}

#[test]
fn small_radius_limit_is_gamma_of_half_the_order() {
    let (s, n) = (-0.5, 1);
    let y = 1e-3;
    let k = kernel_ks_delta(y, s, 1e-3, n).unwrap().value;
    let scaled = k * y.powf(n as f64 + s);
    assert_relative_eq!(scaled, lanczos_gamma(0.25), max_relative = 1e-2);
}

#[test]
fn undamped_kernel_is_homogeneous() {
    let (s, n, delta) = (-0.5, 1, 1e-7);
    let a = kernel_ks_delta(1e-3, s, delta, n).unwrap().value;
    let b = kernel_ks_delta(2e-3, s, delta, n).unwrap().value;
    assert_relative_eq!(b / a, 2f64.powf(-0.5), max_relative = 1e-3);
}

#[test]
fn order_minus_dimension_is_accepted_and_below_is_rejected() {
    assert!(kernel_ks_delta(1.0, -1.0, 0.5, 1).is_ok());
    assert!(kernel_ks_delta(1.0, -1.5, 0.5, 1).is_err());
    assert!(kernel_ks_delta(0.0, -0.5, 0.5, 1).is_err());
    assert!(kernel_ks_delta(1.0, -0.5, 0.0, 1).is_err());
    assert!(kernel_ks_delta(1.0, -0.5, 1.5, 1).is_err());
    assert!(kernel_ks_delta(1.0, -0.5, 0.5, 4).is_err());
}

#[test]
fn bound_check_examples() {
    let c = kernel_bound_check(5.0, -0.5, 0.5, 1).unwrap();
    assert!(c.passes, "{c:?}");
    assert!(c.value > 0.0 && c.envelope > 0.0);
    let at_one = kernel_bound_check(1.0, -0.3, 1.0, 2).unwrap();
    assert_relative_eq!(at_one.value, at_one.envelope, max_relative = 1e-12);
    assert!(kernel_bound_check(5.0, 0.5, 0.5, 1).is_err());
    assert!(kernel_bound_check(0.5, -0.5, 0.5, 1).is_err());
}

#[test]
fn tail_fit_recovers_a_power_law_and_rejects_short_input() {
    let radii = [1.0, 2.0, 4.0, 8.0, 16.0];
    let values: Vec<f64> = radii.iter().map(|r: &f64| 3.0 * r.powf(-2.5)).collect();
    let fit = tail_exponent_fit(&radii, &values).unwrap();
    assert_relative_eq!(fit.exponent, -2.5, max_relative = 1e-12);
    assert_relative_eq!(fit.intercept, 3f64.ln(), max_relative = 1e-12);
    assert!(tail_exponent_fit(&radii[..3], &values[..3]).is_err());
    assert!(tail_exponent_fit(&[1.0, 2.0, 2.0, 3.0], &[1.0; 4]).is_err());
    assert!(tail_exponent_fit(&radii, &[1.0, 1.0, 0.0, 1.0, 1.0]).is_err());
    assert!(least_squares_line(&[1.0, 1.0], &[0.0, 1.0]).is_err());
}

#[test]
fn convolution_oracle_tracks_the_spectral_route() {
    let grid = Grid::new(1, 32.0, 2048).unwrap();
    let f = GridFunction::from_fn(grid, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
    let (s, delta) = (-0.6, 0.5);
    let spectral = fractional_op(&f, Fractional::BesselDelta { s, delta }).unwrap();
    let oracle = kernel_convolution_oracle(&f, s, delta).unwrap();
    let gap = spectral.sub(&oracle).max_abs() / spectral.max_abs();
    assert!(gap < 5e-3, "gap {gap}");
}

#[test]
fn tail_profile_rejects_radii_outside_the_box() {
    let grid = Grid::new(1, 16.0, 256).unwrap();
    let f = GridFunction::from_fn(grid, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
    assert!(jsdelta_tail_profile(&f, 1.0, 0.5, &[2.0, 3.0, 4.0, 7.5]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_decreases_with_damping(y in 0.1f64..5.0, s in -0.9f64..1.0, d in 0.05f64..0.9) {
        let weak = kernel_ks_delta(y, s, d, 1).unwrap().value;
        let strong = kernel_ks_delta(y, s, (d * 1.1).min(1.0), 1).unwrap().value;
        prop_assert!(strong < weak);
    }

    #[test]
    fn kernel_decreases_with_radius(y in 0.1f64..5.0, s in -1.5f64..0.5, d in 0.05f64..1.0) {
        let near = kernel_ks_delta(y, s, d, 2).unwrap().value;
        let far = kernel_ks_delta(y * 1.2, s, d, 2).unwrap().value;
        prop_assert!(far < near && far > 0.0);
    }
}
