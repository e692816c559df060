//! Numerical results checked against independent computations.

use std::f64::consts::PI;

use purespin::constants::{monte_carlo_volume, volume, Domain, Provenance};
use purespin::fock::{
    gegenbauer_zonal, kernel_eigenvalue, levels_from_lambdas, nystrom_spectrum, self_consistency, solve_levels,
    solve_levels_quadrature, LambdaPath, NystromConfig, PhysicalConstants,
};

/// Composite Simpson rule on the untransformed integrand
/// `cot(theta/2) sin(n theta)`, with its limit `2n` at the origin.
fn simpson_eigenvalue(n: usize, intervals: usize) -> f64 {
    let f = |t: f64| {
        if t == 0.0 {
            2.0 * n as f64
        } else {
            (n as f64 * t).sin() / (t / 2.0).tan()
        }
    };
    let h = PI / intervals as f64;
    let mut s = f(0.0) + f(PI);
    for k in 1..intervals {
        s += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0 / (n as f64 * PI)
}

#[test]
fn eigenvalues_match_simpson_oracle() {
    for n in [1, 2, 5, 11, 20] {
        let oracle = simpson_eigenvalue(n, 20_000);
        let got = kernel_eigenvalue(n, 64).unwrap();
        assert!((got - oracle).abs() < 1e-10, "n={n}: {got} vs {oracle}");
    }
    assert!((kernel_eigenvalue(1, 64).unwrap() - 1.0).abs() < 1e-8);
    assert!((kernel_eigenvalue(5, 64).unwrap() - 0.2).abs() < 1e-8);
}

#[test]
fn zonal_limit_matches_series() {
    // sin(n t)/sin(t) = n (1 - (n^2 - 1) t^2 / 6 + ...)
    let t = 1e-4;
    for n in 1..10 {
        let series = n as f64 * (1.0 - (n * n - 1) as f64 * t * t / 6.0);
        assert!((gegenbauer_zonal(n, t) - series).abs() < 1e-9);
    }
    assert_eq!(gegenbauer_zonal(5, 0.0), 5.0);
}

#[test]
fn quadrature_levels_agree_with_analytic() {
    let c = PhysicalConstants::default();
    let a = solve_levels(20, &c).unwrap();
    let q = solve_levels_quadrature(20, &c, 64).unwrap();
    for (x, y) in a.levels.iter().zip(&q.levels) {
        assert!((x.energy_ev / y.energy_ev - 1.0).abs() < 1e-9);
    }
    assert!(q.is_monotone());
}

#[test]
fn nystrom_refinement_is_monotone() {
    let errors: Vec<f64> = [8, 12, 16, 24]
        .iter()
        .map(|&g| nystrom_spectrum(&NystromConfig::new(g, 1)).unwrap().lambda1_error())
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(errors[3] < 1e-3);
}

#[test]
fn nystrom_reference_grid_spectrum() {
    let r = nystrom_spectrum(&NystromConfig::new(24, 3)).unwrap();
    assert!(r.multiplicities_match(), "{:?}", r.clusters);
    assert!(r.max_relative_error() < 1e-3);
    assert!(r.separator < r.clusters[2].min);
    let levels = levels_from_lambdas(&r.eigenvalues(), &PhysicalConstants::default(), LambdaPath::Supplied).unwrap();
    assert!(levels.scaling_defect() < 1e-3, "{}", levels.scaling_defect());
}

#[test]
fn self_consistency_on_twenty_points() {
    for n in 1..=6 {
        let r = self_consistency(n, &PhysicalConstants::default(), 11, 64).unwrap();
        assert_eq!(r.samples.len(), 20);
        assert!((r.coupling - n as f64).abs() < 1e-12);
        assert!(r.max_error < 1e-11, "n={n}: {}", r.max_error);
    }
}

#[test]
fn sphere_volume_monte_carlo() {
    let closed = volume(Domain::S4, Provenance::ClosedForm).unwrap();
    let sampled = monte_carlo_volume(Domain::S4, 10_000_000, 1).unwrap();
    assert!((sampled.value / closed.value - 1.0).abs() <= 1e-2);
    assert!(sampled.standard_error.unwrap() / closed.value < 2e-3);
    // 2 pi^{5/2} / Gamma(5/2)
    let formula = 2.0 * PI.powf(2.5) / (0.75 * PI.sqrt());
    assert!((closed.value - formula).abs() < 1e-12);
}
