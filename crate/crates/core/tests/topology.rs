use std::f64::consts::PI;
use std::time::Instant;

use hkit_core::topology::{self, gauss_legendre, QuadratureSpec};
use hkit_core::CoreError;

#[test]
fn gauss_legendre_is_exact_on_polynomials() {
    for n in [2, 5, 8, 16, 32] {
        let (x, w) = gauss_legendre(n);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for k in 0..2 * n {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
            let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((got - want).abs() < 1e-13, "n={n} k={k}");
        }
    }
}

/// (1/32 pi^2) * (4/r^4) * (r^4/8) * int sin^3 * int sin * 2pi * 4pi for each component.
fn analytic_component_charge() -> f64 {
    let sin3 = 4.0 / 3.0;
    let sin1 = 2.0;
    1.0 / (32.0 * PI * PI) * 4.0 / 8.0 * sin3 * sin1 * (2.0 * PI) * (4.0 * PI)
}

#[test]
fn unit_charge() {
    let start = Instant::now();
    let c = topology::topological_charge(&QuadratureSpec::default(), 1.0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!((c.q - 1.0).abs() < 1e-10, "{}", c.q);
    for q in c.q_per_component {
        assert!((q - 1.0 / 3.0).abs() < 1e-10);
        assert!((q - analytic_component_charge()).abs() < 1e-10);
    }
    assert!(c.estimated_error < 1e-12);
    println!("charge quadrature with doubling took {elapsed:.3} s");
}

#[test]
fn radius_independent() {
    let spec = QuadratureSpec::new(8, 8, 4, 4).unwrap();
    let a = topology::charge_at(&spec, 1.0, 1.0).unwrap();
    let b = topology::charge_at(&spec, 2.5, 1.0).unwrap();
    for k in 0..3 {
        assert!((a[k] - b[k]).abs() < 1e-12);
    }
    let flipped = topology::charge_at(&spec, 1.0, -1.0).unwrap();
    for k in 0..3 {
        assert!((flipped[k] + a[k]).abs() < 1e-15);
    }
}

#[test]
fn invalid_inputs() {
    assert_eq!(topology::topological_charge(&QuadratureSpec::default(), 0.0).err(), Some(CoreError::ZeroRadius));
    assert!(matches!(QuadratureSpec::new(1, 16, 8, 8), Err(CoreError::InvalidInput(_))));
}

#[test]
fn pairwise_sum_matches_naive_on_integers() {
    let v: Vec<f64> = (1..=1000).map(|k| k as f64).collect();
    assert_eq!(topology::pairwise_sum(&v), 500500.0);
}
