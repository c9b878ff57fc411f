use hkit_algebra::{Chart, GaussRat, Point5, Rational};
use hkit_core::gauge::{self, mat_mul, tau, FieldSource, FieldTensor, GaugePotential};
use hkit_core::gauge_numeric;
use hkit_core::CoreError;
use proptest::prelude::*;

fn eps(a: usize, b: usize, c: usize) -> f64 {
    ((b as i64 - a as i64) * (c as i64 - a as i64) * (c as i64 - b as i64)).signum() as f64
}

/// Field strength from central differences of the numeric potential.
fn field_by_differences(x: [f64; 5]) -> [[[f64; 5]; 5]; 3] {
    let h = 1e-6;
    let pot = |y: [f64; 5]| GaugePotential::at(Chart::Plus, &Point5::new(y)).unwrap();
    let mut d = [[[0.0; 5]; 5]; 3];
    for i in 0..5 {
        let (mut up, mut down) = (x, x);
        up[i] += h;
        down[i] -= h;
        let (pu, pd) = (pot(up), pot(down));
        for a in 0..3 {
            for j in 0..5 {
                d[a][i][j] = (pu[a][j] - pd[a][j]) / (2.0 * h);
            }
        }
    }
    let p = pot(x);
    std::array::from_fn(|a| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut f = d[a][i][j] - d[a][j][i];
                for b in 0..3 {
                    for c in 0..3 {
                        f += eps(a + 1, b + 1, c + 1) * p[b][i] * p[c][j];
                    }
                }
                f
            })
        })
    })
}

fn regular_point() -> impl Strategy<Value = [f64; 5]> {
    (0.0f64..1.0, prop::array::uniform4(-1.0f64..1.0)).prop_map(|(x0, t)| [x0, t[0], t[1], t[2], t[3]])
}

#[test]
fn tau_examples() {
    let t = tau();
    let sq = mat_mul(&t[0], &t[0]);
    for i in 0..5 {
        for j in 0..5 {
            let want = if i == j && i > 0 { GaussRat::frac(1, 4) } else { GaussRat::ZERO };
            assert_eq!(sq[i][j], want, "({i},{j})");
        }
    }
    let ab = mat_mul(&t[0], &t[1]);
    let ba = mat_mul(&t[1], &t[0]);
    for i in 0..5 {
        for j in 0..5 {
            // 4 (tau1 tau2 - tau2 tau1) = 2 (2i tau3)
            let lhs = &GaussRat::int(4) * &(&ab[i][j] - &ba[i][j]);
            assert_eq!(lhs, &GaussRat::imag(Rational::from_int(4)) * &t[2][i][j]);
        }
    }
    assert_eq!(gauge::tau_coupling().unwrap(), Rational::ONE);
}

#[test]
fn potential_examples() {
    let a = GaugePotential::at(Chart::Plus, &Point5::new([0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
    assert_eq!(a, [[0.0, 1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0, 0.0]]);
    assert!(matches!(GaugePotential::at(Chart::Plus, &Point5::new([-1.0, 0.0, 0.0, 0.0, 0.0])), Err(CoreError::SingularAxis)));
    assert!(matches!(GaugePotential::at(Chart::Minus, &Point5::new([1.0, 0.0, 0.0, 0.0, 0.0])), Err(CoreError::SingularAxis)));
}

#[test]
fn exact_gauge_identities() {
    for report in [
        gauge::tau_algebra_check(),
        gauge::tau_product_check(),
        gauge::tau_contraction_check(),
        gauge::tau_potential_check(),
        gauge::orthogonality_check(Chart::Plus),
        gauge::orthogonality_check(Chart::Minus),
    ] {
        assert!(report.pass && report.residual == 0.0, "{}: {}", report.relation, report.detail);
    }
}

#[test]
fn field_examples() {
    let f = FieldTensor::build(FieldSource::Definition, Chart::Plus).unwrap();
    let v = f.get(1, 0, 1).evaluate(&Point5::new([0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
    assert_eq!((v.re, v.im), (-1.0, 0.0));
    for report in [
        gauge::antisymmetry_check(&f, FieldSource::Definition),
        gauge::field_square_check(&f),
        gauge::field_product_check(&f),
        gauge::closed_form_check(&f),
    ] {
        assert!(report.pass && report.residual == 0.0, "{}: {}", report.relation, report.detail);
    }
    assert!(matches!(FieldTensor::build(FieldSource::ClosedForm, Chart::Minus), Err(CoreError::Unsupported(_))));
}

#[test]
fn cartesian_audit_itemizes_mismatches() {
    let f = FieldTensor::build(FieldSource::Definition, Chart::Plus).unwrap();
    let audit = gauge::cartesian_audit(&f);
    assert_eq!(audit.len(), 30);
    let bad: Vec<(&str, &str)> = audit.iter().filter(|e| !e.agrees).map(|e| (e.label.as_str(), e.note.as_str())).collect();
    assert_eq!(bad, vec![("F^1_34", "form differs"), ("F^2_01", "sign differs"), ("F^2_02", "sign differs")]);
    // numeric oracle: each disputed entry of the definition agrees with finite differences
    let x = [0.3, 0.5, -0.7, 0.2, 0.9];
    let fd = field_by_differences(x);
    for e in audit.iter().filter(|e| !e.agrees) {
        let (a, i, j) = (e.label.as_bytes()[2] - b'0', e.label.as_bytes()[4] - b'0', e.label.as_bytes()[5] - b'0');
        let v = f.get(a as usize, i as usize, j as usize).evaluate(&Point5::new(x)).unwrap().re;
        assert!((v - fd[a as usize - 1][i as usize][j as usize]).abs() < 1e-6, "{}", e.label);
    }
}

#[test]
fn chart_transformation() {
    assert_eq!(gauge_numeric::gauge_transform_residual(&[0.0, 1.0, 0.0, 0.0, 0.0]).err(), Some(CoreError::UndefinedAngle));
    assert!(gauge_numeric::gauge_transform_residual(&[0.0, 1.0, 0.0, 1.0, 0.0]).unwrap() < 1e-10);
    assert_eq!(gauge_numeric::gauge_transform_residual(&[-1.0, 0.0, 0.0, 0.0, 0.0]).err(), Some(CoreError::SingularAxis));
    let report = gauge_numeric::gauge_transform_check(100, 11);
    assert!(report.pass, "{}", report.residual);
}

#[test]
fn angular_generators() {
    let rows = gauge_numeric::su2_trig_check(50, 3);
    assert_eq!(rows.len(), 2);
    assert!(rows[0].pass && rows[0].residual < 1e-7);
    assert!(!rows[1].pass && rows[1].residual > 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn definition_matches_finite_differences(x in regular_point()) {
        let f = FieldTensor::build(FieldSource::Definition, Chart::Plus).unwrap().eval(&Point5::new(x)).unwrap();
        let fd = field_by_differences(x);
        let r2 = x.iter().map(|v| v * v).sum::<f64>();
        for a in 0..3 {
            for i in 0..5 {
                for j in 0..5 {
                    prop_assert!((f[a][i][j].re - fd[a][i][j]).abs() < 1e-6 / r2, "{a}{i}{j}");
                }
            }
        }
        // F^a_ij F^b_ij = 4 / r^4 delta_ab on the numeric tensor
        for a in 0..3 {
            for b in 0..3 {
                let s: f64 = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).map(|(i, j)| fd[a][i][j] * fd[b][i][j]).sum();
                let want = if a == b { 4.0 / (r2 * r2) } else { 0.0 };
                prop_assert!((s - want).abs() < 1e-5 * want.max(1.0 / (r2 * r2)));
            }
        }
    }

    #[test]
    fn potentials_are_transverse(x in regular_point()) {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let a = GaugePotential::at(Chart::Plus, &Point5::new(x)).unwrap();
        for p in 0..3 {
            prop_assert!((0..5).map(|j| a[p][j] * x[j]).sum::<f64>().abs() < 1e-12);
            for q in 0..3 {
                let s: f64 = (0..5).map(|j| a[p][j] * a[q][j]).sum();
                let want = if p == q { (r - x[0]) / (r * r * (r + x[0])) } else { 0.0 };
                prop_assert!((s - want).abs() < 1e-10 * (1.0 + want));
            }
        }
    }
}
