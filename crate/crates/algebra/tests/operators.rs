use hkit_algebra::isospin::pbw_reduce;
use hkit_algebra::{GaussRat, IsoField, IsoWord, OperatorExpr, Rational, ScalarExpr};
use num_complex::Complex64;
use proptest::prelude::*;

type M = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Spin-1/2 generators sigma/2.
fn spin_half(g: usize) -> M {
    let z = c(0.0, 0.0);
    match g {
        1 => vec![vec![z, c(0.5, 0.0)], vec![c(0.5, 0.0), z]],
        2 => vec![vec![z, c(0.0, -0.5)], vec![c(0.0, 0.5), z]],
        _ => vec![vec![c(0.5, 0.0), z], vec![z, c(-0.5, 0.0)]],
    }
}

/// Spin-1 generators (T_a)_bc = -i eps_abc.
fn spin_one(g: usize) -> M {
    let mut m = vec![vec![c(0.0, 0.0); 3]; 3];
    for b in 0..3 {
        for d in 0..3 {
            let a = g - 1;
            let eps = if a == b || b == d || a == d { 0.0 } else if (a, b, d) == (0, 1, 2) || (a, b, d) == (1, 2, 0) || (a, b, d) == (2, 0, 1) { 1.0 } else { -1.0 };
            m[b][d] = c(0.0, -eps);
        }
    }
    m
}

fn identity(n: usize) -> M {
    (0..n).map(|i| (0..n).map(|j| c((i == j) as u8 as f64, 0.0)).collect()).collect()
}

fn mul(a: &M, b: &M) -> M {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn product(letters: &[usize], rep: fn(usize) -> M, n: usize) -> M {
    letters.iter().fold(identity(n), |acc, &g| mul(&acc, &rep(g)))
}

fn represent(terms: &[(GaussRat, IsoWord)], rep: fn(usize) -> M, n: usize) -> M {
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for (k, w) in terms {
        let m = product(&w.letters(), rep, n);
        for i in 0..n {
            for j in 0..n {
                out[i][j] += k.to_complex() * m[i][j];
            }
        }
    }
    out
}

fn max_diff(a: &M, b: &M) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn x(k: usize) -> OperatorExpr {
    OperatorExpr::scalar(ScalarExpr::x(k))
}

fn is_zero(a: &OperatorExpr, b: &OperatorExpr) -> bool {
    (a - b).is_zero()
}

#[test]
fn leibniz_rule() {
    let lhs = OperatorExpr::deriv(1).compose(&x(1)).unwrap();
    let rhs = &(&x(1) * &OperatorExpr::deriv(1)) + &OperatorExpr::identity();
    assert!(is_zero(&lhs, &rhs));
    assert!(is_zero(&OperatorExpr::deriv(1).commutator(&x(1)).unwrap(), &OperatorExpr::identity()));
}

#[test]
fn pbw_reordering() {
    let t = OperatorExpr::generator;
    let lhs = t(2).compose(&t(1)).unwrap();
    let rhs = &t(1).compose(&t(2)).unwrap() - &OperatorExpr::constant(GaussRat::I).compose(&t(3)).unwrap();
    assert!(is_zero(&lhs, &rhs));
    // [T3, T1] = i T2
    let rhs = &t(1).compose(&t(3)).unwrap() + &OperatorExpr::constant(GaussRat::I).compose(&t(2)).unwrap();
    assert!(is_zero(&t(3).compose(&t(1)).unwrap(), &rhs));
    let m = |g| spin_one(g);
    let mut want = mul(&m(1), &m(3));
    let t2 = m(2);
    for i in 0..3 {
        for j in 0..3 {
            want[i][j] += c(0.0, 1.0) * t2[i][j];
        }
    }
    assert!(max_diff(&product(&[3, 1], spin_one, 3), &want) < 1e-15);
    assert_eq!(pbw_reduce(&[2, 2]), vec![(GaussRat::ONE, IsoWord::new(0, 2, 0))]);
}

#[test]
fn identity_and_casimir() {
    let a = &(&x(2) * &OperatorExpr::deriv(3)) + &OperatorExpr::generator(1);
    assert!(is_zero(&OperatorExpr::identity().compose(&a).unwrap(), &a));
    for g in 1..=3 {
        assert!(OperatorExpr::casimir().commutator(&OperatorExpr::generator(g)).unwrap().is_zero());
    }
}

#[test]
fn cubic_word_against_matrices() {
    let terms = pbw_reduce(&[3, 2, 1]);
    assert!(terms.len() <= 6);
    assert!(max_diff(&represent(&terms, spin_half, 2), &product(&[3, 2, 1], spin_half, 2)) < 1e-14);
    assert!(max_diff(&represent(&terms, spin_one, 3), &product(&[3, 2, 1], spin_one, 3)) < 1e-14);
}

#[test]
fn application() {
    let mut f = IsoField::new();
    f.insert(IsoWord::ONE, ScalarExpr::r());
    let got = OperatorExpr::deriv(0).apply(&f).unwrap();
    assert!(got[&IsoWord::ONE].equals(&(&ScalarExpr::x(0) * &ScalarExpr::inv_r(1))));
    let mut g = IsoField::new();
    g.insert(IsoWord::ONE, ScalarExpr::x(0).pow(2));
    let got = (&x(0) * &OperatorExpr::deriv(0)).apply(&g).unwrap();
    assert!(got[&IsoWord::ONE].equals(&ScalarExpr::x(0).pow(2).scale(&GaussRat::int(2))));

    // T^2 acting on T1: coefficients checked against the spin-1/2 image
    let mut h = IsoField::new();
    h.insert(IsoWord::generator(1), ScalarExpr::one());
    let got = OperatorExpr::casimir().apply(&h).unwrap();
    let terms: Vec<(GaussRat, IsoWord)> = got.iter().map(|(w, s)| (s.as_constant().unwrap(), *w)).collect();
    let mut want = spin_half(1);
    want.iter_mut().flatten().for_each(|v| *v *= 0.75);
    assert!(max_diff(&represent(&terms, spin_half, 2), &want) < 1e-14);
}

#[test]
fn momentum_commutator() {
    // pi_i = -i d_i with hbar = 1: [pi_i, x_j] = -i delta_ij
    let minus_i = GaussRat::imag(Rational::from_int(-1));
    for i in 0..5 {
        let pi = OperatorExpr::deriv(i).scale(&minus_i);
        for j in 0..5 {
            let got = pi.commutator(&x(j)).unwrap();
            let want = if i == j { OperatorExpr::constant(minus_i.clone()) } else { OperatorExpr::zero() };
            assert!(is_zero(&got, &want));
        }
    }
}

fn letters() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 0..6)
}

fn first_order() -> impl Strategy<Value = OperatorExpr> {
    (0usize..5, 0usize..5, 1usize..=3, -3i64..=3).prop_map(|(i, k, g, n)| {
        let a = &x(i) * &OperatorExpr::deriv(k);
        &a + &OperatorExpr::generator(g).scale(&GaussRat::int(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pbw_matches_representations(w in letters()) {
        let terms = pbw_reduce(&w);
        prop_assert!(max_diff(&represent(&terms, spin_half, 2), &product(&w, spin_half, 2)) < 1e-12);
        prop_assert!(max_diff(&represent(&terms, spin_one, 3), &product(&w, spin_one, 3)) < 1e-12);
    }

    #[test]
    fn composition_is_associative(a in first_order(), b in first_order(), c in first_order()) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(is_zero(&l, &r));
    }

    #[test]
    fn jacobi_identity(a in first_order(), b in first_order(), c in first_order()) {
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }
}
