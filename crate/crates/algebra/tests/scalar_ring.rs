use hkit_algebra::{AlgebraError, Chart, ExactPoint5, GaussRat, Point5, Rational, ScalarExpr};
use num_complex::Complex64;
use proptest::prelude::*;

#[derive(Clone, Copy, Debug)]
enum Atom {
    X(usize),
    R,
    InvR,
    Axis,
    InvAxis,
}

impl Atom {
    fn expr(self) -> ScalarExpr {
        match self {
            Atom::X(k) => ScalarExpr::x(k),
            Atom::R => ScalarExpr::r(),
            Atom::InvR => ScalarExpr::inv_r(1),
            Atom::Axis => ScalarExpr::axis(Chart::Plus),
            Atom::InvAxis => ScalarExpr::inv_axis(Chart::Plus, 1),
        }
    }

    fn value(self, x: &[f64; 5]) -> f64 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        match self {
            Atom::X(k) => x[k],
            Atom::R => r,
            Atom::InvR => 1.0 / r,
            Atom::Axis => r + x[0],
            Atom::InvAxis => 1.0 / (r + x[0]),
        }
    }
}

/// Sum of integer multiples of products of atoms, evaluated independently in f64.
#[derive(Clone, Debug)]
struct Tree(Vec<(i64, Vec<Atom>)>);

impl Tree {
    fn expr(&self) -> ScalarExpr {
        let mut acc = ScalarExpr::zero();
        for (c, atoms) in &self.0 {
            let mut t = ScalarExpr::int(*c);
            for a in atoms {
                t = &t * &a.expr();
            }
            acc = &acc + &t;
        }
        acc
    }

    fn value(&self, x: &[f64; 5]) -> f64 {
        self.0.iter().map(|(c, atoms)| *c as f64 * atoms.iter().map(|a| a.value(x)).product::<f64>()).sum()
    }
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![(0usize..5).prop_map(Atom::X), Just(Atom::R), Just(Atom::InvR), Just(Atom::Axis), Just(Atom::InvAxis)]
}

fn tree() -> impl Strategy<Value = Tree> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(atom(), 0..4)), 1..4).prop_map(Tree)
}

fn point() -> impl Strategy<Value = [f64; 5]> {
    (0.2f64..1.5, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b, c, d, e)| [a, b, c, d, e])
}

/// Integer points with integer radius.
const PYTHAGOREAN: [[i64; 5]; 8] = [
    [1, 2, 2, 0, 0],
    [2, 3, 6, 0, 0],
    [1, 4, 8, 0, 0],
    [0, 2, 3, 6, 0],
    [1, 1, 1, 1, 0],
    [-1, 1, 1, 1, 0],
    [3, 0, 0, 4, 0],
    [1, 1, 3, 3, 4],
];

fn close(a: Complex64, b: f64) -> bool {
    (a.re - b).abs() <= 1e-9 * (1.0 + b.abs()) && a.im.abs() <= 1e-9 * (1.0 + b.abs())
}

fn sum_sq(from: usize) -> ScalarExpr {
    (from..5).fold(ScalarExpr::zero(), |acc, k| &acc + &ScalarExpr::x(k).pow(2))
}

#[test]
fn radius_relation() {
    assert!(ScalarExpr::r().pow(2).equals(&sum_sq(0)));
    assert!((&(&ScalarExpr::r() - &ScalarExpr::x(0)) * &ScalarExpr::axis(Chart::Plus)).equals(&sum_sq(1)));
    let e = &(&ScalarExpr::x(3) * &ScalarExpr::inv_axis(Chart::Plus, 2)) + &ScalarExpr::r();
    assert!((&e + &e.scale(&GaussRat::int(-1))).is_zero());
}

#[test]
fn derivative_examples() {
    let x0_over_r = &ScalarExpr::x(0) * &ScalarExpr::inv_r(1);
    assert!(ScalarExpr::r().differentiate(0).equals(&x0_over_r));
    let expected = (&(&ScalarExpr::x(1) * &ScalarExpr::inv_r(1)) * &ScalarExpr::inv_axis(Chart::Plus, 2)).scale(&GaussRat::int(-1));
    assert!(ScalarExpr::inv_axis(Chart::Plus, 1).differentiate(1).equals(&expected));
    assert!(ScalarExpr::x(2).differentiate(2).equals(&ScalarExpr::one()));
}

#[test]
fn evaluation_examples() {
    let e = ExactPoint5::from_ints([0, 0, 0, 0, 1]).unwrap();
    let f = &ScalarExpr::inv_r(1) * &ScalarExpr::inv_axis(Chart::Plus, 1);
    assert_eq!(f.evaluate_exact(&e).unwrap(), GaussRat::ONE);
    let g = &ScalarExpr::x(4) * &ScalarExpr::inv_r(3);
    assert_eq!(g.evaluate_exact(&e).unwrap(), GaussRat::ONE);
    let south = ExactPoint5::from_ints([-1, 0, 0, 0, 0]).unwrap();
    assert_eq!(ScalarExpr::inv_axis(Chart::Plus, 1).evaluate_exact(&south), Err(AlgebraError::SingularPoint));
    assert_eq!(ScalarExpr::inv_axis(Chart::Plus, 1).evaluate(&Point5::new([-1.0, 0.0, 0.0, 0.0, 0.0])), Err(AlgebraError::SingularPoint));
    assert_eq!(ExactPoint5::from_ints([1, 1, 0, 0, 0]).err(), Some(AlgebraError::IrrationalRadius));
}

#[test]
fn equality_examples() {
    let a = &(&ScalarExpr::r() - &ScalarExpr::x(0)) * &(&ScalarExpr::inv_r(1) * &ScalarExpr::inv_axis(Chart::Plus, 1));
    let back = &a * &(&ScalarExpr::r() * &ScalarExpr::axis(Chart::Plus));
    assert!(back.equals(&(&ScalarExpr::r() - &ScalarExpr::x(0))));
    assert!(!ScalarExpr::x(0).equals(&ScalarExpr::x(1)));
}

#[test]
fn exact_evaluation_matches_integer_arithmetic() {
    // (x1 + r)^2 / (r (r + x0)) by hand at each Pythagorean point
    let e = &(&ScalarExpr::x(1) + &ScalarExpr::r()).pow(2) * &(&ScalarExpr::inv_r(1) * &ScalarExpr::inv_axis(Chart::Plus, 1));
    for p in PYTHAGOREAN {
        let r = (p.iter().map(|v| v * v).sum::<i64>() as f64).sqrt() as i64;
        let want = Rational::new((p[1] + r).pow(2), r * (r + p[0]));
        assert_eq!(e.evaluate_exact(&ExactPoint5::from_ints(p).unwrap()).unwrap(), GaussRat::real(want), "{p:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in tree(), b in tree(), c in tree()) {
        let (a, b, c) = (a.expr(), b.expr(), c.expr());
        prop_assert!((&(&a * &b) * &c).equals(&(&a * &(&b * &c))));
        prop_assert!((&a * &(&b + &c)).equals(&(&(&a * &b) + &(&a * &c))));
        prop_assert!((&a * &b).equals(&(&b * &a)));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_matches_direct_arithmetic(a in tree(), b in tree(), c in tree(), x in point()) {
        let p = Point5::new(x);
        let lhs = (&(&a.expr() * &b.expr()) + &c.expr()).evaluate(&p).unwrap();
        prop_assert!(close(lhs, a.value(&x) * b.value(&x) + c.value(&x)));
    }

    #[test]
    fn exact_evaluation_is_a_homomorphism(a in tree(), b in tree(), c in tree(), k in 0usize..8) {
        let p = ExactPoint5::from_ints(PYTHAGOREAN[k]).unwrap();
        let (ea, eb, ec) = (a.expr(), b.expr(), c.expr());
        let lhs = (&(&ea * &eb) + &ec).evaluate_exact(&p).unwrap();
        let rhs = &(&ea.evaluate_exact(&p).unwrap() * &eb.evaluate_exact(&p).unwrap()) + &ec.evaluate_exact(&p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_is_idempotent(a in tree(), x in point()) {
        let e = a.expr();
        let n = e.normalize();
        prop_assert!(n.normalize().equals(&n));
        prop_assert!(n.equals(&e));
        let p = Point5::new(x);
        prop_assert!(close(n.evaluate(&p).unwrap(), a.value(&x)));
    }

    #[test]
    fn derivatives_commute(a in tree(), i in 0usize..5, j in 0usize..5) {
        let e = a.expr();
        prop_assert!(e.differentiate(i).differentiate(j).equals(&e.differentiate(j).differentiate(i)));
    }

    #[test]
    fn derivative_matches_central_difference(a in tree(), k in 0usize..5, x in point()) {
        let h = 1e-5;
        let (mut up, mut down) = (x, x);
        up[k] += h;
        down[k] -= h;
        let fd = (a.value(&up) - a.value(&down)) / (2.0 * h);
        let d = a.expr().differentiate(k).evaluate(&Point5::new(x)).unwrap();
        prop_assert!((d.re - fd).abs() <= 1e-5 * (1.0 + fd.abs()), "{} vs {}", d.re, fd);
    }
}
