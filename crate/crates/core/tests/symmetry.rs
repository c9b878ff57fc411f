use std::time::Instant;

use hkit_core::casimir::{Casimir, CheckMode};
use hkit_core::symmetry::{Relation, SymmetryOperators};
use hkit_core::Units;

#[test]
fn all_relations_hold_exactly() {
    let ops = SymmetryOperators::build(&Units::default());
    let start = Instant::now();
    for rel in Relation::ALL {
        let out = ops.verify(rel);
        assert!(out.passed(), "{}: {:?}", rel.name(), out.first_failure);
        assert!(out.cases > 0);
    }
    assert!(start.elapsed().as_secs_f64() < 60.0);
}

#[test]
fn relation_names_round_trip() {
    for rel in Relation::ALL {
        assert_eq!(Relation::parse(rel.name()), Some(rel));
    }
    assert_eq!(Relation::parse("nope"), None);
}

#[test]
fn flat_limit_keeps_angular_momentum_algebra() {
    let ops = SymmetryOperators::build_flat(&Units::default());
    for rel in [Relation::PiX, Relation::PiPi, Relation::LX, Relation::LPi, Relation::LL] {
        assert!(ops.verify(rel).passed(), "{}", rel.name());
    }
}

#[test]
fn quadratic_and_cubic_casimirs_exact() {
    let ops = SymmetryOperators::build(&Units::default());
    for c in [Casimir::C2, Casimir::C3] {
        let out = ops.check_casimir(c, 2_000_000, 1, (1, 1));
        assert_eq!(out.mode, CheckMode::Exact);
        assert!(out.passed && out.residual == 0.0, "{}: {}", c.name(), out.note);
    }
}
