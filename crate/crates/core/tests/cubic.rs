mod common;

use common::k;
use kneading_core::cubic::{monotonicity_probe, realize, CubicMap, DEFAULT_EPS, DEFAULT_SCAN};
use kneading_core::trees::{generate_tree, Family, NodeValue};
use kneading_core::Error;
use proptest::prelude::*;

proptest! {
    #[test]
    fn map_is_odd(a in 1.0001f64..4.0, x in -1.0f64..1.0) {
        let f = CubicMap::new(a).unwrap();
        prop_assert_eq!(f.evaluate(-x).unwrap(), -f.evaluate(x).unwrap());
        prop_assert!(f.evaluate(x).unwrap().abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn critical_points_are_stationary(a in 1.01f64..4.0) {
        let f = CubicMap::new(a).unwrap();
        let (c1, c2) = f.critical_points();
        let slope = |x: f64| 3.0 * a * x * x + 1.0 - a;
        prop_assert!(slope(c1).abs() < 1e-12 && slope(c2).abs() < 1e-12);
        prop_assert_eq!(c1, -c2);
    }
}

#[test]
fn orbit_of_c1_near_the_bimodal_threshold() {
    let f = CubicMap::new(1.0 + 1e-6).unwrap();
    let c1 = f.critical_points().0;
    let it = f.itinerary(c1, 20, DEFAULT_EPS).unwrap();
    assert!(it.to_string().chars().all(|c| c == 'M'));
}

#[test]
fn deeper_nodes_realize() {
    let t = generate_tree(Family::D1, 5).unwrap();
    for (_, node) in t.nodes() {
        let NodeValue::Datum(d) = &node.value else { unreachable!() };
        let r = realize(d, 1e-12, DEFAULT_SCAN).unwrap();
        assert!(r.defect.abs() < 1e-12, "{d}");
        assert_eq!(r.c2_itinerary, r.itinerary.conjugate().unwrap());
    }
}

#[test]
fn realized_parameters_increase_along_a_branch() {
    let a = |s: &str| realize(&k(s), 1e-12, DEFAULT_SCAN).unwrap().a;
    assert!(a("(RA,LB)") < a("RMBLMA"));
    assert!(a("RMBLMA") < a("(RMMA,LMMB)"));
}

#[test]
fn unrealizable_targets() {
    assert!(matches!(realize(&k("(LA,RB)"), 1e-12, 300), Err(Error::NoBracket(_))));
    assert!(matches!(realize(&k("RBRA"), 1e-12, 300), Err(Error::TypeMismatch(_))));
    assert!(matches!(realize(&k("(RA,LB)"), 0.0, 300), Err(Error::InvalidArgument(_))));
}

#[test]
fn monotonicity_diagnostic() {
    let report = monotonicity_probe(30_000, 12).unwrap();
    assert!(report.compared > 20_000);
    if !report.violations.is_empty() {
        eprintln!(
            "kneading sequence decreased at {} of {} grid steps",
            report.violations.len(),
            report.compared
        );
    }
}
