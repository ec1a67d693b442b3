mod common;

use common::{cluster_product, k};
use kneading_core::admissibility::is_admissible_bimodal;
use kneading_core::star::{associativity_experiment, star, star_type3, unimodal_star, StarRegistry};
use kneading_core::trees::{factor_to_unimodal, generate_tree, Family, NodeValue};
use kneading_core::{Alphabet, Error, KneadingData, Sequence, Symbol};

fn data(f: Family, depth: usize) -> Vec<KneadingData> {
    generate_tree(f, depth)
        .unwrap()
        .nodes()
        .map(|(_, n)| match &n.value {
            NodeValue::Datum(d) => d.clone(),
            other => panic!("{other}"),
        })
        .collect()
}

fn legal_pairs(depth_v: usize, depth_w: usize) -> Vec<(KneadingData, KneadingData)> {
    let us = data(Family::U, depth_w);
    let gs = data(Family::G, depth_w);
    let mut out = Vec::new();
    for v in data(Family::D1, depth_v) {
        for w in if v.split().is_some() { &gs } else { &us } {
            out.push((v.clone(), w.clone()));
        }
    }
    out
}

#[test]
fn products_match_the_cluster_walk() {
    let pairs = legal_pairs(4, 3);
    assert!(pairs.len() > 80);
    for (v, w) in pairs {
        let h = factor_to_unimodal(&w).unwrap();
        let p = star(&v, &w).unwrap().product;
        assert_eq!(p.to_string(), cluster_product(&v, &h), "{v} * {w}");
    }
}

#[test]
fn products_stay_symmetric_and_admissible() {
    for (v, w) in legal_pairs(4, 3) {
        let p = star(&v, &w).unwrap().product;
        assert!(p.is_symmetric(), "{v} * {w} = {p}");
        assert!(is_admissible_bimodal(&p).unwrap(), "{v} * {w} = {p}");
        // conjugating the whole product gives the same datum back
        let (a, b) = p.critical_sequences().unwrap();
        assert_eq!(a.conjugate().unwrap(), b);
    }
}

#[test]
fn length_law() {
    for (v, w) in legal_pairs(4, 3) {
        let x = factor_to_unimodal(&w).unwrap().len();
        let p = star(&v, &w).unwrap().product;
        let points = |d: &KneadingData| d.first().len() + d.second().map_or(0, |q| q.len());
        assert_eq!(points(&p), points(&v) * x, "{v} * {w}");
    }
}

#[test]
fn shifted_second_component() {
    let p = star(&k("RBLA"), &k("(UA,LB)")).unwrap().product;
    let direct = star_type3(&k("RBLA"), &k("(UA,LB)")).unwrap();
    assert_eq!(p, direct);
    assert_eq!(p.second().unwrap().to_string(), "LLRMLMRB");
    let inner = Sequence::parse("BLLRMLMR", Alphabet::Bimodal, false).unwrap();
    assert_eq!(inner.shift(1).unwrap().to_string(), "LLRMLMR");
}

#[test]
fn registry_dispatch() {
    let r = StarRegistry::default();
    assert_eq!(r.names(), vec!["type-1", "type-2", "type-3"]);
    assert_eq!(star(&k("(RA,LB)"), &k("rlc")).unwrap().rule, "type-1");
    assert_eq!(star(&k("RBLA"), &k("UBA")).unwrap().rule, "type-2");
    assert_eq!(star(&k("RBLA"), &k("(C,B)")).unwrap().rule, "type-3");
}

#[test]
fn rejected_inputs() {
    assert!(matches!(star(&k("RBLA"), &k("rlc")), Err(Error::TypeMismatch(_))));
    assert!(matches!(star(&k("(RA,LB)"), &k("UBA")), Err(Error::TypeMismatch(_))));
    assert!(matches!(star(&k("RBLA"), &k("CC")), Err(Error::NotAFactor(_))));
    assert!(star(&k("(RMMA,LMMB)"), &k("rrlc")).is_err());
}

#[test]
fn unimodal_products_and_associativity() {
    let u = |s: &str| Sequence::parse(s, Alphabet::Unimodal, true).unwrap();
    assert_eq!(unimodal_star(&u("rc"), &u("rc")).unwrap().to_string(), "rlrc");
    assert_eq!(unimodal_star(&u("rc"), &u("rlc")).unwrap().to_string(), "rlrrrc");
    let (left, right) = associativity_experiment(&k("(RA,LB)"), &u("rc"), &u("rc")).unwrap();
    assert_eq!(left, right);
    assert_eq!(left.first().symbols().last(), Some(&Symbol::A));
}
