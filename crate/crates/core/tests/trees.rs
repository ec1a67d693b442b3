mod common;

use common::{explicit_symmetric_datum, k};
use kneading_core::admissibility::{is_admissible_bimodal, is_admissible_unimodal, within_d1_bounds};
use kneading_core::trees::{
    d1_accepts, d1_child, d1_to_unimodal, factor_to_unimodal, generate_tree, u_address, u_at,
    unimodal_to_d1, Family, KneadingTree, NodeValue,
};
use kneading_core::{KneadingData, KneadingKind, Symbol};

fn data(t: &KneadingTree) -> Vec<KneadingData> {
    t.nodes()
        .map(|(_, n)| match &n.value {
            NodeValue::Datum(d) => d.clone(),
            other => panic!("{other}"),
        })
        .collect()
}

#[test]
fn level_counts_agree() {
    let d1 = generate_tree(Family::D1, 6).unwrap();
    let u = generate_tree(Family::U, 6).unwrap();
    assert_eq!(d1.level_counts(), u.level_counts());
    assert_eq!(d1.level_counts(), vec![1, 1, 2, 3, 5, 8, 14]);
}

#[test]
fn generated_nodes_are_admissible() {
    for d in data(&generate_tree(Family::D1, 6).unwrap()) {
        assert!(is_admissible_bimodal(&d).unwrap(), "{d}");
        assert!(within_d1_bounds(&d).unwrap(), "{d}");
        assert!(d.is_symmetric(), "{d}");
    }
    for x in data(&generate_tree(Family::U, 6).unwrap()) {
        assert!(is_admissible_unimodal(x.first()).unwrap(), "{x}");
    }
}

#[test]
fn doubly_stable_nodes_rotate_to_their_conjugate() {
    let t = generate_tree(Family::D1, 6).unwrap();
    for level in (1..=6).step_by(2) {
        for label in t.labels(level) {
            let s = k(&label);
            assert_eq!(s.kind(), KneadingKind::DoublyStable);
            let p = s.split().unwrap();
            assert_eq!(p * 2, s.first().len());
            assert_eq!(s.first().conjugate().unwrap(), s.first().shift(p).unwrap(), "{s}");
        }
    }
}

#[test]
fn children_of_doubly_stable_nodes() {
    let t = generate_tree(Family::D1, 5).unwrap();
    for level in [1, 3, 5] {
        for label in t.labels(level) {
            let parent = k(&label);
            let accepted = |x: Symbol| d1_accepts(&d1_child(&parent, x).unwrap()).unwrap();
            assert!(!accepted(Symbol::L), "{parent}");
            assert!(accepted(Symbol::R), "{parent}");
        }
    }
}

#[test]
fn isomorphism_is_the_letter_map() {
    for x in data(&generate_tree(Family::U, 6).unwrap()) {
        let d = unimodal_to_d1(x.first()).unwrap();
        assert_eq!(d.to_string(), explicit_symmetric_datum(&x.to_string()));
        assert_eq!(&d1_to_unimodal(&d).unwrap(), x.first());
        assert_eq!(u_at(&u_address(x.first()).unwrap()).as_ref(), Some(x.first()));
    }
}

#[test]
fn full_tree_levels() {
    let t = generate_tree(Family::T, 3).unwrap();
    assert_eq!(t.to_text(), "ε\nM R\nMM ML RL RM\nMMM MMR MLR MLM RLM RLR RMR RMM\n");
}

#[test]
fn doubled_and_factor_trees() {
    let f = generate_tree(Family::F, 4).unwrap();
    assert_eq!(f.labels(3), vec!["rlrrcrlrrc", "rllrcrllrc", "rlllcrlllc"]);
    assert_eq!(f.labels(2), vec!["(rlrc,lrcr)", "(rllc,llcr)"]);
    let g = generate_tree(Family::G, 4).unwrap();
    assert_eq!(
        g.to_text(),
        "(C,B)\nUBA\n(UC,MB) (UA,LB)\nURBMC UMBLC ULBLA\n\
         (URC,MRB) (UMA,LUB) (UMC,LRB) (ULC,LMB) (ULA,LLB)\n"
    );
    let u = generate_tree(Family::U, 4).unwrap();
    for (gd, ud) in data(&g).iter().zip(data(&u)) {
        assert_eq!(&factor_to_unimodal(gd).unwrap(), ud.first());
    }
}

#[test]
fn renderings() {
    let t = generate_tree(Family::D1, 2).unwrap();
    let json = t.to_json();
    assert_eq!(json["family"], "D1");
    assert_eq!(json["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(json["nodes"][1]["parent"], 0);
    let dot = t.to_dot();
    assert!(dot.starts_with("digraph D1 {"));
    assert_eq!(dot.matches("->").count(), 3);
}
