mod common;

use std::cmp::Ordering;

use common::k;
use kneading_core::admissibility::{is_admissible_unimodal, Cell, KneadingTable};
use kneading_core::{compare, Alphabet, Error, KneadingKind, Sequence, Symbol};

fn unimodal_words(max_len: usize) -> Vec<Sequence> {
    let body = [Symbol::UniL, Symbol::UniR];
    let mut out = Vec::new();
    for len in 1..max_len {
        for code in 0..1usize << len {
            let mut w: Vec<Symbol> = (0..len).map(|i| body[code >> i & 1]).collect();
            w.push(Symbol::UniC);
            out.push(Sequence::periodic(w, Alphabet::Unimodal).unwrap());
        }
    }
    out
}

#[test]
fn unimodal_admissibility_matches_shift_maximality() {
    for x in unimodal_words(9) {
        let brute = (1..x.len()).all(|i| {
            compare(&x.shift(i).unwrap(), &x, None).unwrap() != Ordering::Greater
        });
        assert_eq!(is_admissible_unimodal(&x).unwrap(), brute, "{x}");
    }
}

#[test]
fn full_table_shape() {
    let t = KneadingTable::compute(4).unwrap();
    assert_eq!(t.rows.len(), 23);
    assert!(t.position("RLLB").unwrap() < t.position("RLA").unwrap());
    assert!(t.position("RLMB").unwrap() < t.position("RLMA").unwrap());
    let sorted = t
        .rows
        .windows(2)
        .all(|w| {
            let a = w[0].with_periodic(true).unwrap();
            let b = w[1].with_periodic(true).unwrap();
            compare(&a, &b, None).unwrap() == Ordering::Less
        });
    assert!(sorted);
    for (i, line) in t.cells.iter().enumerate() {
        for (j, &c) in line.iter().enumerate() {
            if c == Cell::Symmetric {
                assert_eq!(i, j);
                assert!(t.datum(i, j).unwrap().is_symmetric());
            }
        }
    }
}

#[test]
fn table_cells_name_their_data() {
    let t = KneadingTable::compute(4).unwrap();
    let ra = t.position("RA").unwrap();
    assert_eq!(t.cells[ra][ra], Cell::Symmetric);
    assert_eq!(t.datum(ra, ra).unwrap().to_string(), "(RA,LB)");
    let rb = t.position("RB").unwrap();
    let d = t.datum(rb, rb).unwrap();
    assert_eq!(d.kind(), KneadingKind::DoublyStable);
    assert_eq!(d.to_string(), "RBLA");
    assert!(t.to_csv().starts_with(",RLLA,RLLB,RLA,"));
}

#[test]
fn parse_errors_report_offsets() {
    assert!(matches!(
        kneading_core::parse_kneading("(RA,LX)"),
        Err(Error::UnknownSymbol { index: 5, .. })
    ));
    assert!(matches!(kneading_core::parse_kneading("(RA,LB"), Err(Error::Syntax { .. })));
    assert_eq!(k("(rlc,rlc)").kind(), KneadingKind::Unimodal);
}
