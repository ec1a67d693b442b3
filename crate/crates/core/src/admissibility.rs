//! Admissibility of kneading data and the grid of admissible bimodal pairs.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kneading::{KneadingData, KneadingKind};
use crate::sequence::{compare, Sequence};
use crate::symbol::{Alphabet, Symbol};

/// Every shift of the unimodal block is at most the block itself.
pub fn is_admissible_unimodal(x: &Sequence) -> Result<bool> {
    if x.alphabet() != Alphabet::Unimodal {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Unimodal,
            found: x.alphabet(),
        });
    }
    if x.last() != Some(Symbol::UniC) {
        return Err(Error::MalformedKneading(format!("{x} does not end in c")));
    }
    let x = x.with_periodic(true)?;
    for w in x.rotations() {
        if compare(&w, &x, None)? == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every point of both critical orbits lies between `Q` and `P`.
pub fn is_admissible_bimodal(d: &KneadingData) -> Result<bool> {
    if !d.is_bimodal() {
        return Err(Error::MalformedKneading(format!(
            "{d} is not bimodal kneading data"
        )));
    }
    let (p, q) = d.critical_sequences()?;
    for w in d.orbit_points()? {
        if compare(&w, &p, None)? == Ordering::Greater || compare(&w, &q, None)? == Ordering::Less
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Admissibility for either a unimodal or a bimodal datum.
pub fn is_admissible(d: &KneadingData) -> Result<bool> {
    match d.kind() {
        KneadingKind::Unimodal => is_admissible_unimodal(d.first()),
        _ => is_admissible_bimodal(d),
    }
}

fn compare_eventually_constant(p: &Sequence, prefix: &[Symbol], tail: Symbol) -> Result<Ordering> {
    let n = 2 * p.len() + prefix.len() + 2;
    let mut symbols = prefix.to_vec();
    symbols.resize(n, tail);
    let bound = Sequence::finite(symbols, Alphabet::Bimodal)?;
    compare(p, &bound, Some(n))
}

/// Whether the `c₁` sequence lies between `M^∞` and `RM^∞`, the region
/// spanned by the tree of symmetric data rooted at `(RA,LB)`.
pub fn within_d1_bounds(d: &KneadingData) -> Result<bool> {
    let (p, _) = d.critical_sequences()?;
    Ok(compare_eventually_constant(&p, &[], Symbol::M)? != Ordering::Less
        && compare_eventually_constant(&p, &[Symbol::R], Symbol::M)? != Ordering::Greater)
}

/// The datum formed by a `c₁` word and a `c₂` word, if their terminal
/// symbols fit together: `(..A, ..B)` is a pair of stable orbits, `..B`
/// followed by `..A` is one doubly stable orbit.
pub fn combine(c1: &Sequence, c2: &Sequence) -> Option<KneadingData> {
    match (c1.last()?, c2.last()?) {
        (Symbol::A, Symbol::B) => KneadingData::pair(c1.clone(), c2.clone()).ok(),
        (Symbol::B, Symbol::A) => {
            KneadingData::doubly_stable(c1.concat(c2, true).ok()?).ok()
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Empty,
    Admissible,
    /// Admissible and invariant under `x -> -x` (only on the diagonal).
    Symmetric,
}

impl Cell {
    pub fn is_admissible(self) -> bool {
        self != Cell::Empty
    }

    fn mark(self) -> &'static str {
        match self {
            Cell::Empty => "",
            Cell::Admissible => "*",
            Cell::Symmetric => "@",
        }
    }
}

/// Grid of admissible data: row `i` is a `c₁` word, column `j` pairs it
/// with the conjugate of row word `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KneadingTable {
    pub rows: Vec<Sequence>,
    pub cells: Vec<Vec<Cell>>,
}

fn candidate_words(max_len: usize) -> Vec<Sequence> {
    let interior = [Symbol::L, Symbol::M, Symbol::R];
    let mut words = Vec::new();
    for len in 2..=max_len {
        for code in 0..3usize.pow(len as u32 - 1) {
            let mut digits = code;
            let mut w = vec![Symbol::L; len - 1];
            for slot in w.iter_mut().rev() {
                *slot = interior[digits % 3];
                digits /= 3;
            }
            for end in [Symbol::A, Symbol::B] {
                let mut word = w.clone();
                word.push(end);
                words.push(Sequence::finite(word, Alphabet::Bimodal).expect("bimodal word"));
            }
        }
    }
    words
}

fn cell_value(row: &Sequence, col_word: &Sequence, diagonal: bool) -> Result<Cell> {
    let c2 = col_word.conjugate()?;
    let Some(d) = combine(row, &c2) else {
        return Ok(Cell::Empty);
    };
    Ok(if !is_admissible_bimodal(&d)? {
        Cell::Empty
    } else if diagonal && d.is_symmetric() {
        Cell::Symmetric
    } else {
        Cell::Admissible
    })
}

fn sort_words(words: &mut [Sequence]) -> Result<()> {
    let periodic: Vec<Sequence> = words
        .iter()
        .map(|w| w.with_periodic(true))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..words.len()).collect();
    let mut err = None;
    order.sort_by(|&a, &b| {
        compare(&periodic[a], &periodic[b], None).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let sorted: Vec<Sequence> = order.iter().map(|&i| words[i].clone()).collect();
    words.clone_from_slice(&sorted);
    Ok(())
}

impl KneadingTable {
    /// All words of length `2..=max_len` (interior symbols `L M R`, final
    /// `A` or `B`) that take part in at least one admissible datum with
    /// another such word, in symbolic order.
    pub fn compute(max_len: usize) -> Result<KneadingTable> {
        if max_len < 2 {
            return Err(Error::InvalidArgument(format!(
                "max_len must be at least 2, got {max_len}"
            )));
        }
        let words = candidate_words(max_len);
        let mut rows = Vec::new();
        for w in &words {
            let mut used = false;
            for v in &words {
                if cell_value(w, v, false)?.is_admissible() {
                    used = true;
                    break;
                }
            }
            if used {
                rows.push(w.clone());
            }
        }
        sort_words(&mut rows)?;
        KneadingTable::with_rows(rows)
    }

    /// The grid over an explicit list of row words, kept in the given order.
    pub fn with_rows(rows: Vec<Sequence>) -> Result<KneadingTable> {
        for r in &rows {
            if r.alphabet() != Alphabet::Bimodal {
                return Err(Error::AlphabetMismatch {
                    expected: Alphabet::Bimodal,
                    found: r.alphabet(),
                });
            }
        }
        let rows: Vec<Sequence> = rows
            .into_iter()
            .map(|r| r.with_periodic(false))
            .collect::<Result<_>>()?;
        let mut cells = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let line = rows
                .iter()
                .enumerate()
                .map(|(j, c)| cell_value(r, c, i == j))
                .collect::<Result<Vec<_>>>()?;
            cells.push(line);
        }
        Ok(KneadingTable { rows, cells })
    }

    pub fn labels(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.to_string()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.to_string() == label)
    }

    /// The admissible datum behind cell `(i, j)`, if any.
    pub fn datum(&self, i: usize, j: usize) -> Option<KneadingData> {
        if !self.cells[i][j].is_admissible() {
            return None;
        }
        combine(&self.rows[i], &self.rows[j].conjugate().ok()?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            write!(out, ",{r}").unwrap();
        }
        out.push('\n');
        for (r, line) in self.rows.iter().zip(&self.cells) {
            out.push_str(&r.to_string());
            for c in line {
                out.push(',');
                out.push_str(c.mark());
            }
            out.push('\n');
        }
        out
    }

    /// One line per row, `.` for an empty cell.
    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (r, line) in self.rows.iter().zip(&self.cells) {
            write!(out, "{:>width$} ", r.to_string()).unwrap();
            for c in line {
                out.push(' ');
                out.push(match c {
                    Cell::Empty => '.',
                    Cell::Admissible => '*',
                    Cell::Symmetric => '@',
                });
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::parse_kneading;

    fn uni(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Unimodal, true).unwrap()
    }

    #[test]
    fn unimodal_examples() {
        assert!(is_admissible_unimodal(&uni("rlc")).unwrap());
        assert!(is_admissible_unimodal(&uni("rllc")).unwrap());
        assert!(is_admissible_unimodal(&uni("rc")).unwrap());
        assert!(!is_admissible_unimodal(&uni("rrlc")).unwrap());
        assert!(matches!(
            is_admissible_unimodal(&uni("rcl")),
            Err(Error::MalformedKneading(_))
        ));
    }

    #[test]
    fn bimodal_examples() {
        let adm = |s: &str| is_admissible_bimodal(&parse_kneading(s).unwrap()).unwrap();
        assert!(adm("(RA,LB)"));
        assert!(adm("(RLLA,LLLB)"));
        assert!(!adm("(RLLA,LRB)"));
        assert!(adm("RBLA"));
        assert!(adm("RMBLMA"));
        assert!(matches!(
            is_admissible_bimodal(&parse_kneading("rlc").unwrap()),
            Err(Error::MalformedKneading(_))
        ));
    }

    #[test]
    fn d1_bounds() {
        let within = |s: &str| within_d1_bounds(&parse_kneading(s).unwrap()).unwrap();
        assert!(within("(RA,LB)"));
        assert!(within("(RMMA,LMMB)"));
        assert!(!within("RBLA"));
        assert!(!within("(RRA,LLB)"));
    }

    #[test]
    fn candidates_cover_all_words() {
        // 3^(n-1) interiors times two endings
        assert_eq!(candidate_words(4).len(), 2 * (3 + 9 + 27));
    }

    #[test]
    fn small_table() {
        let t = KneadingTable::compute(2).unwrap();
        assert_eq!(t.labels(), vec!["RA", "RB"]);
        assert_eq!(t.cells[0][0], Cell::Symmetric);
    }
}
