use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::admissibility::is_admissible;
use crate::error::{Error, Result};
use crate::kneading::{KneadingData, KneadingKind};
use crate::sequence::{compare, Sequence};

/// Square 0/1 matrix over the intervals of an ordered partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    entries: Vec<Vec<u8>>,
    /// Partition points in increasing order; interval `i` runs from point
    /// `i` to point `i + 1`. Empty for matrices given directly.
    points: Vec<Sequence>,
}

impl TransitionMatrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<TransitionMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
            if r.iter().any(|&x| x > 1) {
                return Err(Error::InvalidArgument(format!("row {i} is not 0/1")));
            }
        }
        Ok(TransitionMatrix {
            entries: rows,
            points: Vec::new(),
        })
    }

    pub(crate) fn with_points(entries: Vec<Vec<u8>>, points: Vec<Sequence>) -> TransitionMatrix {
        debug_assert_eq!(entries.len() + 1, points.len());
        TransitionMatrix { entries, points }
    }

    /// Parse rows such as `0111` or `0 1 1 1`, separated by newlines or `;`.
    pub fn parse(text: &str) -> Result<TransitionMatrix> {
        let mut rows = Vec::new();
        for (r, line) in text
            .split(|c| c == '\n' || c == ';')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
        {
            let mut row = Vec::new();
            for (index, ch) in line.chars().filter(|c| !c.is_whitespace() && *c != ',').enumerate() {
                match ch {
                    '0' => row.push(0),
                    '1' => row.push(1),
                    _ => {
                        return Err(Error::Syntax {
                            offset: index,
                            message: format!("row {r}: expected 0 or 1, found {ch:?}"),
                        })
                    }
                }
            }
            rows.push(row);
        }
        TransitionMatrix::from_rows(rows)
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i][j]
    }

    pub fn points(&self) -> &[Sequence] {
        &self.points
    }

    /// The principal submatrix on `keep` (labels dropped).
    pub fn principal(&self, keep: &[usize]) -> TransitionMatrix {
        TransitionMatrix {
            entries: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
            points: Vec::new(),
        }
    }

    /// Rows and columns reordered so that new index `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Vec<Vec<u8>> {
        perm.iter()
            .map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect())
            .collect()
    }

    /// Every row is a nonempty run of consecutive ones.
    pub fn has_consecutive_ones(&self) -> bool {
        self.entries.iter().all(|r| {
            let first = r.iter().position(|&x| x == 1);
            let last = r.iter().rposition(|&x| x == 1);
            match (first, last) {
                (Some(a), Some(b)) => r[a..=b].iter().all(|&x| x == 1),
                _ => false,
            }
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.entries {
            for x in r {
                write!(out, "{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let labels: Vec<Value> = self
            .points
            .windows(2)
            .map(|w| json!([w[0].to_string(), w[1].to_string()]))
            .collect();
        json!({
            "order": self.order(),
            "labels": labels,
            "entries": self.entries,
        })
    }
}

fn sort_points(points: &mut [Sequence]) -> Result<()> {
    let mut err = None;
    points.sort_by(|a, b| {
        compare(a, b, None).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// All points of the critical orbit(s), in increasing order.
pub fn markov_partition(d: &KneadingData) -> Result<Vec<Sequence>> {
    if !matches!(
        d.kind(),
        KneadingKind::Unimodal | KneadingKind::BimodalPair | KneadingKind::DoublyStable
    ) {
        return Err(Error::TypeMismatch(format!(
            "{d} does not describe critical orbits"
        )));
    }
    if !is_admissible(d)? {
        return Err(Error::NotAdmissible(d.to_string()));
    }
    let mut points = d.orbit_points()?;
    sort_points(&mut points)?;
    for w in points.windows(2) {
        if compare(&w[0], &w[1], None)? == Ordering::Equal {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
    }
    Ok(points)
}

/// Row `i` covers the intervals between the images of the endpoints of
/// interval `i`; each point maps to the point labelled by its shift.
pub fn transition_matrix(d: &KneadingData) -> Result<TransitionMatrix> {
    let points = markov_partition(d)?;
    if points.len() < 2 {
        return Err(Error::DegeneratePartition(format!(
            "{d} has a single partition point"
        )));
    }
    let index: HashMap<&Sequence, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let image = |p: &Sequence| -> Result<usize> {
        let s = p.shift(1)?;
        index
            .get(&s)
            .copied()
            .ok_or_else(|| Error::DegeneratePartition(format!("image of {p} is not a point")))
    };
    let n = points.len() - 1;
    let mut entries = vec![vec![0u8; n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        let (a, b) = (image(&points[i])?, image(&points[i + 1])?);
        for x in &mut row[a.min(b)..a.max(b)] {
            *x = 1;
        }
    }
    Ok(TransitionMatrix::with_points(entries, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::parse_kneading;

    fn tm(s: &str) -> TransitionMatrix {
        transition_matrix(&parse_kneading(s).unwrap()).unwrap()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(tm("(RA,LB)").rows(), &[vec![0, 0, 1], vec![1, 1, 1], vec![1, 0, 0]]);
        assert_eq!(tm("rlc").rows(), &[vec![0, 1], vec![1, 1]]);
        assert_eq!(tm("rc").rows(), &[vec![1]]);
        assert_eq!(tm("RBLA").order(), 3);
    }

    #[test]
    fn example_pair_matrix() {
        let m = tm("(RMMA,LMMB)");
        assert_eq!(
            m.to_text(),
            "0000111\n0000001\n0000010\n0011100\n0100000\n1000000\n1110000\n"
        );
        assert!(m.has_consecutive_ones());
    }

    #[test]
    fn partition_order() {
        let pts = markov_partition(&parse_kneading("(RA,LB)").unwrap()).unwrap();
        let firsts: String = pts.iter().map(|p| p.symbols()[0].to_char()).collect();
        assert_eq!(firsts, "LABR");
        assert!(matches!(
            markov_partition(&parse_kneading("(RLLA,LRB)").unwrap()),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn parse_rows() {
        let m = TransitionMatrix::parse("01;11").unwrap();
        assert_eq!(m.rows(), &[vec![0, 1], vec![1, 1]]);
        assert!(TransitionMatrix::parse("01;1").is_err());
        assert!(TransitionMatrix::parse("02;11").is_err());
    }
}
