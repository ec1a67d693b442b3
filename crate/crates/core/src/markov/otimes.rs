//! Transition matrix of a star product assembled from the factors'
//! matrices.
//!
//! Every point of the left factor's orbit blows up into a cluster of `k`
//! points, one per point of the unimodal right factor. Away from the
//! critical clusters the map carries a cluster onto the next one rigidly
//! (preserving or reversing order); a critical cluster is mapped by the
//! right factor's own dynamics.

use std::collections::HashMap;

use super::matrix::{markov_partition, transition_matrix, TransitionMatrix};
use crate::error::{Error, Result};
use crate::kneading::{KneadingData, KneadingKind};
use crate::sequence::Sequence;
use crate::star::star;
use crate::symbol::{Alphabet, Symbol};
use crate::trees::factor_to_unimodal;

fn successor_map(points: &[Sequence]) -> Result<Vec<usize>> {
    let index: HashMap<&Sequence, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    points
        .iter()
        .map(|p| {
            let s = p.shift(1)?;
            index
                .get(&s)
                .copied()
                .ok_or_else(|| Error::DegeneratePartition(format!("image of {p} is not a point")))
        })
        .collect()
}

fn first_symbol(p: &Sequence) -> Symbol {
    p.symbols()[0]
}

/// Orientation (`+1` or `-1`) of the cluster at each orbit point: `+1`
/// right after `A`, `-1` right after `B`, then multiplied by the sign of
/// each lap passed.
pub fn orbit_orientation(points: &[Sequence]) -> Result<Vec<i8>> {
    let succ = successor_map(points)?;
    let mut orient = vec![0i8; points.len()];
    for (i, p) in points.iter().enumerate() {
        let mut o = match first_symbol(p) {
            Symbol::A => 1,
            Symbol::B => -1,
            _ => continue,
        };
        let mut j = succ[i];
        loop {
            orient[j] = o;
            let s = first_symbol(&points[j]);
            if s.is_critical() {
                break;
            }
            o *= s.epsilon().as_i8();
            j = succ[j];
        }
    }
    if let Some(i) = orient.iter().position(|&o| o == 0) {
        return Err(Error::DegeneratePartition(format!(
            "{} is not on a critical orbit",
            points[i]
        )));
    }
    Ok(orient)
}

fn legal_pair(v: &KneadingData, w: &KneadingData) -> Result<Sequence> {
    let legal = v.is_bimodal()
        && v.is_symmetric()
        && matches!(
            (v.kind(), w.kind()),
            (KneadingKind::BimodalPair, KneadingKind::Unimodal)
                | (KneadingKind::DoublyStable, KneadingKind::FactorWord)
                | (KneadingKind::DoublyStable, KneadingKind::FactorPair)
        );
    if !legal {
        return Err(Error::IllegalFactorPair(format!("{v} with {w}")));
    }
    factor_to_unimodal(w).map_err(|e| Error::IllegalFactorPair(format!("{v} with {w}: {e}")))
}

struct Clusters<'a> {
    k: usize,
    v_points: &'a [Sequence],
    h_points: &'a [Sequence],
    v_succ: Vec<usize>,
    h_succ: Vec<usize>,
    orient: Vec<i8>,
}

impl Clusters<'_> {
    /// Orbit point of the right factor sitting at position `a` of cluster `i`.
    fn h_index(&self, i: usize, a: usize) -> usize {
        if self.orient[i] > 0 {
            a
        } else {
            self.k - 1 - a
        }
    }

    fn critical(&self, i: usize) -> bool {
        first_symbol(&self.v_points[i]).is_critical()
    }

    /// Global index of the image of point `a` of cluster `i`.
    fn image(&self, i: usize, a: usize) -> usize {
        let j = self.v_succ[i];
        let m = self.h_index(i, a);
        let m = if self.critical(i) { self.h_succ[m] } else { m };
        j * self.k + self.h_index(j, m)
    }

    fn symbol(&self, i: usize, m: usize) -> Symbol {
        let s = first_symbol(&self.v_points[i]);
        if !s.is_critical() {
            return s;
        }
        let side = match first_symbol(&self.h_points[m]) {
            Symbol::UniC => return s,
            Symbol::UniR => self.orient[i],
            _ => -self.orient[i],
        };
        match (s, side > 0) {
            (Symbol::A, true) => Symbol::M,
            (Symbol::A, false) => Symbol::L,
            (_, true) => Symbol::R,
            (_, false) => Symbol::M,
        }
    }

    fn itinerary(&self, i: usize, a: usize) -> Result<Sequence> {
        let total = self.v_points.len() * self.k;
        let (mut i, mut m) = (i, self.h_index(i, a));
        let mut out = Vec::with_capacity(total);
        for _ in 0..total {
            out.push(self.symbol(i, m));
            if self.critical(i) {
                m = self.h_succ[m];
            }
            i = self.v_succ[i];
        }
        Sequence::periodic(out, Alphabet::Bimodal)
    }
}

fn reversed_if(flag: bool, x: usize, k: usize) -> usize {
    if flag {
        k - 2 - x
    } else {
        x
    }
}

/// Assemble the transition matrix of `v * w` block by block and check it
/// against the matrix built directly from the product.
pub fn otimes(v: &KneadingData, w: &KneadingData) -> Result<TransitionMatrix> {
    let h = legal_pair(v, w)?;
    let v_points = markov_partition(v)?;
    let h_points = markov_partition(&KneadingData::unimodal(h.clone())?)?;
    let a_v = transition_matrix(v)?;
    let k = h_points.len();
    let a_w = if k > 1 {
        transition_matrix(&KneadingData::unimodal(h)?)?.rows().to_vec()
    } else {
        Vec::new()
    };
    let c = Clusters {
        k,
        v_succ: successor_map(&v_points)?,
        h_succ: successor_map(&h_points)?,
        orient: orbit_orientation(&v_points)?,
        v_points: &v_points,
        h_points: &h_points,
    };
    let big_n = v_points.len();
    let n = big_n * k - 1;
    let mut entries = vec![vec![0u8; n]; n];

    // rows of intervals inside a cluster
    for i in 0..big_n {
        let j = c.v_succ[i];
        let flip_rows = c.orient[i] < 0;
        let flip_cols = c.orient[j] < 0;
        for a in 0..k.saturating_sub(1) {
            let row = &mut entries[i * k + a];
            if c.critical(i) {
                let ra = reversed_if(flip_rows, a, k);
                for (cw, &x) in a_w[ra].iter().enumerate() {
                    if x == 1 {
                        row[j * k + reversed_if(flip_cols, cw, k)] = 1;
                    }
                }
            } else {
                // identity or anti-identity stencil
                row[j * k + reversed_if(flip_rows != flip_cols, a, k)] = 1;
            }
        }
    }

    // rows of gaps between clusters: the row of A_V blown up to whole
    // clusters, then cut back to the images of the gap's endpoints
    for i in 0..big_n - 1 {
        let cover: Vec<usize> = (0..a_v.order()).filter(|&x| a_v.get(i, x) == 1).collect();
        let (lo_cluster, hi_cluster) = (cover[0], cover[cover.len() - 1] + 1);
        let e1 = c.image(i, k - 1);
        let e2 = c.image(i + 1, 0);
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        if lo / k != lo_cluster || hi / k != hi_cluster {
            return Err(Error::AssemblyMismatch(format!(
                "gap {i}: endpoint images fall outside the clusters {lo_cluster}..={hi_cluster}"
            )));
        }
        for x in &mut entries[i * k + k - 1][lo..hi] {
            *x = 1;
        }
    }

    let mut labels = Vec::with_capacity(big_n * k);
    for i in 0..big_n {
        for a in 0..k {
            labels.push(c.itinerary(i, a)?);
        }
    }
    let assembled = TransitionMatrix::with_points(entries, labels);

    let direct = transition_matrix(&star(v, w)?.product)?;
    if direct.order() != assembled.order() {
        return Err(Error::AssemblyMismatch(format!(
            "order {} against {} for the direct construction",
            assembled.order(),
            direct.order()
        )));
    }
    if let Some(r) = (0..n).find(|&r| direct.rows()[r] != assembled.rows()[r]) {
        let show = |row: &[u8]| row.iter().map(|x| x.to_string()).collect::<String>();
        return Err(Error::AssemblyMismatch(format!(
            "row {r}: assembled {} direct {}",
            show(&assembled.rows()[r]),
            show(&direct.rows()[r])
        )));
    }
    if direct.points() != assembled.points() {
        return Err(Error::AssemblyMismatch(
            "partition points are ordered differently".into(),
        ));
    }
    Ok(assembled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::parse_kneading;

    fn k(s: &str) -> KneadingData {
        parse_kneading(s).unwrap()
    }

    #[test]
    fn root_with_period_two() {
        let m = otimes(&k("(RA,LB)"), &k("(rc,rc)")).unwrap();
        assert_eq!(m, transition_matrix(&k("(RMRA,LMLB)")).unwrap());
        assert_eq!(m.order(), 7);
    }

    #[test]
    fn orientation_of_root() {
        let pts = markov_partition(&k("(RA,LB)")).unwrap();
        // points L.., A.., B.., R..
        assert_eq!(orbit_orientation(&pts).unwrap(), vec![-1, 1, -1, 1]);
    }

    #[test]
    fn illegal_pairs() {
        assert!(matches!(
            otimes(&k("(RMMA,LMMB)"), &k("(RMMA,LMMB)")),
            Err(Error::IllegalFactorPair(_))
        ));
        assert!(matches!(
            otimes(&k("RBLA"), &k("rlc")),
            Err(Error::IllegalFactorPair(_))
        ));
    }

    #[test]
    fn doubly_stable_factors() {
        for (v, w) in [("RBLA", "UBA"), ("RBLA", "(C,B)"), ("RBLA", "(UA,LB)"), ("RMBLMA", "ULBLA")] {
            assert_eq!(
                otimes(&k(v), &k(w)).unwrap(),
                transition_matrix(&star(&k(v), &k(w)).unwrap().product).unwrap()
            );
        }
    }
}
