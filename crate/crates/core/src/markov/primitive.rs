use std::collections::VecDeque;

use num_integer::Integer;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::matrix::TransitionMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_COMPLEXITY_CAP: usize = 16;

type BoolMat = Vec<Vec<bool>>;

fn bool_mul(a: &BoolMat, b: &BoolMat) -> BoolMat {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}

/// Some power up to `(n-1)^2 + 1` is entrywise positive. Powers of a
/// primitive matrix stay positive past that exponent, so a single power
/// decides it.
pub fn is_primitive(m: &TransitionMatrix) -> bool {
    let n = m.order();
    let a: BoolMat = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| x == 1).collect())
        .collect();
    let mut e = (n - 1) * (n - 1) + 1;
    let mut base = a;
    let mut acc: Option<BoolMat> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(x) => bool_mul(&x, &base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = bool_mul(&base, &base);
        }
    }
    acc.expect("exponent is positive")
        .iter()
        .all(|r| r.iter().all(|&x| x))
}

/// Primitivity of the principal submatrix on `keep`, from its graph:
/// strongly connected with cycle lengths of gcd one.
fn principal_is_primitive(m: &TransitionMatrix, keep: &[usize]) -> bool {
    let k = keep.len();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..k).map(|_| g.add_node(())).collect();
    let mut edges = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            if m.get(i, j) == 1 {
                g.add_edge(nodes[a], nodes[b], ());
                edges.push((a, b));
            }
        }
    }
    if edges.is_empty() || tarjan_scc(&g).len() != 1 {
        return false;
    }
    let mut level = vec![usize::MAX; k];
    level[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in edges.iter().filter(|(a, _)| *a == u) {
            if level[b] == usize::MAX {
                level[b] = level[a] + 1;
                queue.push_back(b);
            }
        }
    }
    let period = edges.iter().fold(0usize, |g, &(a, b)| {
        let diff = (level[a] + 1).abs_diff(level[b]);
        g.gcd(&diff)
    });
    period == 1
}

pub fn is_irreducibly_complex(m: &TransitionMatrix) -> Result<bool> {
    is_irreducibly_complex_with_cap(m, DEFAULT_COMPLEXITY_CAP)
}

/// Primitive, while no proper principal submatrix is.
pub fn is_irreducibly_complex_with_cap(m: &TransitionMatrix, cap: usize) -> Result<bool> {
    let n = m.order();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "irreducible complexity needs order at least 2, got {n}"
        )));
    }
    if n > cap {
        return Err(Error::OrderTooLarge { order: n, cap });
    }
    if !is_primitive(m) {
        return Ok(false);
    }
    if (0..n).any(|i| m.get(i, i) == 1) {
        return Ok(false);
    }
    let full = (1u32 << n) - 1;
    for mask in 1..full {
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if principal_is_primitive(m, &keep) {
            return Ok(false);
        }
    }
    Ok(true)
}
