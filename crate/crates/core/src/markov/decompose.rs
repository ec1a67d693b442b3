use serde::Serialize;

use super::matrix::{transition_matrix, TransitionMatrix};
use super::poly::{char_poly, IntPolynomial};
use crate::error::{Error, Result};
use crate::kneading::KneadingData;
use crate::trees::{d1_address, d1_to_unimodal};

/// `A_S` reordered into `[[1, W1, W2], [0, 0, A_P], [0, A_P, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// New index `k` is old interval `permutation[k]`: the middle interval,
    /// then the intervals left of it (right to left), then those right of it.
    pub permutation: Vec<usize>,
    pub permuted: Vec<Vec<u8>>,
    pub w1: Vec<u8>,
    pub w2: Vec<u8>,
    pub upper: Vec<Vec<u8>>,
    pub lower: Vec<Vec<u8>>,
    /// Transition matrix of the unimodal sequence at the same tree address.
    pub a_p: Vec<Vec<u8>>,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn block(m: &[Vec<u8>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<u8>> {
    m[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

pub fn decompose(d: &KneadingData) -> Result<DecompositionReport> {
    d1_address(d)?;
    let a = transition_matrix(d)?;
    let x = d1_to_unimodal(d)?;
    let a_p = transition_matrix(&KneadingData::unimodal(x)?)?;
    let n = a.order();
    let p = (n + 1) / 2;
    let k = p - 1;
    if a_p.order() != k {
        return Err(Error::BlockMismatch(format!(
            "{d}: order {n} does not match a factor of order {}",
            a_p.order()
        )));
    }
    let permutation: Vec<usize> = std::iter::once(p - 1)
        .chain((0..p - 1).rev())
        .chain(p..n)
        .collect();
    let permuted = a.permuted(&permutation);
    let upper = block(&permuted, 1..1 + k, 1 + k..n);
    let lower = block(&permuted, 1 + k..n, 1..1 + k);
    let zero_diag = block(&permuted, 1..1 + k, 1..1 + k)
        .iter()
        .chain(block(&permuted, 1 + k..n, 1 + k..n).iter())
        .all(|r| r.iter().all(|&x| x == 0));
    let first_column = permuted[1..].iter().all(|r| r[0] == 0);
    let expected = a_p.rows().to_vec();
    let mut problems = Vec::new();
    if permuted[0][0] != 1 {
        problems.push("corner entry is not 1");
    }
    if !first_column {
        problems.push("first column is not zero below the corner");
    }
    if !zero_diag {
        problems.push("diagonal blocks are not zero");
    }
    if upper != expected {
        problems.push("upper block differs from the factor matrix");
    }
    if lower != expected {
        problems.push("lower block differs from the factor matrix");
    }
    if !problems.is_empty() {
        return Err(Error::BlockMismatch(format!("{d}: {}", problems.join("; "))));
    }
    Ok(DecompositionReport {
        permutation,
        w1: permuted[0][1..1 + k].to_vec(),
        w2: permuted[0][1 + k..].to_vec(),
        permuted,
        upper,
        lower,
        a_p: expected,
        matches: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub d_s: IntPolynomial,
    pub d_p: IntPolynomial,
    /// `(1 - t)`, `d_P(t)`, `d_P(-t)`.
    pub factors: [IntPolynomial; 3],
    pub product: IntPolynomial,
    pub holds: bool,
}

/// Compare `det(I - tA_S)` with `(1 - t) d_P(t) d_P(-t)` exactly.
pub fn verify_factorization(d: &KneadingData) -> Result<FactorizationReport> {
    let x = d1_to_unimodal(d)?;
    let a_s = transition_matrix(d)?;
    let a_p: TransitionMatrix = transition_matrix(&KneadingData::unimodal(x)?)?;
    let d_s = char_poly(&a_s);
    let d_p = char_poly(&a_p);
    let factors = [IntPolynomial::one_minus_t(), d_p.clone(), d_p.reflect()];
    let product = &(&factors[0] * &factors[1]) * &factors[2];
    Ok(FactorizationReport {
        holds: product == d_s,
        d_s,
        d_p,
        factors,
        product,
    })
}
