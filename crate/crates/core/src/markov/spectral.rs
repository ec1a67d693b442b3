use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::matrix::{transition_matrix, TransitionMatrix};
use super::poly::char_poly;
use crate::error::{Error, Result};
use crate::kneading::KneadingData;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

/// A method for the Perron root of a nonnegative matrix.
pub trait PerronEstimator: Send + Sync {
    fn name(&self) -> &'static str;
    fn estimate(&self, m: &TransitionMatrix, tol: f64) -> Result<f64>;
}

/// Power iteration on `B + I` for every strongly connected block `B`,
/// stopped once the Collatz-Wielandt bounds are within `tol`.
#[derive(Debug, Clone, Copy)]
pub struct PowerIteration {
    pub max_iterations: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

fn components(m: &TransitionMatrix) -> Vec<Vec<usize>> {
    let n = m.order();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j) == 1 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut idx: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            idx.sort_unstable();
            idx
        })
        .collect()
}

impl PowerIteration {
    fn block_root(&self, m: &TransitionMatrix, block: &[usize], tol: f64) -> Result<f64> {
        let k = block.len();
        let a: Vec<Vec<f64>> = block
            .iter()
            .map(|&i| block.iter().map(|&j| f64::from(m.get(i, j))).collect())
            .collect();
        let mut x = vec![1.0; k];
        for _ in 0..self.max_iterations {
            let y: Vec<f64> = (0..k)
                .map(|i| x[i] + a[i].iter().zip(&x).map(|(p, q)| p * q).sum::<f64>())
                .collect();
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for i in 0..k {
                let r = y[i] / x[i];
                lo = lo.min(r);
                hi = hi.max(r);
            }
            if hi - lo <= tol {
                return Ok((lo + hi) / 2.0 - 1.0);
            }
            let norm = y.iter().cloned().fold(0.0, f64::max);
            x = y.into_iter().map(|v| v / norm).collect();
        }
        Err(Error::NonConvergence {
            iterations: self.max_iterations,
        })
    }
}

impl PerronEstimator for PowerIteration {
    fn name(&self) -> &'static str {
        "power"
    }

    fn estimate(&self, m: &TransitionMatrix, tol: f64) -> Result<f64> {
        let mut best = 0.0f64;
        for block in components(m) {
            let cyclic = block.len() > 1 || m.get(block[0], block[0]) == 1;
            if cyclic {
                best = best.max(self.block_root(m, &block, tol)?);
            }
        }
        Ok(best)
    }
}

/// Exact bisection on the largest real root of the characteristic
/// polynomial, located with a Sturm sequence.
#[derive(Debug, Clone, Copy, Default)]
pub struct SturmBisection;

/// Integer polynomial, lowest power first.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Divide out the (positive) content.
fn primitive(p: ZPoly) -> ZPoly {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

fn derivative(p: &ZPoly) -> ZPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect(),
    )
}

/// Remainder of `a` by `b`, up to a positive factor.
fn rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lead = b.last().expect("nonzero divisor");
    let scale = lead.abs();
    let mut r = a.clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() * lead.signum();
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        r = primitive(trim(r));
    }
    r
}

/// `a / b` when `b` divides `a` over the integers.
fn exact_quotient(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lead = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, x) in b.iter().enumerate() {
            r[shift + i] -= &c * x;
        }
        q[shift] = c;
        r = trim(r);
    }
    trim(q)
}

fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = (primitive(a.clone()), primitive(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Sign of `p(num / 2^k)` times a positive power of two.
fn sign_at(p: &[BigInt], num: &BigInt, k: usize) -> Option<bool> {
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * num + (&p[i] << (k * (d - i)));
    }
    (!acc.is_zero()).then(|| acc.is_positive())
}

fn sign_changes(chain: &[Vec<BigInt>], num: &BigInt, k: usize) -> usize {
    let signs: Vec<bool> = chain.iter().filter_map(|p| sign_at(p, num, k)).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl PerronEstimator for SturmBisection {
    fn name(&self) -> &'static str {
        "sturm"
    }

    fn estimate(&self, m: &TransitionMatrix, tol: f64) -> Result<f64> {
        // det(xI - A) has the coefficients of det(I - tA) in reverse order
        let d = char_poly(m);
        let n = m.order();
        let p: ZPoly = trim((0..=n).map(|k| d.coefficient(n - k)).collect());
        // Sturm chain of the square-free part; rescaling members by
        // positive constants leaves the sign counts unchanged
        let square_free = exact_quotient(&p, &gcd(&p, &derivative(&p)));
        let mut chain = vec![square_free.clone(), primitive(derivative(&square_free))];
        while !chain[chain.len() - 1].is_empty() {
            let k = chain.len();
            let r = rem(&chain[k - 2], &chain[k - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        let max_row = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).sum::<i64>())
            .max()
            .unwrap_or(0);
        // the interval is [lo / 2^k, hi / 2^k]
        let mut k = 0usize;
        let mut lo = BigInt::from(-1);
        let mut hi = BigInt::from(max_row + 1);
        let v_top = sign_changes(&chain, &hi, 0);
        let scaled = |x: &BigInt, k: usize| x.to_f64().unwrap_or(f64::NAN) / 2f64.powi(k as i32);
        while scaled(&(&hi - &lo), k) > tol {
            k += 1;
            lo <<= 1;
            hi <<= 1;
            let mid: BigInt = (&lo + &hi) >> 1;
            if sign_changes(&chain, &mid, k) > v_top {
                lo = mid;
            } else {
                hi = mid;
            }
            if k > 4096 {
                return Err(Error::NonConvergence { iterations: k });
            }
        }
        Ok(scaled(&(&lo + &hi), k + 1))
    }
}

/// Perron root estimators keyed by name.
pub struct PerronRegistry {
    estimators: Vec<Box<dyn PerronEstimator>>,
}

impl PerronRegistry {
    pub fn empty() -> PerronRegistry {
        PerronRegistry {
            estimators: Vec::new(),
        }
    }

    pub fn register(&mut self, e: Box<dyn PerronEstimator>) {
        self.estimators.push(e);
    }

    pub fn get(&self, name: &str) -> Option<&dyn PerronEstimator> {
        self.estimators
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.estimators.iter().map(|e| e.name()).collect()
    }

    /// Run every estimator; all must agree with the first within `10 tol`,
    /// whose value is returned.
    pub fn consensus(&self, m: &TransitionMatrix, tol: f64) -> Result<f64> {
        let mut iter = self.estimators.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidArgument("no estimators registered".into()))?;
        let a = first.estimate(m, tol)?;
        for e in iter {
            let b = e.estimate(m, tol)?;
            if (a - b).abs() > 10.0 * tol {
                return Err(Error::EstimatorDisagreement {
                    method: first.name(),
                    other: e.name(),
                    a,
                    b,
                });
            }
        }
        Ok(a)
    }
}

impl Default for PerronRegistry {
    fn default() -> PerronRegistry {
        let mut r = PerronRegistry::empty();
        r.register(Box::new(PowerIteration::default()));
        r.register(Box::new(SturmBisection));
        r
    }
}

pub fn spectral_radius(m: &TransitionMatrix, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    PerronRegistry::default().consensus(m, tol)
}

/// Logarithm of the Perron root of the transition matrix.
pub fn entropy(d: &KneadingData, tol: f64) -> Result<f64> {
    let rho = spectral_radius(&transition_matrix(d)?, tol)?;
    Ok(rho.ln().max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::parse_kneading;

    fn m(rows: Vec<Vec<u8>>) -> TransitionMatrix {
        TransitionMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn golden_ratio() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let a = m(vec![vec![0, 1], vec![1, 1]]);
        for name in ["power", "sturm"] {
            let e = PerronRegistry::default();
            let v = e.get(name).unwrap().estimate(&a, 1e-12).unwrap();
            assert!((v - golden).abs() < 1e-11, "{name}: {v}");
        }
        assert!((spectral_radius(&a, 1e-12).unwrap() - golden).abs() < 1e-11);
    }

    #[test]
    fn trivial_and_cyclic() {
        assert_eq!(spectral_radius(&m(vec![vec![1]]), 1e-12).unwrap(), 1.0);
        assert_eq!(spectral_radius(&m(vec![vec![0]]), 1e-12).unwrap(), 0.0);
        let rab = m(vec![vec![0, 0, 1], vec![1, 1, 1], vec![1, 0, 0]]);
        assert!((spectral_radius(&rab, 1e-12).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropies() {
        let e = entropy(&parse_kneading("(RA,LB)").unwrap(), 1e-12).unwrap();
        assert!(e.abs() < 1e-12);
        let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let e = entropy(&parse_kneading("rlc").unwrap(), 1e-12).unwrap();
        assert!((e - golden).abs() < 1e-9);
        let e = entropy(&parse_kneading("RMBLMA").unwrap(), 1e-12).unwrap();
        assert!((e - golden).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(spectral_radius(&m(vec![vec![1]]), 0.0).is_err());
    }
}
