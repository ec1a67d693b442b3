//! The odd cubic family `f_a(x) = a x^3 + (1 - a) x` on `[-1, 1]`, used to
//! check that symbolic data describe actual maps.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kneading::{KneadingData, KneadingKind};
use crate::sequence::{compare, Sequence};
use crate::symbol::{Alphabet, Symbol};

pub const DEFAULT_EPS: f64 = 1e-10;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SCAN: usize = 3000;
pub const A_MAX: f64 = 4.0;

/// Slack allowed beyond the endpoints before a point counts as escaped.
const ESCAPE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicMap {
    a: f64,
}

impl CubicMap {
    pub fn new(a: f64) -> Result<CubicMap> {
        if !(a > 1.0 && a <= A_MAX) {
            return Err(Error::InvalidArgument(format!(
                "parameter {a} is outside (1, {A_MAX}]"
            )));
        }
        Ok(CubicMap { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `(c1, c2)` with `c1 = -c2 < 0`.
    pub fn critical_points(&self) -> (f64, f64) {
        let c = ((self.a - 1.0) / (3.0 * self.a)).sqrt();
        (-c, c)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(x.abs() <= 1.0 + ESCAPE_SLACK) {
            return Err(Error::DomainExceeded(x));
        }
        // written so that f(-x) = -f(x) exactly
        Ok(x * (self.a * x * x + (1.0 - self.a)))
    }

    /// Symbol of a single point, snapping to `A`/`B` within `eps` of a
    /// critical point.
    pub fn symbol_of(&self, x: f64, eps: f64) -> Symbol {
        let (c1, c2) = self.critical_points();
        if (x - c1).abs() < eps {
            Symbol::A
        } else if (x - c2).abs() < eps {
            Symbol::B
        } else if x < c1 {
            Symbol::L
        } else if x < c2 {
            Symbol::M
        } else {
            Symbol::R
        }
    }

    /// Symbols of `f(x0), ..., f^n(x0)`, cut short after the first
    /// critical symbol.
    pub fn itinerary(&self, x0: f64, n: usize, eps: f64) -> Result<Sequence> {
        if n == 0 || !(eps > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "itinerary needs n >= 1 and eps > 0, got n = {n}, eps = {eps}"
            )));
        }
        let mut x = x0;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            x = self.evaluate(x)?;
            let s = self.symbol_of(x, eps);
            out.push(s);
            if s.is_critical() {
                break;
            }
        }
        Sequence::finite(out, Alphabet::Bimodal)
    }

    fn iterate(&self, x0: f64, p: usize) -> Result<f64> {
        (0..p).try_fold(x0, |x, _| self.evaluate(x))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Realization {
    pub a: f64,
    /// `f^p(c1)` minus the critical point it should land on.
    pub defect: f64,
    pub itinerary: Sequence,
    /// Itinerary of `c2` over the same number of steps.
    pub c2_itinerary: Sequence,
}

fn target_block(target: &KneadingData) -> Result<(Vec<Symbol>, bool)> {
    match target.kind() {
        KneadingKind::BimodalPair | KneadingKind::DoublyStable if target.is_symmetric() => {}
        _ => {
            return Err(Error::TypeMismatch(format!(
                "{target} is not symmetric bimodal kneading data"
            )))
        }
    }
    let first = target.first().symbols();
    Ok(match target.kind() {
        KneadingKind::DoublyStable => (first[..target.split().unwrap_or(first.len())].to_vec(), true),
        _ => (first.to_vec(), false),
    })
}

fn defect(map: &CubicMap, p: usize, to_c2: bool) -> Result<f64> {
    let (c1, c2) = map.critical_points();
    Ok(map.iterate(c1, p)? - if to_c2 { c2 } else { c1 })
}

/// Parameter at which the orbit of `c1` is superstable with the target's
/// symbolic period. The scan uses `scan` equal steps over `(1, 4]`.
pub fn realize(target: &KneadingData, tol: f64, scan: usize) -> Result<Realization> {
    if !(tol > 0.0) || scan == 0 {
        return Err(Error::InvalidArgument(format!(
            "realize needs tol > 0 and scan >= 1, got tol = {tol}, scan = {scan}"
        )));
    }
    let (block, to_c2) = target_block(target)?;
    let p = block.len();
    let at = |a: f64| -> Result<f64> { defect(&CubicMap::new(a)?, p, to_c2) };

    let grid: Vec<f64> = (1..=scan)
        .map(|i| 1.0 + (A_MAX - 1.0) * i as f64 / scan as f64)
        .collect();
    let mut prev: Option<(f64, f64)> = None;
    for &a in &grid {
        let d = at(a)?;
        if let Some((a0, d0)) = prev {
            if (d0 < 0.0) != (d < 0.0) {
                if let Some(r) = refine(a0, d0, a, &at, tol)? {
                    let map = CubicMap::new(r.0)?;
                    let (c1, c2) = map.critical_points();
                    let itin = map.itinerary(c1, p, DEFAULT_EPS)?;
                    if itin.symbols() == block.as_slice() {
                        let c2_itin = map.itinerary(c2, p, DEFAULT_EPS)?;
                        if c2_itin != itin.conjugate()? {
                            return Err(Error::ItineraryMismatch {
                                expected: itin.conjugate()?.to_string(),
                                found: c2_itin.to_string(),
                            });
                        }
                        return Ok(Realization {
                            a: r.0,
                            defect: r.1,
                            itinerary: itin,
                            c2_itinerary: c2_itin,
                        });
                    }
                }
            }
        }
        prev = Some((a, d));
    }
    Err(Error::NoBracket(target.to_string()))
}

/// Bisect a sign change down to `|defect| < tol`; `None` when the bracket
/// straddles a jump rather than a root.
fn refine(
    mut lo: f64,
    mut d_lo: f64,
    mut hi: f64,
    at: &dyn Fn(f64) -> Result<f64>,
    tol: f64,
) -> Result<Option<(f64, f64)>> {
    loop {
        let mid = 0.5 * (lo + hi);
        let d = at(mid)?;
        if d.abs() < tol {
            return Ok(Some((mid, d)));
        }
        if mid <= lo || mid >= hi {
            return Ok(None);
        }
        if (d < 0.0) == (d_lo < 0.0) {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub steps: usize,
    pub compared: usize,
    /// Adjacent grid parameters whose kneading sequences decrease.
    pub violations: Vec<(f64, f64)>,
}

/// Compare the kneading sequence of `c1` (first `n` symbols) at adjacent
/// grid points across `(1, 4]`.
pub fn monotonicity_probe(steps: usize, n: usize) -> Result<MonotonicityReport> {
    let mut prev: Option<(f64, Sequence)> = None;
    let mut compared = 0;
    let mut violations = Vec::new();
    for i in 1..=steps {
        let a = 1.0 + (A_MAX - 1.0) * i as f64 / steps as f64;
        let map = CubicMap::new(a)?;
        let k = map.itinerary(map.critical_points().0, n, DEFAULT_EPS)?;
        if let Some((a0, k0)) = &prev {
            let horizon = k0.len().min(k.len());
            if let Ok(ord) = compare(k0, &k, Some(horizon)) {
                compared += 1;
                if ord == Ordering::Greater {
                    violations.push((*a0, a));
                }
            }
        }
        prev = Some((a, k));
    }
    Ok(MonotonicityReport {
        steps,
        compared,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::parse_kneading;

    #[test]
    fn evaluation() {
        let f = CubicMap::new(4.0).unwrap();
        assert_eq!(f.evaluate(-0.5).unwrap(), 1.0);
        assert_eq!(f.evaluate(1.0).unwrap(), 1.0);
        assert_eq!(CubicMap::new(2.5).unwrap().evaluate(0.0).unwrap(), 0.0);
        assert_eq!(f.critical_points(), (-0.5, 0.5));
        assert!(matches!(f.evaluate(1.5), Err(Error::DomainExceeded(_))));
        assert!(CubicMap::new(1.0).is_err());
    }

    #[test]
    fn itineraries() {
        let f = CubicMap::new(4.0).unwrap();
        assert_eq!(f.itinerary(-0.5, 5, DEFAULT_EPS).unwrap().to_string(), "RRRRR");
        assert_eq!(f.symbol_of(-0.5, DEFAULT_EPS), Symbol::A);
        let g = CubicMap::new(1.01).unwrap();
        let c1 = g.critical_points().0;
        assert_eq!(g.itinerary(c1, 6, DEFAULT_EPS).unwrap().to_string(), "MMMMMM");
    }

    #[test]
    fn realize_root() {
        let r = realize(&parse_kneading("(RA,LB)").unwrap(), DEFAULT_TOL, DEFAULT_SCAN).unwrap();
        assert_eq!(r.itinerary.to_string(), "RA");
        assert_eq!(r.c2_itinerary.to_string(), "LB");
        assert!(r.defect.abs() < DEFAULT_TOL);
        assert!(r.a > 1.0 && r.a <= 4.0);
    }

    #[test]
    fn realize_doubly_stable() {
        let r = realize(&parse_kneading("RBLA").unwrap(), DEFAULT_TOL, DEFAULT_SCAN).unwrap();
        assert_eq!(r.itinerary.to_string(), "RB");
        assert_eq!(r.c2_itinerary.to_string(), "LA");
    }

    #[test]
    fn unrealizable() {
        let t = parse_kneading("(LA,RB)").unwrap();
        assert!(matches!(realize(&t, DEFAULT_TOL, 500), Err(Error::NoBracket(_))));
        let t = parse_kneading("rlc").unwrap();
        assert!(matches!(realize(&t, DEFAULT_TOL, 500), Err(Error::TypeMismatch(_))));
    }
}
