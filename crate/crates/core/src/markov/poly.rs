use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::TransitionMatrix;

/// Polynomial in `t` with big-integer coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> IntPolynomial {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::from_i64(&[1])
    }

    /// `1 - t`.
    pub fn one_minus_t() -> IntPolynomial {
        IntPolynomial::from_i64(&[1, -1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coefficients.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ if !unit => write!(f, "{mag}")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            match num_traits::ToPrimitive::to_i64(c) {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

type Mat = Vec<Vec<BigInt>>;

fn mat_vec(m: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Coefficients of `det(xI - M)`, highest power first (Berkowitz; no
/// division, so exact over the integers).
fn berkowitz(m: &Mat) -> Vec<BigInt> {
    let n = m.len();
    match n {
        0 => return vec![BigInt::one()],
        1 => return vec![BigInt::one(), -m[0][0].clone()],
        _ => {}
    }
    let a = &m[0][0];
    let r: Vec<BigInt> = m[0][1..].to_vec();
    let c: Vec<BigInt> = m[1..].iter().map(|row| row[0].clone()).collect();
    let sub: Mat = m[1..].iter().map(|row| row[1..].to_vec()).collect();

    // first column of the Toeplitz factor: 1, -a, -R C, -R A C, ...
    let mut column = vec![BigInt::one(), -a.clone()];
    let mut v = c;
    for k in 0..n - 1 {
        column.push(-r.iter().zip(&v).map(|(x, y)| x * y).sum::<BigInt>());
        if k + 1 < n - 1 {
            v = mat_vec(&sub, &v);
        }
    }
    let inner = berkowitz(&sub);
    (0..=n)
        .map(|i| {
            (0..n)
                .filter(|&j| j <= i)
                .map(|j| &column[i - j] * &inner[j])
                .sum()
        })
        .collect()
}

/// `det(I - tA)` as an exact polynomial.
pub fn char_poly(m: &TransitionMatrix) -> IntPolynomial {
    let mat: Mat = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    // det(I - tA) = t^n det(t^{-1} I - A): same coefficients, ascending
    IntPolynomial::new(berkowitz(&mat))
}
