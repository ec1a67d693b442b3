//! Reference computations kept independent of the library's own algorithms.
#![allow(dead_code)]

use kneading_core::markov::{IntPolynomial, TransitionMatrix};
use kneading_core::{parse_kneading, KneadingData};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn k(s: &str) -> KneadingData {
    parse_kneading(s).unwrap()
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..n - 1 {
        if m[p][p].is_zero() {
            match (p + 1..n).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let v = &m[i][j] * &m[p][p] - &m[i][p] * &m[p][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `det(I - tA)` at an integer `t`.
pub fn det_i_minus_ta(a: &TransitionMatrix, t: i64) -> BigInt {
    let n = a.order();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { 1 } else { 0 };
                    BigInt::from(id - t * i64::from(a.get(i, j)))
                })
                .collect()
        })
        .collect();
    bareiss_det(m)
}

/// A degree-`n` polynomial agreeing with `det(I - tA)` at `n + 1` points
/// is that polynomial.
pub fn poly_matches_determinant(p: &IntPolynomial, a: &TransitionMatrix) -> bool {
    let n = a.order() as i64;
    p.degree().unwrap_or(0) as i64 <= n
        && (-n / 2 - 1..=n / 2 + 1).all(|t| p.eval(&BigInt::from(t)) == det_i_minus_ta(a, t))
}

fn bool_power_positive(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    let mut p = a.to_vec();
    // Wielandt: primitive iff A^k > 0 for k = (n-1)^2 + 1
    for _ in 1..(n - 1) * (n - 1) + 1 {
        let mut q = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = (0..n).any(|l| p[i][l] && a[l][j]);
            }
        }
        p = q;
    }
    p.iter().all(|r| r.iter().all(|&x| x))
}

pub fn brute_primitive(a: &TransitionMatrix, keep: &[usize]) -> bool {
    let m: Vec<Vec<bool>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| a.get(i, j) == 1).collect())
        .collect();
    bool_power_positive(&m)
}

/// Primitive, and no proper principal submatrix primitive, by powers.
pub fn brute_irreducibly_complex(a: &TransitionMatrix) -> bool {
    let n = a.order();
    let all: Vec<usize> = (0..n).collect();
    if !brute_primitive(a, &all) {
        return false;
    }
    (1..(1u32 << n) - 1).all(|mask| {
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        !brute_primitive(a, &keep)
    })
}

/// Symmetric datum for a unimodal word `W c`: `l -> M`, `r -> R` at even
/// positions and `L` at odd ones; a pair when `|W|` is odd, otherwise a
/// single orbit through both critical points.
pub fn explicit_symmetric_datum(x: &str) -> String {
    let w: String = x
        .trim_end_matches('c')
        .chars()
        .enumerate()
        .map(|(i, ch)| match (ch, i % 2) {
            ('l', _) => 'M',
            ('r', 0) => 'R',
            ('r', _) => 'L',
            _ => panic!("unexpected symbol {ch}"),
        })
        .collect();
    let bar: String = w
        .chars()
        .map(|c| match c {
            'L' => 'R',
            'R' => 'L',
            c => c,
        })
        .collect();
    if w.len() % 2 == 1 {
        format!("({w}A,{bar}B)")
    } else {
        format!("{w}B{bar}A")
    }
}

/// Matrix rows written as whitespace-separated strings of 0/1 digits.
pub fn parse_rows(text: &str) -> Vec<Vec<u8>> {
    text.split_whitespace()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect()
}

fn sorted_orbit(words: &[kneading_core::Sequence]) -> Vec<kneading_core::Sequence> {
    let mut pts: Vec<kneading_core::Sequence> = Vec::new();
    for w in words {
        for r in w.rotations() {
            if !pts.contains(&r) {
                pts.push(r);
            }
        }
    }
    pts.sort_by(|a, b| kneading_core::compare(a, b, None).unwrap());
    pts
}

fn successors(pts: &[kneading_core::Sequence]) -> Vec<usize> {
    pts.iter()
        .map(|p| {
            let s = p.shift(1).unwrap();
            pts.iter().position(|q| *q == s).unwrap()
        })
        .collect()
}

/// Product datum from the blown-up orbit: each point of `v` becomes a
/// cluster ordered like the orbit of `h` (reversed where the branch of
/// `v` leading there reverses orientation), and the critical clusters run
/// the dynamics of `h`. The walk starts at the first critical point; if it
/// closes up without meeting the second, the product is a pair.
pub fn cluster_product(v: &KneadingData, h: &kneading_core::Sequence) -> String {
    use kneading_core::Symbol as S;
    let words: Vec<kneading_core::Sequence> = match v.second() {
        Some(q) => vec![v.first().clone(), q.clone()],
        None => vec![v.first().clone()],
    };
    let vp = sorted_orbit(&words);
    let hp = sorted_orbit(std::slice::from_ref(h));
    let (vs, hs) = (successors(&vp), successors(&hp));
    let head = |p: &kneading_core::Sequence| p.symbols()[0];
    let mut orient = vec![0i32; vp.len()];
    for (i, p) in vp.iter().enumerate() {
        let mut o = match head(p) {
            S::A => 1,
            S::B => -1,
            _ => continue,
        };
        let mut j = vs[i];
        loop {
            orient[j] = o;
            if head(&vp[j]).is_critical() {
                break;
            }
            o *= i32::from(head(&vp[j]).epsilon().as_i8());
            j = vs[j];
        }
    }
    let symbol = |i: usize, m: usize| -> char {
        let s = head(&vp[i]);
        let side = match head(&hp[m]) {
            S::UniC => return s.to_char(),
            S::UniR => orient[i],
            _ => -orient[i],
        };
        match (s, side > 0) {
            (S::A, true) => 'M',
            (S::A, false) => 'L',
            (S::B, true) => 'R',
            (S::B, false) => 'M',
            (s, _) => s.to_char(),
        }
    };
    let i0 = vp.iter().position(|p| head(p) == S::A).unwrap();
    let m0 = hp.iter().position(|p| head(p) == S::UniC).unwrap();
    let (mut i, mut m) = (i0, m0);
    let mut word = String::new();
    loop {
        if head(&vp[i]).is_critical() {
            m = hs[m];
        }
        i = vs[i];
        word.push(symbol(i, m));
        if (i, m) == (i0, m0) {
            break;
        }
    }
    if !word.contains('B') {
        let bar: String = word
            .chars()
            .map(|c| match c {
                'L' => 'R',
                'R' => 'L',
                'A' => 'B',
                'B' => 'A',
                c => c,
            })
            .collect();
        format!("({word},{bar})")
    } else {
        word
    }
}
