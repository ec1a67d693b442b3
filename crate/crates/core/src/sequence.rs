//! Words over the three alphabets and the signed lexicographic order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::BitXor;

use num_integer::Integer;
use num_rational::Rational32;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Sign, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

impl BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Alphabet {
    /// Guess the alphabet of a textual word: any of `l c r` selects the
    /// unimodal alphabet, any of `C U` the factor alphabet.
    pub fn detect(text: &str) -> Alphabet {
        if text.chars().any(|c| matches!(c, 'l' | 'c' | 'r' | 'ℓ')) {
            Alphabet::Unimodal
        } else if text.chars().any(|c| matches!(c, 'C' | 'U')) {
            Alphabet::Factor
        } else {
            Alphabet::Bimodal
        }
    }
}

/// A finite word, or the infinite repetition of a block.
///
/// Periodic sequences are stored as their shortest repeating block, so two
/// spellings of the same infinite word (`RARA`, `RA`) compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<Symbol>,
    periodic: bool,
    alphabet: Alphabet,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>, alphabet: Alphabet, periodic: bool) -> Result<Sequence> {
        if symbols.is_empty() && periodic {
            return Err(Error::EmptyInput);
        }
        for (index, s) in symbols.iter().enumerate() {
            if !s.belongs_to(alphabet) {
                return Err(Error::AlphabetMix {
                    index,
                    ch: s.to_char(),
                    alphabet,
                });
            }
        }
        let symbols = if periodic {
            primitive_block(symbols)
        } else {
            symbols
        };
        Ok(Sequence {
            symbols,
            periodic,
            alphabet,
        })
    }

    pub fn periodic(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Sequence> {
        Sequence::new(symbols, alphabet, true)
    }

    pub fn finite(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Sequence> {
        Sequence::new(symbols, alphabet, false)
    }

    /// The empty finite word (root of the full tree).
    pub fn empty(alphabet: Alphabet) -> Sequence {
        Sequence {
            symbols: Vec::new(),
            periodic: false,
            alphabet,
        }
    }

    pub fn parse(text: &str, alphabet: Alphabet, periodic: bool) -> Result<Sequence> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut symbols = Vec::with_capacity(text.len());
        for (index, ch) in text.chars().enumerate() {
            let s = Symbol::from_char(ch).ok_or(Error::UnknownSymbol { index, ch })?;
            if !s.belongs_to(alphabet) {
                return Err(Error::AlphabetMix { index, ch, alphabet });
            }
            symbols.push(s);
        }
        Sequence::new(symbols, alphabet, periodic)
    }

    /// Parse with the alphabet inferred by [`Alphabet::detect`].
    pub fn parse_auto(text: &str, periodic: bool) -> Result<Sequence> {
        Sequence::parse(text, Alphabet::detect(text), periodic)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn first(&self) -> Option<Symbol> {
        self.symbols.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.symbols.last().copied()
    }

    /// Symbol `j` of the expansion.
    pub fn at(&self, j: usize) -> Result<Symbol> {
        if self.periodic {
            Ok(self.symbols[j % self.symbols.len()])
        } else {
            self.symbols.get(j).copied().ok_or(Error::TooShort {
                needed: j + 1,
                len: self.symbols.len(),
            })
        }
    }

    /// The first `n` symbols of the expansion.
    pub fn expand(&self, n: usize) -> Result<Vec<Symbol>> {
        (0..n).map(|j| self.at(j)).collect()
    }

    pub fn with_periodic(&self, periodic: bool) -> Result<Sequence> {
        Sequence::new(self.symbols.clone(), self.alphabet, periodic)
    }

    /// Concatenation of the two blocks (a finite word unless `periodic`).
    pub fn concat(&self, other: &Sequence, periodic: bool) -> Result<Sequence> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet,
                found: other.alphabet,
            });
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Sequence::new(symbols, self.alphabet, periodic)
    }

    pub fn prefix(&self, n: usize) -> Result<Sequence> {
        Sequence::finite(self.expand(n)?, self.alphabet)
    }

    /// Symbolwise image under `L <-> R`, `A <-> B`, `M -> M`.
    pub fn conjugate(&self) -> Result<Sequence> {
        if self.alphabet != Alphabet::Bimodal {
            return Err(Error::AlphabetMismatch {
                expected: Alphabet::Bimodal,
                found: self.alphabet,
            });
        }
        let symbols = self
            .symbols
            .iter()
            .map(|s| s.conjugate().expect("bimodal symbols have conjugates"))
            .collect();
        Ok(Sequence {
            symbols,
            periodic: self.periodic,
            alphabet: self.alphabet,
        })
    }

    /// `σ^k`: cyclic rotation of a periodic block, suffix of a finite one.
    pub fn shift(&self, k: usize) -> Result<Sequence> {
        let n = self.symbols.len();
        let symbols = if self.periodic {
            let k = k % n;
            self.symbols[k..]
                .iter()
                .chain(self.symbols[..k].iter())
                .copied()
                .collect()
        } else {
            if k >= n && !(k == 0 && n == 0) {
                return Err(Error::ShiftOutOfRange { shift: k, len: n });
            }
            self.symbols[k..].to_vec()
        };
        Ok(Sequence {
            symbols,
            periodic: self.periodic,
            alphabet: self.alphabet,
        })
    }

    /// All distinct rotations of a periodic block, in shift order.
    pub fn rotations(&self) -> Vec<Sequence> {
        (0..self.len())
            .map(|k| self.shift(k).expect("rotation within block"))
            .collect()
    }

    /// Parity of the number of orientation-reversing symbols (`M`, or `r`
    /// in the unimodal alphabet).
    pub fn m_parity(&self) -> Parity {
        Parity::of_count(
            self.symbols
                .iter()
                .filter(|s| s.epsilon() == Sign::Negative)
                .count(),
        )
    }

    pub fn count(&self, symbol: Symbol) -> usize {
        self.symbols.iter().filter(|&&s| s == symbol).count()
    }

    /// Product of the signs of the block.
    pub fn sign(&self) -> Sign {
        self.symbols
            .iter()
            .fold(Sign::Positive, |acc, s| acc.times(s.epsilon()))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl Serialize for Sequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn primitive_block(symbols: Vec<Symbol>) -> Vec<Symbol> {
    let n = symbols.len();
    for p in 1..n {
        if n % p == 0 && (p..n).all(|i| symbols[i] == symbols[i - p]) {
            return symbols[..p].to_vec();
        }
    }
    symbols
}

/// Default comparison horizon: twice the lcm of the periods for two periodic
/// sequences, the shorter length otherwise.
pub fn default_horizon(a: &Sequence, b: &Sequence) -> usize {
    match (a.periodic, b.periodic) {
        (true, true) => 2 * a.len().lcm(&b.len()),
        (true, false) => b.len(),
        (false, true) => a.len(),
        (false, false) => a.len().min(b.len()),
    }
}

/// Signed lexicographic order.
///
/// At the first index where the expansions differ the base order of the
/// symbols decides, reversed when the common prefix contains an odd number
/// of orientation-reversing symbols. A critical symbol in the common prefix
/// fixes the rest of a kneading sequence, so a difference after one is
/// reported as [`Error::AmbiguousAfterCritical`].
pub fn compare(a: &Sequence, b: &Sequence, horizon: Option<usize>) -> Result<Ordering> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch {
            expected: a.alphabet,
            found: b.alphabet,
        });
    }
    if a.alphabet == Alphabet::Factor {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Bimodal,
            found: Alphabet::Factor,
        });
    }
    let horizon = horizon.unwrap_or_else(|| default_horizon(a, b));
    let mut sign = Sign::Positive;
    for j in 0..horizon {
        let x = a.at(j)?;
        let y = b.at(j)?;
        if x != y {
            let base = x.rank().cmp(&y.rank());
            return match sign {
                Sign::Positive => Ok(base),
                Sign::Negative => Ok(base.reverse()),
                Sign::Zero => Err(Error::AmbiguousAfterCritical { index: j }),
            };
        }
        sign = sign.times(x.epsilon());
    }
    Ok(Ordering::Equal)
}

/// One coefficient of the invariant coordinate: a rational vector over the
/// basis `(L, M, R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaVector(pub [Rational32; 3]);

impl ThetaVector {
    pub const ZERO: ThetaVector = ThetaVector([Rational32::new_raw(0, 1); 3]);

    fn of_symbol(s: Symbol) -> ThetaVector {
        let one = Rational32::from_integer(1);
        let half = Rational32::new(1, 2);
        let zero = Rational32::from_integer(0);
        ThetaVector(match s {
            Symbol::L => [one, zero, zero],
            Symbol::A => [half, half, zero],
            Symbol::M => [zero, one, zero],
            Symbol::B => [zero, half, half],
            Symbol::R => [zero, zero, one],
            other => unreachable!("{other} has no coordinate vector"),
        })
    }

    fn scaled(self, sign: Sign) -> ThetaVector {
        let k = Rational32::from_integer(sign.as_i8() as i32);
        ThetaVector(self.0.map(|x| x * k))
    }

    /// Linear functional `L + 2M + 3R`. It is injective on the vectors that
    /// occur as coefficients and realises the chain
    /// `-R < -B < -M < -A < -L < 0 < L < A < M < B < R`.
    pub fn weight(&self) -> Rational32 {
        self.0[0] + self.0[1] * 2 + self.0[2] * 3
    }
}

impl Ord for ThetaVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight())
    }
}

impl PartialOrd for ThetaVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Truncated invariant coordinate `θ_0 + θ_1 t + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCoordinate {
    pub coefficients: Vec<ThetaVector>,
}

impl InvariantCoordinate {
    /// Lexicographic comparison of the coefficient lists.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.coefficients.cmp(&other.coefficients)
    }
}

pub fn invariant_coordinate(s: &Sequence, n: usize) -> Result<InvariantCoordinate> {
    if s.alphabet != Alphabet::Bimodal {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Bimodal,
            found: s.alphabet,
        });
    }
    let mut sign = Sign::Positive;
    let mut coefficients = Vec::with_capacity(n);
    for j in 0..n {
        let sym = s.at(j)?;
        coefficients.push(ThetaVector::of_symbol(sym).scaled(sign));
        sign = sign.times(sym.epsilon());
    }
    Ok(InvariantCoordinate { coefficients })
}
