//! Validated kneading objects: unimodal sequences, bimodal pairs, doubly
//! stable orbits and factor words.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::symbol::{Alphabet, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KneadingKind {
    /// A unimodal block ending in `c`, optionally written twice as `(X,X)`.
    Unimodal,
    /// Two stable orbits `(P..A, Q..B)`.
    BimodalPair,
    /// One orbit through both critical points, `P..B Q..A`.
    DoublyStable,
    /// Factor-alphabet pair `(X..D, Y..B)`.
    FactorPair,
    /// Factor-alphabet word `X..B Y..D`.
    FactorWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KneadingData {
    kind: KneadingKind,
    first: Sequence,
    second: Option<Sequence>,
}

fn ensure_alphabet(s: &Sequence, alphabet: Alphabet) -> Result<()> {
    if s.alphabet() != alphabet {
        return Err(Error::AlphabetMismatch {
            expected: alphabet,
            found: s.alphabet(),
        });
    }
    Ok(())
}

fn ensure_periodic(s: &Sequence) -> Result<Sequence> {
    if s.is_periodic() {
        Ok(s.clone())
    } else {
        s.with_periodic(true)
    }
}

impl KneadingData {
    pub fn unimodal(x: Sequence) -> Result<KneadingData> {
        ensure_alphabet(&x, Alphabet::Unimodal)?;
        let x = ensure_periodic(&x)?;
        if x.last() != Some(Symbol::UniC) || x.count(Symbol::UniC) != 1 {
            return Err(Error::MalformedKneading(format!(
                "{x}: a unimodal block has exactly one c, at the end"
            )));
        }
        Ok(KneadingData {
            kind: KneadingKind::Unimodal,
            first: x,
            second: None,
        })
    }

    /// The duplicated unimodal pair `(X,X)` used as a Type-1 right factor.
    pub fn unimodal_pair(x: Sequence, y: Sequence) -> Result<KneadingData> {
        let d = KneadingData::unimodal(x)?;
        let y = ensure_periodic(&y)?;
        if y != d.first {
            return Err(Error::MalformedKneading(format!(
                "({},{y}): a unimodal pair repeats the same block",
                d.first
            )));
        }
        Ok(KneadingData {
            second: Some(y),
            ..d
        })
    }

    pub fn pair(p: Sequence, q: Sequence) -> Result<KneadingData> {
        ensure_alphabet(&p, Alphabet::Bimodal)?;
        ensure_alphabet(&q, Alphabet::Bimodal)?;
        let (p, q) = (ensure_periodic(&p)?, ensure_periodic(&q)?);
        let well_formed = |s: &Sequence, end: Symbol| {
            s.last() == Some(end)
                && s.symbols()[..s.len() - 1]
                    .iter()
                    .all(|x| !x.is_critical())
        };
        if !well_formed(&p, Symbol::A) || !well_formed(&q, Symbol::B) {
            return Err(Error::MalformedKneading(format!(
                "({p},{q}): expected a pair of the form (..A, ..B)"
            )));
        }
        Ok(KneadingData {
            kind: KneadingKind::BimodalPair,
            first: p,
            second: Some(q),
        })
    }

    /// Symmetric pair `(P, conj P)`.
    pub fn symmetric_pair(p: Sequence) -> Result<KneadingData> {
        let q = p.conjugate()?;
        KneadingData::pair(p, q)
    }

    pub fn doubly_stable(s: Sequence) -> Result<KneadingData> {
        ensure_alphabet(&s, Alphabet::Bimodal)?;
        let s = ensure_periodic(&s)?;
        if s.last() != Some(Symbol::A) || s.count(Symbol::A) != 1 || s.count(Symbol::B) != 1 {
            return Err(Error::MalformedKneading(format!(
                "{s}: a doubly stable orbit contains one B and ends in its only A"
            )));
        }
        Ok(KneadingData {
            kind: KneadingKind::DoublyStable,
            first: s,
            second: None,
        })
    }

    pub fn factor_word(g: Sequence) -> Result<KneadingData> {
        ensure_alphabet(&g, Alphabet::Factor)?;
        Ok(KneadingData {
            kind: KneadingKind::FactorWord,
            first: g.with_periodic(false)?,
            second: None,
        })
    }

    pub fn factor_pair(x: Sequence, y: Sequence) -> Result<KneadingData> {
        ensure_alphabet(&x, Alphabet::Factor)?;
        ensure_alphabet(&y, Alphabet::Factor)?;
        Ok(KneadingData {
            kind: KneadingKind::FactorPair,
            first: x.with_periodic(false)?,
            second: Some(y.with_periodic(false)?),
        })
    }

    pub fn kind(&self) -> KneadingKind {
        self.kind
    }

    pub fn first(&self) -> &Sequence {
        &self.first
    }

    pub fn second(&self) -> Option<&Sequence> {
        self.second.as_ref()
    }

    pub fn is_bimodal(&self) -> bool {
        matches!(
            self.kind,
            KneadingKind::BimodalPair | KneadingKind::DoublyStable
        )
    }

    /// Index just after the `B` of a doubly stable orbit: the `c₂` sequence
    /// is the orbit shifted by this amount.
    pub fn split(&self) -> Option<usize> {
        match self.kind {
            KneadingKind::DoublyStable => self
                .first
                .symbols()
                .iter()
                .position(|&s| s == Symbol::B)
                .map(|i| i + 1),
            _ => None,
        }
    }

    /// The kneading sequences of the two critical points, `(P, Q)`.
    pub fn critical_sequences(&self) -> Result<(Sequence, Sequence)> {
        match self.kind {
            KneadingKind::BimodalPair => Ok((
                self.first.clone(),
                self.second.clone().expect("pair has a second component"),
            )),
            KneadingKind::DoublyStable => {
                let q = self.first.shift(self.split().expect("orbit contains B"))?;
                Ok((self.first.clone(), q))
            }
            _ => Err(Error::MalformedKneading(format!(
                "{self} is not bimodal kneading data"
            ))),
        }
    }

    /// Whether the datum is invariant under `x -> -x`.
    pub fn is_symmetric(&self) -> bool {
        match self.kind {
            KneadingKind::BimodalPair => {
                self.first.conjugate().ok().as_ref() == self.second.as_ref()
            }
            KneadingKind::DoublyStable => {
                let split = self.split().expect("orbit contains B");
                2 * split == self.first.len()
                    && self.first.conjugate().ok() == self.first.shift(split).ok()
            }
            _ => false,
        }
    }

    /// Every point of the periodic orbit(s), as itineraries.
    pub fn orbit_points(&self) -> Result<Vec<Sequence>> {
        match self.kind {
            KneadingKind::Unimodal | KneadingKind::DoublyStable => Ok(self.first.rotations()),
            KneadingKind::BimodalPair => {
                let mut pts = self.first.rotations();
                pts.extend(self.second.as_ref().expect("pair").rotations());
                Ok(pts)
            }
            KneadingKind::FactorPair | KneadingKind::FactorWord => Err(Error::TypeMismatch(
                format!("{self} is a factor word, not an orbit"),
            )),
        }
    }

    /// The symmetric datum's half block `P^(p-1)` (everything before the
    /// first critical symbol).
    pub fn half_block(&self) -> Result<Sequence> {
        let s = &self.first;
        let end = s
            .symbols()
            .iter()
            .position(|x| x.is_critical())
            .expect("kneading blocks contain a critical symbol");
        Sequence::finite(s.symbols()[..end].to_vec(), s.alphabet())
    }
}

impl fmt::Display for KneadingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.second {
            Some(q) => write!(f, "({},{})", self.first, q),
            None => write!(f, "{}", self.first),
        }
    }
}

impl Serialize for KneadingData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn offset_error(e: Error, offset: usize) -> Error {
    match e {
        Error::UnknownSymbol { index, ch } => Error::UnknownSymbol {
            index: index + offset,
            ch,
        },
        Error::AlphabetMix {
            index,
            ch,
            alphabet,
        } => Error::AlphabetMix {
            index: index + offset,
            ch,
            alphabet,
        },
        other => other,
    }
}

fn parse_component(text: &str, offset: usize, alphabet: Alphabet) -> Result<Sequence> {
    let lead = text.chars().take_while(|c| c.is_whitespace()).count();
    Sequence::parse(text, alphabet, true).map_err(|e| offset_error(e, offset + lead))
}

/// Parse `(P,Q)` or a single word, inferring both the alphabet and the kind.
///
/// A lone bimodal word ending in `A` with no `B` stands for the symmetric
/// pair `(P, conj P)`; one that also contains `B` is a doubly stable orbit.
pub fn parse_kneading(text: &str) -> Result<KneadingData> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::EmptyInput);
    }
    let base = text.chars().take_while(|c| c.is_whitespace()).count();
    if let Some(rest) = trimmed.strip_prefix('(') {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::Syntax {
            offset: base + trimmed.chars().count(),
            message: "expected ')'".into(),
        })?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Syntax {
                offset: base + 1,
                message: "a pair has exactly two components".into(),
            });
        }
        let second_offset = base + 1 + parts[0].chars().count() + 1;
        let alphabet = match (Alphabet::detect(parts[0]), Alphabet::detect(parts[1])) {
            (Alphabet::Factor, _) | (_, Alphabet::Factor) => Alphabet::Factor,
            (a, _) => a,
        };
        let p = parse_component(parts[0], base + 1, alphabet)?;
        let q = parse_component(parts[1], second_offset, alphabet)?;
        return match alphabet {
            Alphabet::Unimodal => KneadingData::unimodal_pair(p, q),
            Alphabet::Bimodal => KneadingData::pair(p, q),
            Alphabet::Factor => KneadingData::factor_pair(p, q),
        };
    }
    let alphabet = Alphabet::detect(trimmed);
    let s = parse_component(trimmed, base, alphabet)?;
    match alphabet {
        Alphabet::Unimodal => KneadingData::unimodal(s),
        Alphabet::Factor => KneadingData::factor_word(s),
        Alphabet::Bimodal if s.count(Symbol::B) > 0 => KneadingData::doubly_stable(s),
        Alphabet::Bimodal => KneadingData::symmetric_pair(s),
    }
}

impl FromStr for KneadingData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_kneading(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let d = parse_kneading("(RMMA,LMMB)").unwrap();
        assert_eq!(d.kind(), KneadingKind::BimodalPair);
        assert!(d.is_symmetric());
        assert_eq!(d.to_string(), "(RMMA,LMMB)");

        let d = parse_kneading("RBLA").unwrap();
        assert_eq!(d.kind(), KneadingKind::DoublyStable);
        assert!(d.is_symmetric());
        assert_eq!(d.split(), Some(2));
        let (p, q) = d.critical_sequences().unwrap();
        assert_eq!((p.to_string(), q.to_string()), ("RBLA".into(), "LARB".into()));

        assert_eq!(parse_kneading("rlc").unwrap().kind(), KneadingKind::Unimodal);
        assert_eq!(parse_kneading("(rlc,rlc)").unwrap().to_string(), "(rlc,rlc)");
        assert_eq!(parse_kneading("UBA").unwrap().kind(), KneadingKind::FactorWord);
        assert_eq!(parse_kneading("(UA, LB)").unwrap().kind(), KneadingKind::FactorPair);
        assert_eq!(parse_kneading("(C,B)").unwrap().to_string(), "(C,B)");
        assert_eq!(parse_kneading("RMMA").unwrap().to_string(), "(RMMA,LMMB)");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_kneading("(RMMA,LMMA)"),
            Err(Error::MalformedKneading(_))
        ));
        assert!(matches!(parse_kneading("(RA,LB"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_kneading("(RA,LB,M)"), Err(Error::Syntax { .. })));
        assert_eq!(
            parse_kneading("(RA,LX)"),
            Err(Error::UnknownSymbol { index: 5, ch: 'X' })
        );
        assert!(matches!(parse_kneading("rlcl"), Err(Error::MalformedKneading(_))));
        assert!(matches!(parse_kneading("(rlc,rc)"), Err(Error::MalformedKneading(_))));
        assert_eq!(parse_kneading("  "), Err(Error::EmptyInput));
    }

    #[test]
    fn asymmetric_doubly_stable() {
        let d = parse_kneading("RLBLMA").unwrap();
        assert!(!d.is_symmetric());
        assert_eq!(d.critical_sequences().unwrap().1.to_string(), "LMARLB");
    }
}
