use std::fmt;

use serde::Serialize;

/// Which family of words a symbol (or a sequence) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// `L A M B R`: laps and critical points of a bimodal map.
    Bimodal,
    /// `l c r`: laps and critical point of a unimodal map with a maximum.
    Unimodal,
    /// `L A M B R C U`: two-letter blocks of a unimodal itinerary, used for
    /// the second factor of the star product.
    Factor,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Bimodal => "bimodal",
            Alphabet::Unimodal => "unimodal",
            Alphabet::Factor => "factor",
        })
    }
}

/// Sign of a symbol: `+1` on increasing laps, `-1` on decreasing laps and
/// `0` at a critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        self as i8
    }

    pub fn times(self, other: Sign) -> Sign {
        match self.as_i8() * other.as_i8() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symbol {
    L,
    A,
    M,
    B,
    R,
    /// `rc` block of the factor alphabet.
    C,
    /// `rl` block of the factor alphabet.
    U,
    /// Unimodal `l`.
    UniL,
    /// Unimodal `c`.
    UniC,
    /// Unimodal `r`.
    UniR,
}

impl Symbol {
    pub const BIMODAL: [Symbol; 5] = [Symbol::L, Symbol::A, Symbol::M, Symbol::B, Symbol::R];
    pub const UNIMODAL: [Symbol; 3] = [Symbol::UniL, Symbol::UniC, Symbol::UniR];
    pub const FACTOR: [Symbol; 7] = [
        Symbol::L,
        Symbol::A,
        Symbol::M,
        Symbol::B,
        Symbol::R,
        Symbol::C,
        Symbol::U,
    ];

    pub fn from_char(ch: char) -> Option<Symbol> {
        Some(match ch {
            'L' => Symbol::L,
            'A' => Symbol::A,
            'M' => Symbol::M,
            'B' => Symbol::B,
            'R' => Symbol::R,
            'C' => Symbol::C,
            'U' => Symbol::U,
            'l' | 'ℓ' => Symbol::UniL,
            'c' => Symbol::UniC,
            'r' => Symbol::UniR,
            _ => return None,
        })
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::L => 'L',
            Symbol::A => 'A',
            Symbol::M => 'M',
            Symbol::B => 'B',
            Symbol::R => 'R',
            Symbol::C => 'C',
            Symbol::U => 'U',
            Symbol::UniL => 'l',
            Symbol::UniC => 'c',
            Symbol::UniR => 'r',
        }
    }

    pub fn belongs_to(self, alphabet: Alphabet) -> bool {
        match alphabet {
            Alphabet::Bimodal => Self::BIMODAL.contains(&self),
            Alphabet::Unimodal => Self::UNIMODAL.contains(&self),
            Alphabet::Factor => Self::FACTOR.contains(&self),
        }
    }

    /// The narrowest alphabet containing the symbol.
    pub fn home_alphabet(self) -> Alphabet {
        match self {
            Symbol::C | Symbol::U => Alphabet::Factor,
            Symbol::UniL | Symbol::UniC | Symbol::UniR => Alphabet::Unimodal,
            _ => Alphabet::Bimodal,
        }
    }

    /// Orientation sign of the lap the symbol names.
    ///
    /// Factor letters encode two unimodal letters, so their sign is the
    /// product of the two (which agrees with the bimodal sign on `L A M B R`).
    pub fn epsilon(self) -> Sign {
        match self {
            Symbol::L | Symbol::R | Symbol::UniL => Sign::Positive,
            Symbol::M | Symbol::U | Symbol::UniR => Sign::Negative,
            Symbol::A | Symbol::B | Symbol::C | Symbol::UniC => Sign::Zero,
        }
    }

    pub fn is_critical(self) -> bool {
        self.epsilon() == Sign::Zero
    }

    /// Position in the base order `L < A < M < B < R` (bimodal) or
    /// `l < c < r` (unimodal). Factor-only letters carry no order.
    pub fn rank(self) -> Option<u8> {
        match self {
            Symbol::L | Symbol::UniL => Some(0),
            Symbol::A | Symbol::UniC => Some(1),
            Symbol::M | Symbol::UniR => Some(2),
            Symbol::B => Some(3),
            Symbol::R => Some(4),
            Symbol::C | Symbol::U => None,
        }
    }

    /// Image under `x -> -x`: `L <-> R`, `A <-> B`, `M` fixed.
    pub fn conjugate(self) -> Option<Symbol> {
        match self {
            Symbol::L => Some(Symbol::R),
            Symbol::R => Some(Symbol::L),
            Symbol::A => Some(Symbol::B),
            Symbol::B => Some(Symbol::A),
            Symbol::M => Some(Symbol::M),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_match_lap_orientation() {
        assert_eq!(Symbol::L.epsilon(), Sign::Positive);
        assert_eq!(Symbol::R.epsilon(), Sign::Positive);
        assert_eq!(Symbol::M.epsilon(), Sign::Negative);
        assert_eq!(Symbol::A.epsilon(), Sign::Zero);
        assert_eq!(Symbol::B.epsilon(), Sign::Zero);
        assert_eq!(Symbol::UniL.epsilon(), Sign::Positive);
        assert_eq!(Symbol::UniR.epsilon(), Sign::Negative);
        assert_eq!(Symbol::UniC.epsilon(), Sign::Zero);
    }

    #[test]
    fn factor_sign_is_product_of_blocks() {
        // U = rl, C = rc
        assert_eq!(Symbol::U.epsilon(), Sign::Negative.times(Sign::Positive));
        assert_eq!(Symbol::C.epsilon(), Sign::Negative.times(Sign::Zero));
    }

    #[test]
    fn base_order() {
        let ranks: Vec<_> = Symbol::BIMODAL.iter().map(|s| s.rank().unwrap()).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4]);
        assert!(Symbol::UniL.rank() < Symbol::UniC.rank());
        assert!(Symbol::UniC.rank() < Symbol::UniR.rank());
    }

    #[test]
    fn char_round_trip() {
        for s in Symbol::FACTOR.iter().chain(Symbol::UNIMODAL.iter()) {
            assert_eq!(Symbol::from_char(s.to_char()), Some(*s));
        }
        assert_eq!(Symbol::from_char('X'), None);
    }
}
