use thiserror::Error;

use crate::symbol::Alphabet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants fall into three groups that the command-line front end maps onto
/// distinct exit codes: malformed input, a well-formed input whose
/// mathematical answer is negative, and numerical failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("unknown symbol {ch:?} at index {index}")]
    UnknownSymbol { index: usize, ch: char },
    #[error("symbol {ch:?} at index {index} is not in the {alphabet} alphabet")]
    AlphabetMix {
        index: usize,
        ch: char,
        alphabet: Alphabet,
    },
    #[error("expected a {expected} sequence, found a {found} sequence")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    #[error("shift {shift} is out of range for a finite block of length {len}")]
    ShiftOutOfRange { shift: usize, len: usize },
    #[error("sequence of length {len} cannot be expanded to {needed} symbols")]
    TooShort { needed: usize, len: usize },
    #[error("sequences differ only after a shared critical symbol (index {index})")]
    AmbiguousAfterCritical { index: usize },
    #[error("malformed kneading data: {0}")]
    MalformedKneading(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("{0} is not admissible")]
    NotAdmissible(String),
    #[error("{0} is not a node of the tree D1")]
    NotInD1(String),
    #[error("block {0:?} has no translation")]
    UntranslatableBlock(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("unsupported parity: {0}")]
    UnsupportedParity(String),
    #[error("symbol {symbol} may not occur in {context}")]
    ForbiddenSymbol { symbol: char, context: String },
    #[error("symbol {symbol} has no substitution in {context}")]
    UnsupportedSymbol { symbol: char, context: String },
    #[error("{0} is not a right factor (it does not lie in G or the duplicated unimodal set)")]
    NotAFactor(String),
    #[error("duplicate partition point {0}")]
    DuplicatePoint(String),
    #[error("degenerate partition: {0}")]
    DegeneratePartition(String),
    #[error("block decomposition failed: {0}")]
    BlockMismatch(String),
    #[error("illegal factor pair: {0}")]
    IllegalFactorPair(String),
    #[error("assembled matrix differs from the direct construction: {0}")]
    AssemblyMismatch(String),

    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("{method} disagrees with {other}: {a} vs {b}")]
    EstimatorDisagreement {
        method: &'static str,
        other: &'static str,
        a: f64,
        b: f64,
    },
    #[error("matrix order {order} exceeds the cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("point {0} lies outside [-1, 1]")]
    DomainExceeded(f64),
    #[error("no parameter bracket found for {0}")]
    NoBracket(String),
    #[error("itinerary mismatch: expected {expected}, found {found}")]
    ItineraryMismatch { expected: String, found: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Negative,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            EmptyInput
            | UnknownSymbol { .. }
            | AlphabetMix { .. }
            | AlphabetMismatch { .. }
            | ShiftOutOfRange { .. }
            | TooShort { .. }
            | AmbiguousAfterCritical { .. }
            | MalformedKneading(_)
            | Syntax { .. }
            | InvalidArgument(_)
            | OrderTooLarge { .. } => ErrorClass::Input,
            NotAdmissible(_)
            | NotInD1(_)
            | UntranslatableBlock(_)
            | TypeMismatch(_)
            | UnsupportedParity(_)
            | ForbiddenSymbol { .. }
            | UnsupportedSymbol { .. }
            | NotAFactor(_)
            | DuplicatePoint(_)
            | DegeneratePartition(_)
            | IllegalFactorPair(_) => ErrorClass::Negative,
            BlockMismatch(_)
            | AssemblyMismatch(_)
            | NonConvergence { .. }
            | EstimatorDisagreement { .. }
            | DomainExceeded(_)
            | NoBracket(_)
            | ItineraryMismatch { .. } => ErrorClass::Numerical,
        }
    }
}
