//! Symbolic dynamics of symmetric bimodal interval maps.

pub mod admissibility;
pub mod cubic;
pub mod error;
pub mod kneading;
pub mod markov;
pub mod sequence;
pub mod star;
pub mod symbol;
pub mod trees;

pub use error::{Error, ErrorClass, Result};
pub use kneading::{parse_kneading, KneadingData, KneadingKind};
pub use sequence::{compare, invariant_coordinate, Parity, Sequence};
pub use symbol::{Alphabet, Sign, Symbol};
