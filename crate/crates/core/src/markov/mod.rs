//! Markov partitions, transition matrices and their spectral data.

mod decompose;
mod matrix;
mod otimes;
mod poly;
mod primitive;
mod spectral;

pub use decompose::{decompose, verify_factorization, DecompositionReport, FactorizationReport};
pub use matrix::{markov_partition, transition_matrix, TransitionMatrix};
pub use otimes::{otimes, orbit_orientation};
pub use poly::{char_poly, IntPolynomial};
pub use primitive::{
    is_irreducibly_complex, is_irreducibly_complex_with_cap, is_primitive, DEFAULT_COMPLEXITY_CAP,
};
pub use spectral::{
    entropy, spectral_radius, PerronEstimator, PerronRegistry, PowerIteration, SturmBisection,
    DEFAULT_MAX_ITERATIONS, DEFAULT_TOL,
};
