//! Minimal graded free resolutions over `Q = k[x_1..x_n]` and `R = Q/I`,
//! A∞-algebra and A∞-module structures on them, the A∞ bar resolution,
//! syzygy complexes, the bar-filtration spectral sequence, and Golod
//! verdicts, all computed exactly over a prime field.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod ainf;
pub mod barres;
pub mod exactla;
pub mod fixtures;
pub mod golod;
pub mod gradedring;
pub mod resolve;
pub mod series;
pub mod specseq;
pub mod syzygy;

use alloc::string::String;

pub use exactla::{Fp, KMatrix, DEFAULT_PRIME};
pub use gradedring::{GradedFree, GradedMap, Monomial, Poly, PolyMatrix, RingCtx, RingMode};
pub use resolve::{minimal_resolution, GradedComplex, Presentation, Resolution};
pub use series::PowerSeries;

/// Errors raised by the engine. Verification failures are not errors; they
/// are reported in the corresponding report types.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] gradedring::ParseError),
    #[error("at most {max} variables are supported, got {0}", max = gradedring::MAX_VARS)]
    TooManyVariables(usize),
    #[error("{what} is not homogeneous")]
    Inhomogeneous { what: String },
    #[error("matrix shape mismatch: expected {expected:?}, found {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("presentation is not minimal: generator {generator} is redundant")]
    NonMinimalPresentation { generator: usize },
    #[error("module is not annihilated by the ideal: generator {generator}, ideal generator {ideal_generator}")]
    NotAnRModule {
        generator: usize,
        ideal_generator: usize,
    },
    #[error("requested degree {requested} but only {available} is available")]
    CapExceeded { requested: usize, available: usize },
    #[error("no lift exists: {0}")]
    Unsolvable(String),
    #[error("input is not minimal: {0}")]
    NotMinimal(String),
    #[error("ideal generator {generator} is not in the square of the maximal ideal")]
    IdealNotInSquare { generator: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
