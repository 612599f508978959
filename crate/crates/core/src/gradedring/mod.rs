//! Graded polynomial arithmetic over `F_p`, the vector-space model of
//! `R = Q/I` in each internal degree, and graded free modules.

mod module;
mod poly;
mod ring;

pub use module::{graded_component_matrix, GradedFree, GradedMap, Layout, PolyMatrix};
pub use poly::{parse_poly, Monomial, ParseError, Poly, MAX_VARS};
pub use ring::{RingCtx, RingMode, MAX_DEGREE};
