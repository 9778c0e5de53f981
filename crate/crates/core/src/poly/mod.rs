//! Sparse polynomials over the fixed variable spaces of the pipeline.

mod binary;
mod monomial;
mod multipoly;
mod space;
mod text;

pub use binary::{gcd_binary_forms, BinaryForm};
pub use monomial::{grevlex_compare, Monomial};
pub use multipoly::{Grading, MultiPoly, Multidegree};
pub use space::{SpaceKind, VarSpace};
pub use text::parse_poly;
