//! Rees algebras of rational plane curves and of their lifts to rational
//! normal scrolls, computed with exact arithmetic.
//!
//! The pipeline starts from a parametrization `f = (f0, f1, f2)` of degree
//! `d`, computes its μ-basis `(p, q)`, splits `p` into `(A, B)`, and from
//! there builds the scroll ideal, the staircase monomial ideal, the explicit
//! generators of the space-curve Rees ideal, and the determinantal family of
//! the plane-curve Rees ideal together with the lifting congruences.

pub mod error;
pub mod field;
pub mod generators;
pub mod linalg;
pub mod mubasis;
pub mod oracle;
pub mod par;
pub mod plane_rees;
pub mod poly;
pub mod rees_space;
pub mod ringmaps;
pub mod scroll;
pub mod staircase;
