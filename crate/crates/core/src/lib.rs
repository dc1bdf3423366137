//! Exact arithmeticity obstructions for complex hyperbolic triangle groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclotomic`]: exact arithmetic in Q(ζ_L), the Galois action of
//!   (Z/L)^×, and certified signs of real elements;
//! * [`hermitian`]: the Gram form of a complex triangle, its determinant and
//!   its signature at every Galois embedding;
//! * [`triangle`]: candidate groups, their complex reflections and the field
//!   generators bounding the defining field E;
//! * [`arith`]: sign profiles, admissibility tests and the classification
//!   drivers (right triangles, nonuniform candidates, equilateral scan);
//! * [`cli`]: the `cxta` command-line front end.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod hermitian;
pub mod numtheory;
pub mod rational;
pub mod triangle;

pub use error::{FieldError, TriangleError};
