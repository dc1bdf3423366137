//! Triangle shapes, their Hermitian Gram forms, and signatures under every
//! Galois embedding.

mod form;
mod matrix;
mod shape;

pub use form::{closed_form_det, det_form, gram_form, gram_form_at, signature_at, triangle_exists, HermitianForm3, Signature};
pub use matrix::Mat3;
pub use shape::{normalize_psi, Angle, ShapeJson, TriangleShape};

pub(crate) use form::FormInvariants;
pub(crate) use shape::lcm_level;
