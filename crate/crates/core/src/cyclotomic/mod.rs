//! Exact arithmetic in cyclotomic fields Q(ζ_L), their Galois action, and
//! certified signs of real elements.
//!
//! Every quantity attached to one candidate group is expressed at a single
//! even level L, so one Galois group (Z/L)^× governs all of them.

mod field;
mod galois;
mod poly;
mod serde_impl;
mod sign;

pub use field::{common_level, CycElem};
pub use galois::{apply_galois, conjugate, fixes_all, subfield_degree, GaloisAut, Stabilizer};
pub use poly::{cyclotomic_polynomial, memoized_polynomials, seed_polynomial};
pub use serde_impl::CycElemJson;
pub use sign::{numeric_embed, sign_at_embedding, sign_real, Sign};

pub(crate) use sign::sign_at_unchecked;

use crate::error::FieldError;
use field::half_turn_exponent;
use num_rational::BigRational;

/// e^{iπa/b} as an element of Q(ζ_L); requires 2b | L.
pub fn root_of_unity(a: i64, b: i64, level: u32) -> Result<CycElem, FieldError> {
    let e = half_turn_exponent(a, b, level)?;
    CycElem::root_power(level, e)
}

/// cos(aπ/b) = (ζ^e + ζ^{−e})/2 with ζ^e = e^{iπa/b}; requires 2b | L.
pub fn cos_pi_rational(a: i64, b: i64, level: u32) -> Result<CycElem, FieldError> {
    let e = half_turn_exponent(a, b, level)?;
    let half = BigRational::new(1.into(), 2.into());
    CycElem::from_root_sum(level, &[(e, half.clone()), (-e, half)])
}
