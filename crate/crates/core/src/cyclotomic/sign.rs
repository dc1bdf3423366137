//! Numeric embeddings and certified signs of real elements.
//!
//! A sign is only reported once the evaluation error budget
//! (Σ|c_k| times the per-term error, plus summation error) is strictly below
//! the magnitude of the computed value. Zero is decided exactly from the
//! canonical form and never numerically.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, RoundingMode, Sign as BfSign};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::{is_unit, CycElem};
use crate::error::FieldError;

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            -1 => Some(Sign::Negative),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Positive),
            _ => None,
        }
    }

    pub(crate) fn of_f64(v: f64) -> Self {
        match v.partial_cmp(&0.0) {
            Some(Ordering::Less) => Sign::Negative,
            Some(Ordering::Greater) => Sign::Positive,
            _ => Sign::Zero,
        }
    }
}

/// Bound on |cos(2πj/L) − table entry|; the table is built as cos(τ·j/L)
/// in double precision (argument error ≤ 3u·2π, libm error ≤ 1 ulp).
const TABLE_ERR: f64 = 1e-14;
const UNIT_ROUNDOFF: f64 = f64::EPSILON;

/// Σ c_k exp(2πi k m / L), for cross-validation.
///
/// # Panics
///
/// Panics if a coefficient does not fit in an `f64`.
pub fn numeric_embed(x: &CycElem, m: u32) -> Complex64 {
    let ctx = x.ctx();
    let l = ctx.level as u64;
    let den = x.denominator().to_f64().expect("denominator overflows f64");
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = ((k as u64 * m as u64) % l) as usize;
        let c = c.to_f64().expect("coefficient overflows f64");
        acc += Complex64::new(c * ctx.cos_table[j], c * ctx.sin_table[j]);
    }
    acc / den
}

/// Double-precision value of σ_m(x) (real part) with a rigorous error bound.
fn real_embed_f64(x: &CycElem, m: u32) -> Option<(f64, f64)> {
    let ctx = x.ctx();
    let l = ctx.level as u64;
    let den = x.denominator().to_f64()?;
    if !den.is_finite() {
        return None;
    }
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    let mut terms = 0usize;
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.to_f64()?;
        if !c.is_finite() {
            return None;
        }
        let j = ((k as u64 * m as u64) % l) as usize;
        value += c * ctx.cos_table[j];
        abs_sum += c.abs();
        terms += 1;
    }
    let value = value / den;
    let abs_sum = abs_sum / den;
    // coefficient conversion (2u), table error, product and summation (terms + 2)u
    let err = abs_sum * (TABLE_ERR + (terms as f64 + 4.0) * UNIT_ROUNDOFF) * 2.0;
    if !value.is_finite() || !err.is_finite() {
        return None;
    }
    Some((value, err))
}

fn bigint_to_bf(v: &BigInt, p: usize, rm: RoundingMode) -> BigFloat {
    let s = v.to_str_radix(16);
    let (neg, digits) = match s.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, s.as_str()),
    };
    let mut out = BigFloat::from_u8(0, p);
    let chunk = BigFloat::from_u64(1 << 32, p);
    // base-2^32 Horner evaluation, exact while p covers the bit length
    let bytes = digits.as_bytes();
    let head = bytes.len() % 8;
    let mut pieces: Vec<&[u8]> = Vec::new();
    if head > 0 {
        pieces.push(&bytes[..head]);
    }
    pieces.extend(bytes[head..].chunks(8));
    for piece in pieces {
        let word = u64::from_str_radix(std::str::from_utf8(piece).expect("hex"), 16).expect("hex");
        out = out
            .mul(&chunk, p, rm)
            .add(&BigFloat::from_u64(word, p), p, rm);
    }
    if neg {
        out.neg()
    } else {
        out
    }
}

/// Evaluates σ_m(x) at `p` bits; returns (value, error bound).
fn real_embed_bigfloat(x: &CycElem, m: u32, p: usize) -> (BigFloat, BigFloat) {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("astro-float constants");
    let work = p + 64;
    let ctx = x.ctx();
    let l = ctx.level as u64;
    let two_pi_over_l = cc
        .pi(work, rm)
        .mul(&BigFloat::from_u8(2, work), work, rm)
        .div(&BigFloat::from_u64(l, work), work, rm);
    let den = bigint_to_bf(x.denominator(), work.max(x.denominator().bits() as usize + 8), rm);
    let mut value = BigFloat::from_u8(0, work);
    let mut abs_sum = BigFloat::from_u8(0, work);
    let mut terms = 0u64;
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = (k as u64 * m as u64) % l;
        let angle = two_pi_over_l.mul(&BigFloat::from_u64(j, work), work, rm);
        let cosv = angle.cos(work, rm, &mut cc);
        let cbf = bigint_to_bf(c, work.max(c.bits() as usize + 8), rm);
        value = value.add(&cbf.mul(&cosv, work, rm), work, rm);
        let abs_c = if cbf.is_negative() { cbf.neg() } else { cbf.clone() };
        abs_sum = abs_sum.add(&abs_c, work, rm);
        terms += 1;
    }
    let value = value.div(&den, work, rm);
    let abs_sum = abs_sum.div(&den, work, rm);
    // every operation is accurate to well within 2^{-(p+32)} relative; budget 2^{-p} per term
    let mut eps = BigFloat::from_u8(1, work);
    eps.set_exponent(-(p as i32) + 1);
    let err = abs_sum
        .mul(&eps, work, rm)
        .mul(&BigFloat::from_u64(terms + 4, work), work, rm);
    (value, err)
}

fn bf_sign(v: &BigFloat) -> Sign {
    if v.is_zero() {
        Sign::Zero
    } else if v.sign() == Some(BfSign::Neg) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// Certified sign of σ_m(x) for an element whose image is real.
///
/// Callers guarantee that σ_m(x) is real (x real suffices).
pub(crate) fn sign_at_unchecked(x: &CycElem, m: u32) -> Sign {
    if x.is_zero() {
        return Sign::Zero;
    }
    if let Some(q) = x.as_rational() {
        return if q.is_negative() { Sign::Negative } else { Sign::Positive };
    }
    if let Some((v, err)) = real_embed_f64(x, m) {
        if v.abs() > err {
            return Sign::of_f64(v);
        }
    }
    let mut p = 128;
    loop {
        let (v, err) = real_embed_bigfloat(x, m, p);
        // BigFloat::abs_cmp compares signed values, so take |v| by hand
        let magnitude = if v.is_negative() { v.neg() } else { v.clone() };
        if magnitude.cmp(&err).is_some_and(|c| c > 0) {
            return bf_sign(&v);
        }
        p *= 2;
    }
}

/// Certified sign of x under the principal embedding ζ_L ↦ exp(2πi/L).
pub fn sign_real(x: &CycElem) -> Result<Sign, FieldError> {
    if !x.is_real() {
        return Err(FieldError::NotReal);
    }
    Ok(sign_at_unchecked(x, 1))
}

/// Certified sign of σ_m(x) for real x.
pub fn sign_at_embedding(x: &CycElem, m: u32) -> Result<Sign, FieldError> {
    if !is_unit(m, x.level()) {
        return Err(FieldError::NotAUnit(m, x.level()));
    }
    if !x.is_real() {
        return Err(FieldError::NotReal);
    }
    Ok(sign_at_unchecked(x, m % x.level()))
}

/// True when σ_m(x) and x are certified to differ numerically.
pub(crate) fn certainly_moved(x: &CycElem, m: u32) -> bool {
    let ctx = x.ctx();
    let l = ctx.level as u64;
    let Some(den) = x.denominator().to_f64().filter(|d| d.is_finite()) else {
        return false;
    };
    let mut diff = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut terms = 0usize;
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let Some(c) = c.to_f64().filter(|c| c.is_finite()) else {
            return false;
        };
        let j1 = k % ctx.level as usize;
        let jm = ((k as u64 * m as u64) % l) as usize;
        diff += Complex64::new(
            c * (ctx.cos_table[jm] - ctx.cos_table[j1]),
            c * (ctx.sin_table[jm] - ctx.sin_table[j1]),
        );
        abs_sum += c.abs();
        terms += 1;
    }
    let diff = diff / den;
    let err = 2.0 * (abs_sum / den) * (2.0 * TABLE_ERR + (terms as f64 + 4.0) * UNIT_ROUNDOFF) * 2.0;
    diff.norm() > err
}
