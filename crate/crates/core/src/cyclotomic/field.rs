//! Elements of Q(ζ_L) in the power basis reduced modulo Φ_L.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::cyclotomic_polynomial_shared;
use crate::error::FieldError;
use crate::numtheory::{euler_phi, gcd};

/// Per-level data shared by every element of Q(ζ_L).
pub(crate) struct LevelCtx {
    pub(crate) level: u32,
    pub(crate) degree: usize,
    /// Nonzero non-leading terms of Φ_L as (power, coefficient).
    phi_terms: Vec<(usize, i64)>,
    /// cos(2πj/L) and sin(2πj/L) for 0 ≤ j < L.
    pub(crate) cos_table: Vec<f64>,
    pub(crate) sin_table: Vec<f64>,
}

impl LevelCtx {
    fn new(level: u32) -> Self {
        let phi = cyclotomic_polynomial_shared(level);
        let degree = phi.len() - 1;
        debug_assert_eq!(degree as u64, euler_phi(level as u64));
        let phi_terms = phi[..degree]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let step = std::f64::consts::TAU / level as f64;
        let (cos_table, sin_table) = (0..level)
            .map(|j| {
                let a = step * j as f64;
                (a.cos(), a.sin())
            })
            .unzip();
        Self {
            level,
            degree,
            phi_terms,
            cos_table,
            sin_table,
        }
    }

    /// Reduces a dense vector in Z[x] (any length) modulo x^L − 1 and then Φ_L.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let l = self.level as usize;
        if v.len() > l {
            let tail = v.split_off(l);
            for (i, c) in tail.into_iter().enumerate() {
                if !c.is_zero() {
                    v[i % l] += c;
                }
            }
        }
        let n = self.degree;
        for i in (n..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            let base = i - n;
            for &(j, p) in &self.phi_terms {
                v[base + j] -= &c * p;
            }
        }
        v.resize(n, BigInt::zero());
        v
    }
}

fn ctx_cache() -> &'static RwLock<HashMap<u32, Arc<LevelCtx>>> {
    static CTX: OnceLock<RwLock<HashMap<u32, Arc<LevelCtx>>>> = OnceLock::new();
    CTX.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn level_ctx(level: u32) -> Result<Arc<LevelCtx>, FieldError> {
    if level == 0 || level % 2 == 1 {
        return Err(FieldError::InvalidLevel(level));
    }
    if let Some(c) = ctx_cache().read().expect("ctx cache poisoned").get(&level) {
        return Ok(Arc::clone(c));
    }
    let ctx = Arc::new(LevelCtx::new(level));
    let mut guard = ctx_cache().write().expect("ctx cache poisoned");
    Ok(Arc::clone(guard.entry(level).or_insert(ctx)))
}

/// An element of the cyclotomic field Q(ζ_L), L even.
///
/// Stored as an integer coefficient vector over the power basis
/// {1, ζ, …, ζ^{φ(L)−1}} together with one positive common denominator,
/// with gcd(coefficients, denominator) = 1. This form is unique, so
/// structural equality is field equality.
#[derive(Clone)]
pub struct CycElem {
    ctx: Arc<LevelCtx>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycElem {
    fn from_parts(ctx: Arc<LevelCtx>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree);
        let mut e = Self { ctx, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub(crate) fn ctx(&self) -> &Arc<LevelCtx> {
        &self.ctx
    }

    pub fn zero(level: u32) -> Result<Self, FieldError> {
        let ctx = level_ctx(level)?;
        let n = ctx.degree;
        Ok(Self::from_parts(ctx, vec![BigInt::zero(); n], BigInt::one()))
    }

    pub fn one(level: u32) -> Result<Self, FieldError> {
        Self::from_rational(level, BigRational::one())
    }

    pub fn from_integer(level: u32, v: i64) -> Result<Self, FieldError> {
        Self::from_rational(level, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(level: u32, q: BigRational) -> Result<Self, FieldError> {
        let ctx = level_ctx(level)?;
        let mut num = vec![BigInt::zero(); ctx.degree];
        num[0] = q.numer().clone();
        Ok(Self::from_parts(ctx, num, q.denom().clone()))
    }

    /// Builds an element from power-basis coefficients.
    pub fn from_coeffs(level: u32, coeffs: &[BigRational]) -> Result<Self, FieldError> {
        let ctx = level_ctx(level)?;
        if coeffs.len() != ctx.degree {
            return Err(FieldError::Malformed(format!(
                "expected {} coefficients at level {level}, got {}",
                ctx.degree,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(ctx, num, den))
    }

    /// ζ_L^e for any integer exponent e.
    pub fn root_power(level: u32, e: i64) -> Result<Self, FieldError> {
        let ctx = level_ctx(level)?;
        let l = level as i64;
        let e = e.rem_euclid(l) as usize;
        let mut v = vec![BigInt::zero(); (e + 1).max(ctx.degree)];
        v[e] = BigInt::one();
        let num = ctx.reduce(v);
        Ok(Self::from_parts(ctx, num, BigInt::one()))
    }

    /// Builds Σ c_e ζ_L^e from arbitrary (possibly repeated) exponents.
    pub fn from_root_sum(level: u32, terms: &[(i64, BigRational)]) -> Result<Self, FieldError> {
        let ctx = level_ctx(level)?;
        let l = level as usize;
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut v = vec![BigInt::zero(); l];
        for (e, c) in terms {
            let idx = e.rem_euclid(l as i64) as usize;
            v[idx] += c.numer() * (&den / c.denom());
        }
        let num = ctx.reduce(v);
        Ok(Self::from_parts(ctx, num, den))
    }

    pub fn level(&self) -> u32 {
        self.ctx.level
    }

    /// φ(L), the length of the coefficient vector.
    pub fn degree(&self) -> usize {
        self.ctx.degree
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_level(&self, other: &Self) -> Result<(), FieldError> {
        if self.ctx.level == other.ctx.level {
            Ok(())
        } else {
            Err(FieldError::LevelMismatch(self.ctx.level, other.ctx.level))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_level(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_level(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let rhs = b * &fb;
                if negate {
                    a * &fa - rhs
                } else {
                    a * &fa + rhs
                }
            })
            .collect();
        Self::from_parts(Arc::clone(&self.ctx), num, den)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_level(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::from_parts(
                Arc::clone(&self.ctx),
                vec![BigInt::zero(); self.ctx.degree],
                BigInt::one(),
            ));
        }
        let n = self.ctx.degree;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        let rhs: Vec<(usize, &BigInt)> = other
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                prod[i + j] += a * b;
            }
        }
        let num = self.ctx.reduce(prod);
        Ok(Self::from_parts(Arc::clone(&self.ctx), num, &self.den * &other.den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(Arc::clone(&self.ctx), num, &self.den * q.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_parts(
            Arc::clone(&self.ctx),
            {
                let mut v = vec![BigInt::zero(); self.ctx.degree];
                v[0] = BigInt::one();
                v
            },
            BigInt::one(),
        );
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial_shared(self.ctx.level)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = poly_inverse_mod(&a, &modulus).ok_or(FieldError::DivisionByZero)?;
        let mut coeffs = inv;
        coeffs.resize(self.ctx.degree, BigRational::zero());
        let den = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<_> = coeffs.into_iter().map(|c| c * &den).collect();
        Self::from_coeffs(self.ctx.level, &coeffs)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_level(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Re-expresses the element in Q(ζ_{L′}) for a multiple L′ of L.
    pub fn lift(&self, target: u32) -> Result<Self, FieldError> {
        let level = self.ctx.level;
        if target == 0 || target % level != 0 {
            return Err(FieldError::LevelMismatch(level, target));
        }
        if target == level {
            return Ok(self.clone());
        }
        let ctx = level_ctx(target)?;
        let step = (target / level) as usize;
        let mut v = vec![BigInt::zero(); (self.ctx.degree * step).max(ctx.degree)];
        for (k, c) in self.num.iter().enumerate() {
            v[k * step] = c.clone();
        }
        let num = ctx.reduce(v);
        Ok(Self::from_parts(ctx, num, self.den.clone()))
    }

    /// Image under ζ ↦ ζ^m. `m` need not be reduced but must be a unit mod L.
    pub(crate) fn galois_image(&self, m: u32) -> Self {
        let l = self.ctx.level as u64;
        let mut v = vec![BigInt::zero(); l as usize];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[((k as u64 * m as u64) % l) as usize] += c;
            }
        }
        let num = self.ctx.reduce(v);
        Self::from_parts(Arc::clone(&self.ctx), num, self.den.clone())
    }

    /// Complex conjugate, ζ ↦ ζ^{L−1}.
    pub fn conjugate(&self) -> Self {
        self.galois_image(self.ctx.level - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Real part (x + x̄)/2.
    pub fn real_part(&self) -> Self {
        let sum = self.add_unchecked(&self.conjugate(), false);
        sum.scale(&BigRational::new(1.into(), 2.into()))
    }
}

/// Inverse of `a` modulo `m` in Q[x]; `None` when gcd(a, m) ≠ 1.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }
    fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (vec![], trim(r));
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        (trim(q), trim(r))
    }
    fn sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = a.to_vec();
        let len = if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 };
        if out.len() < len {
            out.resize(len, BigRational::zero());
        }
        for (i, qi) in q.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                out[i + j] -= qi * bj;
            }
        }
        trim(out)
    }

    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.level == other.ctx.level && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycElem {}

impl Hash for CycElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.level.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem(L={}, {})", self.ctx.level, self)
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·ζ")?,
                _ => write!(f, "({c})·ζ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl<'a> $trait<&'a CycElem> for &'a CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &'a CycElem) -> CycElem {
                self.$call(rhs).expect("operands at different levels")
            }
        }
        impl $trait for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: CycElem) -> CycElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        let num = self.num.iter().map(|c| -c).collect();
        CycElem {
            ctx: Arc::clone(&self.ctx),
            num,
            den: self.den.clone(),
        }
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

/// ζ-exponent of e^{iπa/b} at level L, when 2b divides L.
pub(crate) fn half_turn_exponent(a: i64, b: i64, level: u32) -> Result<i64, FieldError> {
    if b <= 0 || (level as i64) % (2 * b) != 0 {
        return Err(FieldError::LevelMismatch(level, (2 * b.max(0)) as u32));
    }
    Ok((a * (level as i64 / (2 * b))).rem_euclid(level as i64))
}

/// Smallest even multiple of every entry.
pub fn common_level<I: IntoIterator<Item = u64>>(parts: I) -> u32 {
    let l = parts.into_iter().fold(2u64, crate::numtheory::lcm);
    u32::try_from(l).expect("level exceeds u32")
}

pub(crate) fn is_unit(m: u32, level: u32) -> bool {
    gcd(m as u64, level as u64) == 1
}
