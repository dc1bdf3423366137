use std::fmt;
use std::str::FromStr;

use astro_float::{BigFloat, Consts, RoundingMode};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cos_pi_rational, sign_at_unchecked, CycElem, Sign};
use crate::error::{Result, TriangleError};
use crate::numtheory::{gcd, is_prime};

/// Jacobsthal's j(n): the least ℓ such that every ℓ consecutive integers
/// contain one coprime to n. Brute force over two periods.
pub fn jacobsthal(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(TriangleError::InvalidArgument("jacobsthal needs n ≥ 1".into()));
    }
    let mut run = 0u64;
    let mut longest = 0u64;
    for k in 1..=2 * n {
        if gcd(k, n) > 1 {
            run += 1;
            longest = longest.max(run);
        } else {
            run = 0;
        }
    }
    Ok(longest + 1)
}

/// The least prime not dividing n.
pub fn smallest_coprime_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(TriangleError::InvalidArgument("smallest_coprime_prime needs n ≥ 1".into()));
    }
    Ok((2..).find(|&p| is_prime(p) && n % p != 0).expect("primes are unbounded"))
}

/// Which angular invariants ψ = sπ/(12n) the scan evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SPolicy {
    /// s = 1.
    #[default]
    One,
    /// The s maximizing τ_p(det): τ_p(cos ψ) = ±cos(π/12n), signed like
    /// cos(pπ/n).
    Worst,
    /// Every s coprime to 12n in [1, 12n]; the row reports the largest sign.
    Exhaustive,
}

impl FromStr for SPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "one" => Ok(SPolicy::One),
            "worst" => Ok(SPolicy::Worst),
            "exhaustive" => Ok(SPolicy::Exhaustive),
            _ => Err(format!("unknown s policy {s:?}; expected one, worst or exhaustive")),
        }
    }
}

impl fmt::Display for SPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SPolicy::One => "one",
            SPolicy::Worst => "worst",
            SPolicy::Exhaustive => "exhaustive",
        })
    }
}

/// The scan result for one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilateralRow {
    pub n: u64,
    pub p: u64,
    /// The s that produced `sign` (the maximizing s in exhaustive mode).
    pub s: u64,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilateralScan {
    pub n_min: u64,
    pub n_max: u64,
    pub policy: SPolicy,
    pub rows: Vec<EquilateralRow>,
    /// Every n whose sign is not −1.
    pub survivors: Vec<u64>,
    /// The largest survivor; every larger n in range has sign −1.
    pub threshold: Option<u64>,
}

/// 1 − 3cos²(aπ/n) + 2cos(bπ/(12n))cos³(aπ/n).
fn value_f64(n: u64, a: u64, b: u64) -> f64 {
    use std::f64::consts::PI;
    let c = (PI * (a % (2 * n)) as f64 / n as f64).cos();
    let y = (PI * (b % (24 * n)) as f64 / (12 * n) as f64).cos();
    1.0 - 3.0 * c * c + 2.0 * y * c * c * c
}

fn value_bigfloat(n: u64, a: u64, b: u64, p: usize) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("astro-float constants");
    let pi = cc.pi(p, rm);
    let x = pi
        .mul(&BigFloat::from_u64(a % (2 * n), p), p, rm)
        .div(&BigFloat::from_u64(n, p), p, rm);
    let y = pi
        .mul(&BigFloat::from_u64(b % (24 * n), p), p, rm)
        .div(&BigFloat::from_u64(12 * n, p), p, rm);
    let c = x.cos(p, rm, &mut cc);
    let cy = y.cos(p, rm, &mut cc);
    let c2 = c.mul(&c, p, rm);
    let c3 = c2.mul(&c, p, rm);
    let one = BigFloat::from_u8(1, p);
    one.sub(&c2.mul(&BigFloat::from_u8(3, p), p, rm), p, rm)
        .add(&cy.mul(&c3, p, rm).mul(&BigFloat::from_u8(2, p), p, rm), p, rm)
}

/// Exact value in Q(ζ_{24n}).
fn value_exact(n: u64, a: u64, b: u64) -> Result<CycElem> {
    let level = u32::try_from(24 * n).map_err(|_| TriangleError::InvalidArgument(format!("n = {n} is too large")))?;
    let c = cos_pi_rational(a as i64, n as i64, level)?;
    let y = cos_pi_rational(b as i64, 12 * n as i64, level)?;
    let c2 = &c * &c;
    let three = CycElem::from_integer(level, 3)?;
    let two = CycElem::from_integer(level, 2)?;
    Ok(&(&CycElem::one(level)? - &(&three * &c2)) + &(&(&two * &y) * &(&c2 * &c)))
}

/// Certified sign of 1 − 3cos²(aπ/n) + 2cos(bπ/(12n))cos³(aπ/n).
pub fn equilateral_sign(n: u64, a: u64, b: u64) -> Result<Sign> {
    let v = value_f64(n, a, b);
    // each cosine is within a few ulps; the polynomial amplifies by at most 16
    if v.abs() > 1e-12 {
        return Ok(Sign::of_f64(v));
    }
    let bits = 320;
    let big = value_bigfloat(n, a, b, bits);
    let mut bound = BigFloat::from_u8(1, bits);
    bound.set_exponent(-(bits as i32) + 40);
    let magnitude = if big.is_negative() { big.neg() } else { big.clone() };
    if magnitude.cmp(&bound).is_some_and(|c| c > 0) {
        return Ok(if big.is_negative() { Sign::Negative } else { Sign::Positive });
    }
    Ok(sign_at_unchecked(&value_exact(n, a, b)?, 1))
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(m as i128) as u64
}

/// τ_p(det h_△) for n, with p the least prime not dividing 12n.
pub fn equilateral_row(n: u64, policy: SPolicy) -> Result<EquilateralRow> {
    let p = smallest_coprime_prime(12 * n)?;
    let modulus = 24 * n;
    let row = |s: u64| -> Result<EquilateralRow> {
        let sign = equilateral_sign(n, p, p * s % modulus)?;
        Ok(EquilateralRow { n, p, s, sign: sign.as_i8() })
    };
    match policy {
        SPolicy::One => row(1),
        SPolicy::Worst => {
            // the cos ψ term is weighted by cos³(pπ/n); push it to ±cos(π/12n)
            let c = (std::f64::consts::PI * (p % (2 * n)) as f64 / n as f64).cos();
            let target = if c >= 0.0 { 1 } else { 12 * n - 1 };
            row(inverse_mod(p, modulus) * target % modulus)
        }
        SPolicy::Exhaustive => {
            let mut best: Option<EquilateralRow> = None;
            for s in (1..=12 * n).filter(|&s| gcd(s, 12 * n) == 1) {
                let r = row(s)?;
                if best.is_none_or(|b| r.sign > b.sign) {
                    best = Some(r);
                }
                if r.sign == 1 {
                    break;
                }
            }
            Ok(best.expect("1 is coprime to 12n"))
        }
    }
}

/// Signs of τ_p(det h_△) for the equilateral triangle with angles π/n,
/// n_min ≤ n ≤ n_max, and the empirical threshold n* beyond which every
/// sign in range is −1.
pub fn equilateral_scan(n_min: u64, n_max: u64, policy: SPolicy) -> Result<EquilateralScan> {
    if n_min < 7 || n_min > n_max {
        return Err(TriangleError::InvalidArgument(format!(
            "need 7 ≤ n_min ≤ n_max, got {n_min}..{n_max}"
        )));
    }
    let rows: Vec<EquilateralRow> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| equilateral_row(n, policy))
        .collect::<Result<_>>()?;
    let survivors: Vec<u64> = rows.iter().filter(|r| r.sign != -1).map(|r| r.n).collect();
    Ok(EquilateralScan {
        n_min,
        n_max,
        policy,
        threshold: survivors.last().copied(),
        survivors,
        rows,
    })
}
