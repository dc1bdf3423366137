use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use cxta::cyclotomic::{sign_real, CycElem, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BITS: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn big_rational(x: &BigRational) -> BigFloat {
    let mut cc = Consts::new().unwrap();
    let n = BigFloat::parse(&x.numer().to_string(), Radix::Dec, BITS, RM, &mut cc);
    let d = BigFloat::parse(&x.denom().to_string(), Radix::Dec, BITS, RM, &mut cc);
    n.div(&d, BITS, RM)
}

/// Σ r_k cos(2πk/L) at 320 bits, evaluated from the defining terms.
fn oracle(level: u32, terms: &[(u32, BigRational)], shift: &BigRational) -> BigFloat {
    let mut cc = Consts::new().unwrap();
    let two_pi = cc.pi(BITS, RM).mul(&BigFloat::from_u8(2, BITS), BITS, RM);
    let mut acc = BigFloat::from_u8(0, BITS);
    for (k, r) in terms {
        let angle = two_pi
            .mul(&BigFloat::from_u32(*k, BITS), BITS, RM)
            .div(&BigFloat::from_u32(level, BITS), BITS, RM);
        acc = acc.add(&angle.cos(BITS, RM, &mut cc).mul(&big_rational(r), BITS, RM), BITS, RM);
    }
    acc.sub(&big_rational(shift), BITS, RM)
}

fn big_sign(v: &BigFloat) -> Sign {
    if v.is_zero() {
        Sign::Zero
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

#[test]
fn sign_real_matches_high_precision_oracle() {
    let mut rng = StdRng::seed_from_u64(0x51c7);
    let levels = [6u32, 10, 14, 18, 22, 26, 30, 42, 60, 66, 70, 84, 90];
    let mut near_zero = 0;
    for i in 0..1000 {
        let level = levels[rng.gen_range(0..levels.len())];
        let count = rng.gen_range(1..=4);
        let terms: Vec<(u32, BigRational)> = (0..count)
            .map(|_| (rng.gen_range(1..level), q(rng.gen_range(-9..=9), rng.gen_range(1..=5))))
            .collect();
        let mut root_terms = Vec::new();
        for (k, r) in &terms {
            let half = r / BigRational::from_integer(2.into());
            root_terms.push((*k as i64, half.clone()));
            root_terms.push((-(*k as i64), half));
        }
        let x = CycElem::from_root_sum(level, &root_terms).unwrap();
        // every other element is shifted to within 1e-25 of zero
        let shift = if i % 2 == 1 {
            let v = oracle(level, &terms, &BigRational::from_integer(0.into()));
            let scaled = v
                .mul(&BigFloat::from_u64(10u64.pow(18), BITS), BITS, RM)
                .mul(&BigFloat::from_u64(10u64.pow(7), BITS), BITS, RM);
            let floor = scaled.floor();
            let int: BigInt = parse_integer(&floor.to_string());
            near_zero += 1;
            BigRational::new(int, BigInt::from(10u8).pow(25))
        } else {
            BigRational::from_integer(0.into())
        };
        let z = &x - &CycElem::from_rational(level, shift.clone()).unwrap();
        let expect = oracle(level, &terms, &shift);
        let got = sign_real(&z).unwrap();
        if z.is_zero() {
            assert_eq!(got, Sign::Zero, "element {i}");
            continue;
        }
        assert_ne!(got, Sign::Zero, "element {i}: nonzero element reported as zero");
        let mut bound = BigFloat::from_u8(1, BITS);
        bound.set_exponent(-250);
        let magnitude = if expect.is_negative() { expect.neg() } else { expect.clone() };
        assert!(magnitude.cmp(&bound).is_some_and(|c| c > 0), "element {i}: oracle too close to zero");
        assert_eq!(got, big_sign(&expect), "element {i} at level {level}: {}", expect);
    }
    assert_eq!(near_zero, 500);
}

/// Integer part of a decimal rendering such as "1.2345e+3" or "-42.0".
fn parse_integer(text: &str) -> BigInt {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].trim_start_matches('+').parse::<i64>().unwrap()),
        None => (text, 0),
    };
    let negative = mantissa.starts_with('-');
    let mantissa = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut digits = format!("{int_part}{frac_part}");
    let point = int_part.len() as i64 + exp;
    if point <= 0 {
        return BigInt::from(0);
    }
    while (digits.len() as i64) < point {
        digits.push('0');
    }
    let v: BigInt = digits[..point as usize].parse().unwrap();
    if negative {
        -v
    } else {
        v
    }
}

#[test]
fn zero_identities_have_zero_sign() {
    for level in [6u32, 12, 20, 30, 42] {
        for d in (2..=level).filter(|d| level % d == 0) {
            // the d-th roots of unity sum to zero
            let step = (level / d) as i64;
            let terms: Vec<(i64, BigRational)> = (0..d as i64).map(|k| (k * step, q(1, 1))).collect();
            let x = CycElem::from_root_sum(level, &terms).unwrap();
            assert!(x.is_zero(), "level {level}, d = {d}");
            assert_eq!(sign_real(&x).unwrap(), Sign::Zero);
        }
    }
}
