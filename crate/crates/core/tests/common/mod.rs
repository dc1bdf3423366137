//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use cxta::cyclotomic::CycElem;
use cxta::hermitian::{Angle, TriangleShape};
use cxta::numtheory::{gcd, units};
use cxta::triangle::CandidateGroup;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::rngs::StdRng;
use rand::Rng;


pub fn cos_elem(a: i64, b: i64, level: u32) -> CycElem {
    let e = a * level as i64 / (2 * b);
    assert_eq!(e * 2 * b, a * level as i64, "level too small");
    let half = CycElem::from_rational(level, BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap();
    &half * &(&CycElem::root_power(level, e).unwrap() + &CycElem::root_power(level, -e).unwrap())
}

pub fn angle_cos(a: &Angle, level: u32) -> CycElem {
    match a {
        Angle::Ideal => CycElem::one(level).unwrap(),
        Angle::PiTimes(r) => cos_elem(*r.numer(), *r.denom(), level),
    }
}

pub fn angle_f64(a: &Angle) -> f64 {
    match a {
        Angle::Ideal => 1.0,
        Angle::PiTimes(r) => (PI * *r.numer() as f64 / *r.denom() as f64).cos(),
    }
}

pub fn random_angle(rng: &mut StdRng) -> Angle {
    if rng.gen_ratio(1, 6) {
        return Angle::Ideal;
    }
    let b = rng.gen_range(2..=12i64);
    let a = rng.gen_range(1..=b / 2);
    Angle::pi_times(Ratio::new(a, b)).unwrap()
}

pub fn random_shape(rng: &mut StdRng) -> TriangleShape {
    let angles = [random_angle(rng), random_angle(rng), random_angle(rng)];
    let t = rng.gen_range(1..=12i64);
    let s = rng.gen_range(0..2 * t);
    TriangleShape::new(angles, Ratio::new(s, t))
}

pub fn random_hyperbolic_candidate(rng: &mut StdRng) -> CandidateGroup {
    loop {
        let b = [rng.gen_range(2..=10i64), rng.gen_range(2..=10i64), rng.gen_range(2..=10i64)];
        let mut angles = b.map(|x| Angle::pi_over(x).unwrap());
        if rng.gen_ratio(1, 5) {
            angles[rng.gen_range(0..3)] = Angle::Ideal;
        }
        let t = rng.gen_range(1..=8i64);
        let shape = TriangleShape::new(angles, Ratio::new(rng.gen_range(0..2 * t), t));
        if !cxta::hermitian::triangle_exists(&shape) {
            continue;
        }
        let orders = [rng.gen_range(2..=12i64), rng.gen_range(2..=12i64), rng.gen_range(2..=12i64)];
        let exps = orders.map(|n| loop {
            let k = rng.gen_range(1..n);
            if gcd(k as u64, n as u64) == 1 {
                break k;
            }
        });
        return CandidateGroup::with_exponents(shape, orders, exps).unwrap();
    }
}

pub fn random_elem(rng: &mut StdRng, level: u32) -> CycElem {
    let n = CycElem::zero(level).unwrap().degree();
    let coeffs: Vec<BigRational> = (0..n)
        .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=7).into()))
        .collect();
    CycElem::from_coeffs(level, &coeffs).unwrap()
}

pub fn random_unit(rng: &mut StdRng, level: u32) -> u32 {
    let us = units(level);
    us[rng.gen_range(0..us.len())]
}

/// A random hyperbolic candidate whose common level is at most `max_level`.
pub fn small_hyperbolic_candidate(rng: &mut StdRng, max_level: u32) -> CandidateGroup {
    loop {
        let c = random_hyperbolic_candidate(rng);
        if c.level() <= max_level {
            return c;
        }
    }
}
