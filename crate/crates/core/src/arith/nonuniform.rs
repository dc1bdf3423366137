use std::collections::HashMap;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;

use super::profile::{admissibility_test_with, sign_profile, SignProfile};
use super::verdict::Verdict;
use crate::cyclotomic::{subfield_degree, Sign};
use crate::error::Result;
use crate::hermitian::{triangle_exists, Angle, TriangleShape};
use crate::triangle::{e_triangle_generators_at, field_e_bounds, CandidateGroup};

/// Reflection orders allowed for a nonuniform arithmetic lattice.
pub const NONUNIFORM_ORDERS: [i64; 4] = [2, 3, 4, 6];
/// Angle denominators allowed for a nonuniform arithmetic lattice (plus ideal vertices).
pub const NONUNIFORM_ANGLE_DENOMS: [i64; 4] = [2, 3, 4, 6];
/// Denominators t of a rational angular invariant ψ = sπ/t.
pub const NONUNIFORM_PSI_DENOMS: [i64; 6] = [2, 3, 4, 6, 8, 12];

/// A candidate surviving every nonuniform filter, with its field data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonuniformEntry {
    pub candidate: CandidateGroup,
    pub det_sign: i8,
    pub lower_degree: usize,
    pub upper_degree: usize,
    pub triangle_degree: usize,
    pub verdict: Verdict,
}

fn angle_choices() -> Vec<Angle> {
    let mut v: Vec<Angle> = NONUNIFORM_ANGLE_DENOMS
        .iter()
        .map(|&b| Angle::pi_over(b).expect("valid denominator"))
        .collect();
    v.push(Angle::Ideal);
    v
}

/// ψ/π ∈ (0, 1) with denominator in [`NONUNIFORM_PSI_DENOMS`], ordered by t then s.
pub fn nonuniform_psi_values() -> Vec<Ratio<i64>> {
    let mut out = Vec::new();
    for t in NONUNIFORM_PSI_DENOMS {
        for s in 1..t {
            if s.gcd(&t) == 1 {
                out.push(Ratio::new(s, t));
            }
        }
    }
    out
}

/// The shapes of the finite nonuniform search space, in enumeration order.
pub fn nonuniform_shapes() -> Vec<TriangleShape> {
    let angles = angle_choices();
    let psis = nonuniform_psi_values();
    let mut out = Vec::with_capacity(angles.len().pow(3) * psis.len());
    for a in &angles {
        for b in &angles {
            for c in &angles {
                for &psi in &psis {
                    out.push(TriangleShape::new([*a, *b, *c], psi));
                }
            }
        }
    }
    out
}

fn order_triples() -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in NONUNIFORM_ORDERS {
        for b in NONUNIFORM_ORDERS {
            for c in NONUNIFORM_ORDERS {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn examine(candidate: CandidateGroup, profile: &SignProfile) -> Result<Option<NonuniformEntry>> {
    let (lower, upper) = field_e_bounds(&candidate)?;
    let lower_degree = subfield_degree(&lower)?;
    if lower_degree > 2 {
        return Ok(None);
    }
    let verdict = admissibility_test_with(&candidate, profile)?;
    if verdict.is_ruled_out() {
        return Ok(None);
    }
    let upper_degree = subfield_degree(&upper)?;
    let triangle_degree = subfield_degree(&e_triangle_generators_at(candidate.shape(), candidate.level())?)?;
    let det_sign = profile.sign(1).unwrap_or(Sign::Zero).as_i8();
    Ok(Some(NonuniformEntry {
        candidate,
        det_sign,
        lower_degree,
        upper_degree,
        triangle_degree,
        verdict,
    }))
}

/// Every candidate from the finite nonuniform search space that forms a
/// triangle, has lower field bound of degree at most 2, and is not ruled out.
///
/// Output order is shape-major (angles, then ψ) and then orders, all
/// lexicographic; the parallel map preserves it.
pub fn enumerate_nonuniform() -> Result<Vec<NonuniformEntry>> {
    enumerate_nonuniform_with(&|shape| sign_profile(shape))
}

/// [`enumerate_nonuniform`] with a caller-supplied profile source (for caching).
pub fn enumerate_nonuniform_with(profiles: &(dyn Fn(&TriangleShape) -> SignProfile + Sync)) -> Result<Vec<NonuniformEntry>> {
    let shapes: Vec<TriangleShape> = nonuniform_shapes().into_par_iter().filter(triangle_exists).collect();
    let table: HashMap<TriangleShape, SignProfile> = shapes
        .par_iter()
        .map(|s| (s.clone(), profiles(s)))
        .collect();
    let orders = order_triples();
    let work: Vec<(usize, [i64; 3])> = (0..shapes.len())
        .flat_map(|i| orders.iter().map(move |o| (i, *o)))
        .collect();
    let results: Vec<Result<Option<NonuniformEntry>>> = work
        .into_par_iter()
        .map(|(i, o)| {
            let shape = &shapes[i];
            examine(CandidateGroup::new(shape.clone(), o)?, &table[shape])
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(e) = r? {
            out.push(e);
        }
    }
    Ok(out)
}
