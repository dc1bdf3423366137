use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::profile::admissibility_test;
use super::verdict::{ReasonTag, Status, Verdict};
use crate::cyclotomic::{cos_pi_rational, sign_at_unchecked, CycElem, Sign, Stabilizer};
use crate::error::{Result, TriangleError};
use crate::hermitian::{closed_form_det, Angle, TriangleShape};
use crate::numtheory::{gcd, units};
use crate::triangle::CandidateGroup;

/// A vertex of a Fuchsian triangle: angle π/n or an ideal (cusp) vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Finite(u32),
    Ideal,
}

impl Vertex {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("ideal") || t == "inf" || t == "∞" {
            return Ok(Vertex::Ideal);
        }
        match t.parse::<u32>() {
            Ok(n) if n >= 2 => Ok(Vertex::Finite(n)),
            _ => Err(TriangleError::InvalidAngle(format!("expected an integer ≥ 2 or \"ideal\", got {s:?}"))),
        }
    }

    fn angle(self) -> Angle {
        match self {
            Vertex::Finite(n) => Angle::PiTimes(Ratio::new(1, n as i64)),
            Vertex::Ideal => Angle::Ideal,
        }
    }

    fn reciprocal(self) -> Ratio<i64> {
        match self {
            Vertex::Finite(n) => Ratio::new(1, n as i64),
            Vertex::Ideal => Ratio::from_integer(0),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Finite(n) => write!(f, "{n}"),
            Vertex::Ideal => write!(f, "ideal"),
        }
    }
}

fn hyperbolic(v: [Vertex; 3]) -> Result<()> {
    let sum: Ratio<i64> = v.iter().map(|x| x.reciprocal()).sum();
    if sum < Ratio::from_integer(1) {
        Ok(())
    } else {
        Err(TriangleError::NotHyperbolic(format!("{}, {}, {}", v[0], v[1], v[2])))
    }
}

/// Takeuchi's criterion for the Fuchsian triangle group with angles π/p,
/// π/q, π/r: d = 1 − Σcos²θ − 2∏cosθ must be negative, and σ(d) positive for
/// every Galois automorphism σ moving F′ = Q(cos²θ_j, ∏cosθ_j).
pub fn takeuchi_fuchsian_test(p: Vertex, q: Vertex, r: Vertex) -> Result<Verdict> {
    hyperbolic([p, q, r])?;
    let mut v = [p, q, r];
    v.sort();
    if v[0] == Vertex::Finite(2) {
        if let Screen::Witness(m) = right_screen(v[1], v[2]) {
            return Ok(conjugate_not_positive(m));
        }
    }
    takeuchi_exact(p, q, r)
}

fn conjugate_not_positive(m: u32) -> Verdict {
    Verdict::ruled_out(
        ReasonTag::ConjugateNotPositive,
        "a Galois conjugate moving F′ leaves the determinant non-positive",
        Some(m),
    )
}

fn takeuchi_exact(p: Vertex, q: Vertex, r: Vertex) -> Result<Verdict> {
    let shape = TriangleShape::new([p.angle(), q.angle(), r.angle()], Ratio::from_integer(1));
    let level = shape.level();
    let d = closed_form_det(&shape, level)?;
    let cs: Vec<CycElem> = shape.angles().iter().map(|a| a.cos(level)).collect::<Result<_, _>>()?;
    let mut gens: Vec<CycElem> = cs.iter().map(|c| c * c).collect();
    gens.push(&(&cs[0] * &cs[1]) * &cs[2]);
    match sign_at_unchecked(&d, 1) {
        Sign::Negative => {}
        _ => {
            return Ok(Verdict::ruled_out(
                ReasonTag::NotIndefinite,
                "the determinant is not negative at the identity place",
                None,
            ))
        }
    }
    let stab = Stabilizer::of(level, &gens)?;
    for m in units(level) {
        if m > level / 2 {
            break;
        }
        if !stab.contains(m) && sign_at_unchecked(&d, m) != Sign::Positive {
            return Ok(conjugate_not_positive(m));
        }
    }
    Ok(Verdict::admissible(
        "the determinant is negative at the identity and positive at every conjugate moving F′",
    ))
}

enum Screen {
    Witness(u32),
    Undecided,
}

const SCREEN_MARGIN: f64 = 1e-12;

/// Certified witness search for the right triangle (π/2, θ_q, θ_r).
///
/// Here d = −(cos 2θ_q + cos 2θ_r)/2 and F′ = Q(cos 2θ_q, cos 2θ_r). For odd m
/// coprime to q and r, σ_m fixes cos(2π/q) iff m ≡ ±1 (mod q), and maps it
/// to cos(2πm/q). A witness needs cos(2πm/q) + cos(2πm/r) > 0 with margin
/// far above the double-precision error.
fn right_screen(q: Vertex, r: Vertex) -> Screen {
    let n = |v: Vertex| match v {
        Vertex::Finite(n) => n as u64,
        Vertex::Ideal => 1,
    };
    let (nq, nr) = (n(q), n(r));
    let period = 2 * nq.lcm(&nr);
    let term = |m: u64, v: u64| {
        if v == 1 {
            1.0
        } else {
            (std::f64::consts::TAU * (m % v) as f64 / v as f64).cos()
        }
    };
    let fixed = |m: u64, v: u64| v <= 2 || m % v == 1 || m % v == v - 1;
    let mut m = 3;
    while m < period {
        if gcd(m, period) == 1 && !(fixed(m, nq) && fixed(m, nr)) && term(m, nq) + term(m, nr) > SCREEN_MARGIN {
            // the shape level lcm(4, 2q, 2r) has the same prime divisors as `period`
            let level = TriangleShape::new([Angle::pi_over(2).expect("valid"), q.angle(), r.angle()], Ratio::from_integer(1)).level() as u64;
            return Screen::Witness((m % level) as u32);
        }
        m += 2;
    }
    Screen::Undecided
}

/// One row of the right-triangle classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RightTriangle {
    pub q: Vertex,
    pub r: Vertex,
    pub status: Status,
    pub witness: Option<u32>,
}

impl RightTriangle {
    pub fn verdict(&self) -> Verdict {
        match self.status {
            Status::Admissible => Verdict::admissible(
                "the determinant is negative at the identity and positive at every conjugate moving F′",
            ),
            _ => conjugate_not_positive(self.witness.expect("ruled-out rows carry a witness")),
        }
    }
}

fn right_pairs(max_denom: u32) -> Vec<(Vertex, Vertex)> {
    let mut pairs = Vec::new();
    for q in 3..=max_denom {
        // 1/q + 1/r < 1/2
        let r_min = if q > 4 { q } else { (2 * q) / (q - 2) + 1 };
        for r in r_min.max(q)..=max_denom {
            pairs.push((Vertex::Finite(q), Vertex::Finite(r)));
        }
        pairs.push((Vertex::Finite(q), Vertex::Ideal));
    }
    pairs.push((Vertex::Ideal, Vertex::Ideal));
    pairs
}

fn classify_pair((q, r): (Vertex, Vertex)) -> RightTriangle {
    let verdict = takeuchi_fuchsian_test(Vertex::Finite(2), q, r).expect("pairs are hyperbolic");
    RightTriangle {
        q,
        r,
        status: verdict.status,
        witness: verdict.witness,
    }
}

/// Every hyperbolic (2, q, r) with 3 ≤ q ≤ r ≤ max_denom, then (2, q, ∞) and
/// (2, ∞, ∞), classified by Takeuchi's criterion, ordered by q then r.
pub fn classify_right_triangles(max_denom: u32) -> Result<Vec<RightTriangle>> {
    if max_denom < 7 {
        return Err(TriangleError::InvalidArgument("max_denom must be at least 7".into()));
    }
    Ok(right_pairs(max_denom).into_par_iter().map(classify_pair).collect())
}

/// The admissible rows of [`classify_right_triangles`], without retaining the
/// ruled-out ones.
pub fn admissible_right_triangles(max_denom: u32) -> Result<Vec<RightTriangle>> {
    if max_denom < 7 {
        return Err(TriangleError::InvalidArgument("max_denom must be at least 7".into()));
    }
    Ok(right_pairs(max_denom)
        .into_par_iter()
        .map(classify_pair)
        .filter(|row| row.status == Status::Admissible)
        .collect())
}

/// A rational angular invariant allowed by the field constraints, with the
/// verdict of the full test at reflection orders (2, 2, 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiCandidate {
    pub s: i64,
    pub t: i64,
    pub verdict: Verdict,
}

/// Rational ψ = sπ/t for the right triangle (π/2, θ_q, θ_r) with
/// cos²ψ ∈ F = Q(cos²θ_q, cos²θ_r), i.e. cos(2π/t) ∈ F; ψ = π is always
/// included. Each ψ is re-tested with orders (2, 2, 2).
pub fn right_psi_candidates(q: Vertex, r: Vertex) -> Result<Vec<PsiCandidate>> {
    let base = takeuchi_fuchsian_test(Vertex::Finite(2), q, r)?;
    if !base.is_admissible() {
        return Err(TriangleError::InvalidArgument(format!("(2, {q}, {r}) is not an arithmetic Fuchsian triangle")));
    }
    let angles = [Angle::pi_over(2)?, q.angle(), r.angle()];
    let level0 = TriangleShape::new(angles, Ratio::from_integer(1)).level();
    let squares = |level: u32| -> Result<Vec<CycElem>> {
        Ok(vec![
            {
                let c = angles[1].cos(level)?;
                &c * &c
            },
            {
                let c = angles[2].cos(level)?;
                &c * &c
            },
        ])
    };
    let d = Stabilizer::of(level0, &squares(level0)?)?.fixed_field_degree();
    // [Q(cos 2π/t):Q] = φ(t)/2 must divide d, and φ(t) ≥ √(t/2)
    let t_max = (8 * d * d).max(2) as i64;
    let mut out = Vec::new();
    for t in 1..=t_max {
        let phi = crate::numtheory::euler_phi(t as u64) as usize;
        if t > 2 && d % (phi / 2) != 0 {
            continue;
        }
        let level = (level0 as u64).lcm(&(2 * t as u64)) as u32;
        let mut gens = squares(level)?;
        let stab_f = Stabilizer::of(level, &gens)?;
        gens.push(cos_pi_rational(2, t, level)?);
        if Stabilizer::of(level, &gens)?.order() != stab_f.order() {
            continue;
        }
        for s in 1..=t {
            if s.gcd(&t) != 1 {
                continue;
            }
            let shape = TriangleShape::new(angles, Ratio::new(s, t));
            let verdict = admissibility_test(&CandidateGroup::new(shape, [2, 2, 2])?)?;
            out.push(PsiCandidate { s, t, verdict });
        }
    }
    Ok(out)
}
