use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{common_level, cos_pi_rational, root_of_unity, CycElem};
use crate::error::{FieldError, TriangleError};
use crate::rational::parse_small_fraction;

/// A complex angle between two walls: θ = r·π with 0 < r ≤ 1/2, or an ideal
/// vertex (θ = 0, the walls meet on the boundary).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Angle {
    PiTimes(Ratio<i64>),
    Ideal,
}

impl Angle {
    /// θ = π/b.
    pub fn pi_over(b: i64) -> Result<Self, TriangleError> {
        if b < 2 {
            return Err(TriangleError::InvalidAngle(format!("π/{b} exceeds π/2")));
        }
        Ok(Angle::PiTimes(Ratio::new(1, b)))
    }

    /// θ = r·π.
    pub fn pi_times(r: Ratio<i64>) -> Result<Self, TriangleError> {
        if !r.is_positive() || r > Ratio::new(1, 2) {
            return Err(TriangleError::InvalidAngle(format!(
                "{r}·π is outside (0, π/2]"
            )));
        }
        Ok(Angle::PiTimes(r))
    }

    /// Accepts `"ideal"`, `"b"` (θ = π/b) or `"a/b"` (θ = aπ/b).
    pub fn parse(s: &str) -> Result<Self, TriangleError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("ideal") || t == "0" {
            return Ok(Angle::Ideal);
        }
        if t.contains('/') {
            let r = parse_small_fraction(t).map_err(TriangleError::InvalidAngle)?;
            Self::pi_times(r)
        } else {
            let b: i64 = t
                .parse()
                .map_err(|_| TriangleError::InvalidAngle(format!("cannot parse {s:?}")))?;
            Self::pi_over(b)
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, Angle::Ideal)
    }

    /// Wire form: `"ideal"` or θ/π as `"a/b"`.
    pub fn wire(&self) -> String {
        match self {
            Angle::Ideal => "ideal".to_string(),
            Angle::PiTimes(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }

    /// The contribution of this angle to the common level.
    pub(crate) fn level_part(&self) -> u64 {
        match self {
            Angle::Ideal => 2,
            Angle::PiTimes(r) => 2 * *r.denom() as u64,
        }
    }

    /// cos θ at the given level (1 for an ideal vertex).
    pub fn cos(&self, level: u32) -> Result<CycElem, FieldError> {
        match self {
            Angle::Ideal => CycElem::one(level),
            Angle::PiTimes(r) => cos_pi_rational(*r.numer(), *r.denom(), level),
        }
    }

    /// Double-precision θ/π (0 for ideal vertices).
    pub fn as_f64(&self) -> f64 {
        match self {
            Angle::Ideal => 0.0,
            Angle::PiTimes(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Ideal => write!(f, "0"),
            Angle::PiTimes(r) if r.numer().is_one() => write!(f, "π/{}", r.denom()),
            Angle::PiTimes(r) => write!(f, "{}π/{}", r.numer(), r.denom()),
        }
    }
}

/// Reduces ψ/π modulo 2 and folds it into [0, 1] by complex conjugation.
pub fn normalize_psi(r: Ratio<i64>) -> Ratio<i64> {
    let two = Ratio::from_integer(2);
    let mut x = r % two;
    if x.is_negative() {
        x += two;
    }
    if x > Ratio::one() {
        x = two - x;
    }
    x
}

/// The three complex angles (θ₁ between walls 1–2, θ₂ between 2–3, θ₃
/// between 3–1) and a rational angular invariant ψ = (ψ/π)·π ∈ [0, π].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleShape {
    angles: [Angle; 3],
    psi: Ratio<i64>,
}

impl TriangleShape {
    pub fn new(angles: [Angle; 3], psi_over_pi: Ratio<i64>) -> Self {
        Self {
            angles,
            psi: normalize_psi(psi_over_pi),
        }
    }

    /// Angles π/b₁, π/b₂, π/b₃ and ψ = s·π/t.
    pub fn from_denominators(b: [i64; 3], s: i64, t: i64) -> Result<Self, TriangleError> {
        if t == 0 {
            return Err(TriangleError::InvalidPsi("zero denominator".into()));
        }
        Ok(Self::new(
            [Angle::pi_over(b[0])?, Angle::pi_over(b[1])?, Angle::pi_over(b[2])?],
            Ratio::new(s, t),
        ))
    }

    pub fn angles(&self) -> &[Angle; 3] {
        &self.angles
    }

    /// ψ/π in [0, 1].
    pub fn psi(&self) -> Ratio<i64> {
        self.psi
    }

    /// True when ψ ∈ {0, π}, i.e. the Gram form has real entries.
    pub fn has_real_psi(&self) -> bool {
        self.psi.is_integer()
    }

    pub fn ideal_count(&self) -> usize {
        self.angles.iter().filter(|a| a.is_ideal()).count()
    }

    /// lcm(2, 2b_j, 2t).
    pub fn level(&self) -> u32 {
        common_level(
            self.angles
                .iter()
                .map(Angle::level_part)
                .chain([2 * *self.psi.denom() as u64]),
        )
    }

    /// e^{iψ} at the given level.
    pub fn phase(&self, level: u32) -> Result<CycElem, FieldError> {
        root_of_unity(*self.psi.numer(), *self.psi.denom(), level)
    }

    /// Canonical text used for cache keys and table output.
    pub fn canonical_key(&self) -> String {
        format!(
            "angles={},{},{};psi={}/{}",
            self.angles[0].wire(),
            self.angles[1].wire(),
            self.angles[2].wire(),
            self.psi.numer(),
            self.psi.denom()
        )
    }

    /// Permutes the (angle) slots: applying a relabelling of the three walls.
    pub fn relabel(&self, perm: [usize; 3]) -> Self {
        // angle j sits between walls j and j+1; relabelling walls by perm
        // sends the pair {j, j+1} to {perm[j], perm[j+1]}
        let mut angles = self.angles;
        for j in 0..3 {
            let (a, b) = (perm[j], perm[(j + 1) % 3]);
            let slot = if (a + 1) % 3 == b { a } else { b };
            angles[slot] = self.angles[j];
        }
        let odd = {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |k| (i, k)))
                .filter(|&(i, k)| perm[i] > perm[k])
                .count();
            inversions % 2 == 1
        };
        // an odd relabelling reverses the orientation of the triple product
        let psi = if odd { -self.psi } else { self.psi };
        Self::new(angles, psi)
    }
}

impl fmt::Display for TriangleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let psi = if self.psi.is_zero() {
            "0".to_string()
        } else if self.psi.is_one() {
            "π".to_string()
        } else if self.psi.numer().is_one() {
            format!("π/{}", self.psi.denom())
        } else {
            format!("{}π/{}", self.psi.numer(), self.psi.denom())
        };
        write!(
            f,
            "θ=({}, {}, {}), ψ={}",
            self.angles[0], self.angles[1], self.angles[2], psi
        )
    }
}

/// JSON form of a shape: `{"angles": [...], "psi": "s/t"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub angles: [String; 3],
    pub psi: String,
}

impl From<&TriangleShape> for ShapeJson {
    fn from(s: &TriangleShape) -> Self {
        Self {
            angles: s.angles.map(|a| a.wire()),
            psi: format!("{}/{}", s.psi.numer(), s.psi.denom()),
        }
    }
}

impl TryFrom<&ShapeJson> for TriangleShape {
    type Error = TriangleError;

    fn try_from(j: &ShapeJson) -> Result<Self, TriangleError> {
        let angles = [
            Angle::parse(&j.angles[0])?,
            Angle::parse(&j.angles[1])?,
            Angle::parse(&j.angles[2])?,
        ];
        let psi = parse_small_fraction(&j.psi).map_err(TriangleError::InvalidPsi)?;
        Ok(Self::new(angles, psi))
    }
}

/// Least common multiple helper used by callers that add orders to a level.
pub(crate) fn lcm_level(level: u32, extra: u64) -> u32 {
    u32::try_from((level as u64).lcm(&extra)).expect("level exceeds u32")
}
