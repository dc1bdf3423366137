use serde::{Deserialize, Serialize};

use super::verdict::{ReasonTag, Verdict};
use crate::cyclotomic::{sign_at_unchecked, CycElem, Sign, Stabilizer};
use crate::error::{Result, TriangleError};
use crate::hermitian::{gram_form, FormInvariants, TriangleShape};
use crate::numtheory::units;
use crate::triangle::{e_triangle_generators_at, field_e_bounds, CandidateGroup};

/// Signs of σ_m(det h_△) for every unit m modulo the shape level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignProfile {
    level: u32,
    units: Vec<u32>,
    signs: Vec<Sign>,
}

impl SignProfile {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Sign at exponent m; m is reduced modulo the level. `None` for non-units.
    pub fn sign(&self, m: u32) -> Option<Sign> {
        let m = m % self.level;
        self.units.binary_search(&m).ok().map(|i| self.signs[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, Sign)> + '_ {
        self.units.iter().copied().zip(self.signs.iter().copied())
    }

    /// Exponents m with σ_m(det) < 0, ascending.
    pub fn negative_places(&self) -> Vec<u32> {
        self.entries().filter(|&(_, s)| s == Sign::Negative).map(|(m, _)| m).collect()
    }

    /// Compact text form: one of `-`, `0`, `+` per unit, in ascending order.
    pub fn encode(&self) -> String {
        self.signs
            .iter()
            .map(|s| match s {
                Sign::Negative => '-',
                Sign::Zero => '0',
                Sign::Positive => '+',
            })
            .collect()
    }

    pub fn decode(level: u32, text: &str) -> Option<Self> {
        if level == 0 || level % 2 == 1 {
            return None;
        }
        let units = units(level);
        let signs: Vec<Sign> = text
            .chars()
            .map(|c| match c {
                '-' => Some(Sign::Negative),
                '0' => Some(Sign::Zero),
                '+' => Some(Sign::Positive),
                _ => None,
            })
            .collect::<Option<_>>()?;
        (signs.len() == units.len()).then_some(Self { level, units, signs })
    }
}

/// Serialized profile, as stored in the on-disk cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignProfileJson {
    pub level: u32,
    pub signs: String,
}

impl From<&SignProfile> for SignProfileJson {
    fn from(p: &SignProfile) -> Self {
        Self {
            level: p.level,
            signs: p.encode(),
        }
    }
}

/// Certified sign of σ_m(det(gram_form(shape))) for every unit m.
pub fn sign_profile(shape: &TriangleShape) -> SignProfile {
    let h = gram_form(shape);
    let det = FormInvariants::of(&h).det().clone();
    profile_of_real(&det)
}

fn profile_of_real(x: &CycElem) -> SignProfile {
    let level = x.level();
    let units = units(level);
    let mut signs = vec![Sign::Zero; units.len()];
    // σ_m and σ_{L−m} differ by complex conjugation, which fixes a real value
    let half = units.len().div_ceil(2);
    for i in 0..half {
        let s = sign_at_unchecked(x, units[i]);
        signs[i] = s;
        signs[units.len() - 1 - i] = s;
    }
    SignProfile { level, units, signs }
}

/// Runs every obstruction check of the defining-field sandwich against the
/// sign profile of the determinant.
pub fn admissibility_test(candidate: &CandidateGroup) -> Result<Verdict> {
    admissibility_test_with(candidate, &sign_profile(candidate.shape()))
}

/// [`admissibility_test`] with a precomputed profile for the candidate's shape.
pub fn admissibility_test_with(candidate: &CandidateGroup, profile: &SignProfile) -> Result<Verdict> {
    let shape = candidate.shape();
    if profile.level() != shape.level() {
        return Err(TriangleError::InvalidArgument(format!(
            "profile level {} does not match shape level {}",
            profile.level(),
            shape.level()
        )));
    }
    match profile.sign(1) {
        Some(Sign::Zero) => {
            return Ok(Verdict::ruled_out(
                ReasonTag::Degenerate,
                "det h vanishes at the identity place: the polar vectors are dependent",
                None,
            ))
        }
        Some(Sign::Positive) => {
            return Ok(Verdict::ruled_out(
                ReasonTag::NotIndefinite,
                "det h is positive at the identity place, so h is not of signature (2,1)",
                None,
            ))
        }
        _ => {}
    }

    let level = candidate.level();
    let (lower, upper) = field_e_bounds(candidate)?;
    let stab_lower = Stabilizer::of(level, &lower)?;
    let stab_upper = Stabilizer::of(level, &upper)?;

    // E lies between Q(lower) and Q(upper); in particular each η_j ∈ Q(upper)
    if !stab_upper.is_subgroup_of(&stab_lower) {
        let etas = candidate.etas(level)?;
        for m in stab_upper.elements() {
            if let Some(j) = etas.iter().position(|eta| eta.galois_image(m) != *eta) {
                return Ok(Verdict::ruled_out(
                    ReasonTag::ReflectionFactorOutsideE,
                    format!(
                        "reflection factor η{} = exp(2πi·{}/{}) is not in Q(cos²θ_j, e^{{iψ}}∏cosθ_j)",
                        j + 1,
                        candidate.exponents()[j],
                        candidate.orders()[j]
                    ),
                    Some(m),
                ));
            }
        }
        let m = stab_upper
            .elements()
            .into_iter()
            .find(|&m| !stab_lower.contains(m))
            .expect("not a subgroup");
        return Ok(Verdict::ruled_out(
            ReasonTag::FieldBoundsInconsistent,
            "the lower bound Q(η_j, cos²θ_j, e^{2iψ}) is not contained in the upper bound Q(cos²θ_j, e^{iψ}∏cosθ_j)",
            Some(m),
        ));
    }

    // negative places, lifted to the candidate level
    let negative: Vec<u32> = units(level)
        .into_iter()
        .filter(|&m| profile.sign(m) == Some(Sign::Negative))
        .collect();
    // a negative place must restrict to the identity or to complex conjugation on E
    let acts_as_pm_identity = |stab: &Stabilizer, m: u32| stab.contains(m) || stab.contains(level - m);
    if let Some(&m) = negative.iter().find(|&&m| !acts_as_pm_identity(&stab_lower, m)) {
        return Ok(Verdict::ruled_out(
            ReasonTag::NegativePlaceMovesE,
            "det h is negative at a place that acts nontrivially on Q(η_j, cos²θ_j, e^{2iψ}) ⊆ E",
            Some(m),
        ));
    }
    let between = negative.iter().copied().find(|&m| !acts_as_pm_identity(&stab_upper, m));

    if !shape.has_real_psi() {
        let gens = e_triangle_generators_at(shape, level)?;
        let stab_tri = Stabilizer::of(level, &gens)?;
        let d_tri = stab_tri.fixed_field_degree();
        let d_lower = stab_lower.fixed_field_degree();
        let d_upper = stab_upper.fixed_field_degree();
        // negative places counted as embeddings of E_△
        let embeddings = negative.len() / stab_tri.order();
        let fits = embeddings > 0 && (2 * d_tri) % embeddings == 0;
        let d_e = if fits { 2 * d_tri / embeddings } else { 0 };
        if !fits || d_e % d_lower != 0 || d_upper % d_e != 0 {
            return Ok(Verdict::ruled_out(
                ReasonTag::PlaceCountMismatch,
                format!(
                    "{embeddings} negative embeddings of E_△ (degree {d_tri}) fit no field E with \
                     [Q(lower):Q] = {d_lower} dividing [E:Q] dividing [Q(upper):Q] = {d_upper}"
                ),
                None,
            ));
        }
        if between.is_none() && d_e != d_upper {
            return Ok(Verdict::indeterminate(
                ReasonTag::PlaceCountBetweenBounds,
                format!(
                    "the negative places force [E:Q] = {d_e}, strictly between the bounds {d_lower} and {d_upper}"
                ),
                None,
            ));
        }
    }

    if let Some(m) = between {
        return Ok(Verdict::indeterminate(
            ReasonTag::NegativePlaceBetweenBounds,
            "a negative place fixes the lower bound for E but moves the upper bound",
            Some(m),
        ));
    }
    Ok(Verdict::admissible(
        "every negative place acts trivially on both bounds for E and the place count is consistent",
    ))
}
