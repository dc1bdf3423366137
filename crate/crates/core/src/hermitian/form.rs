use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::Mat3;
use super::shape::TriangleShape;
use crate::cyclotomic::{sign_at_unchecked, CycElem, GaloisAut, Sign};
use crate::error::FieldError;

/// A 3×3 Hermitian form over Q(ζ_L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm3 {
    matrix: Mat3,
}

impl HermitianForm3 {
    /// Wraps a matrix after checking Hermitian symmetry exactly.
    pub fn new(matrix: Mat3) -> Result<Self, FieldError> {
        for i in 0..3 {
            for j in i..3 {
                if *matrix.get(i, j) != matrix.get(j, i).conjugate() {
                    return Err(FieldError::Malformed(format!(
                        "entry ({i},{j}) is not the conjugate of ({j},{i})"
                    )));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn identity(level: u32) -> Result<Self, FieldError> {
        Ok(Self {
            matrix: Mat3::identity(level)?,
        })
    }

    pub fn level(&self) -> u32 {
        self.matrix.level()
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycElem {
        self.matrix.get(i, j)
    }

    /// Re-expresses every entry at a multiple of the current level.
    pub fn lift(&self, level: u32) -> Result<Self, FieldError> {
        let e = self.matrix.entries();
        let mut rows = Vec::with_capacity(3);
        for row in e {
            rows.push([row[0].lift(level)?, row[1].lift(level)?, row[2].lift(level)?]);
        }
        let rows: [[CycElem; 3]; 3] = rows.try_into().expect("three rows");
        Ok(Self {
            matrix: Mat3::new(level, rows)?,
        })
    }

    /// The entrywise image σ·H.
    pub fn galois_image(&self, sigma: &GaloisAut) -> Result<Self, FieldError> {
        if sigma.level() != self.level() {
            return Err(FieldError::LevelMismatch(sigma.level(), self.level()));
        }
        Ok(Self {
            matrix: self
                .matrix
                .map(|x| crate::cyclotomic::apply_galois(sigma, x).expect("levels checked")),
        })
    }
}

/// Gram matrix of the three polar vectors:
///
/// ```text
/// ⎛ 1            e^{iψ}cosθ₁   e^{iψ}cosθ₃ ⎞
/// ⎜ e^{-iψ}cosθ₁ 1             e^{iψ}cosθ₂ ⎟
/// ⎝ e^{-iψ}cosθ₃ e^{-iψ}cosθ₂  1           ⎠
/// ```
///
/// Ideal vertices contribute cos θ = 1.
pub fn gram_form(shape: &TriangleShape) -> HermitianForm3 {
    gram_form_at(shape, shape.level()).expect("shape level is valid")
}

/// [`gram_form`] expressed at a multiple of the shape's own level.
pub fn gram_form_at(shape: &TriangleShape, level: u32) -> Result<HermitianForm3, FieldError> {
    if level % shape.level() != 0 {
        return Err(FieldError::LevelMismatch(shape.level(), level));
    }
    let [a1, a2, a3] = shape.angles();
    let (c1, c2, c3) = (a1.cos(level)?, a2.cos(level)?, a3.cos(level)?);
    let phase = shape.phase(level)?;
    let phase_bar = phase.conjugate();
    let one = CycElem::one(level)?;
    let rows = [
        [one.clone(), &phase * &c1, &phase * &c3],
        [&phase_bar * &c1, one.clone(), &phase * &c2],
        [&phase_bar * &c3, &phase_bar * &c2, one],
    ];
    Ok(HermitianForm3 {
        matrix: Mat3::new(level, rows)?,
    })
}

/// Exact determinant; real for Hermitian input.
pub fn det_form(h: &HermitianForm3) -> CycElem {
    h.matrix.det()
}

/// 1 − Σcos²θ_j + 2 cos ψ ∏cos θ_j, built independently of any matrix.
pub fn closed_form_det(shape: &TriangleShape, level: u32) -> Result<CycElem, FieldError> {
    let cs: Vec<CycElem> = shape
        .angles()
        .iter()
        .map(|a| a.cos(level))
        .collect::<Result<_, _>>()?;
    let cos_psi = shape.phase(level)?.real_part();
    let one = CycElem::one(level)?;
    let two = CycElem::from_integer(level, 2)?;
    let squares = cs.iter().fold(CycElem::zero(level)?, |acc, c| &acc + &(c * c));
    let product = &(&cs[0] * &cs[1]) * &cs[2];
    Ok(&(&one - &squares) + &(&(&two * &cos_psi) * &product))
}

/// Inertia (p, q, z) of a real quadratic/Hermitian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positives: u8,
    pub negatives: u8,
    pub zeros: u8,
}

impl Signature {
    pub const fn new(positives: u8, negatives: u8, zeros: u8) -> Self {
        Self {
            positives,
            negatives,
            zeros,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        *self == Self::new(2, 1, 0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positives, self.negatives, self.zeros)
    }
}

fn sign_changes(seq: &[Sign]) -> u8 {
    let nonzero: Vec<Sign> = seq.iter().copied().filter(|s| *s != Sign::Zero).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count() as u8
}

fn negate(s: Sign) -> Sign {
    match s {
        Sign::Negative => Sign::Positive,
        Sign::Zero => Sign::Zero,
        Sign::Positive => Sign::Negative,
    }
}

/// Exact minors of a form, reused across every embedding.
pub(crate) struct FormInvariants {
    d1: CycElem,
    d2: CycElem,
    det: CycElem,
    trace: CycElem,
    minor_sum: CycElem,
}

impl FormInvariants {
    pub(crate) fn of(h: &HermitianForm3) -> Self {
        let m = &h.matrix;
        Self {
            d1: m.get(0, 0).clone(),
            d2: m.leading_minor2(),
            det: m.det(),
            trace: m.trace(),
            minor_sum: m.principal_minor_sum(),
        }
    }

    pub(crate) fn det(&self) -> &CycElem {
        &self.det
    }

    /// Signature of σ_m·H.
    pub(crate) fn signature_at(&self, m: u32) -> Signature {
        let d1 = sign_at_unchecked(&self.d1, m);
        let d2 = sign_at_unchecked(&self.d2, m);
        let d3 = sign_at_unchecked(&self.det, m);
        if d1 != Sign::Zero && d2 != Sign::Zero && d3 != Sign::Zero {
            // Jacobi: negatives = sign changes in (1, D1, D2, D3)
            let q = sign_changes(&[Sign::Positive, d1, d2, d3]);
            return Signature::new(3 - q, q, 0);
        }
        self.signature_by_descartes(m)
    }

    /// Descartes' rule on χ(λ) = λ³ − tλ² + sλ − d, exact because χ is real-rooted.
    pub(crate) fn signature_by_descartes(&self, m: u32) -> Signature {
        let t = sign_at_unchecked(&self.trace, m);
        let s = sign_at_unchecked(&self.minor_sum, m);
        let d = sign_at_unchecked(&self.det, m);
        let zeros = if d != Sign::Zero {
            0
        } else if s != Sign::Zero {
            1
        } else if t != Sign::Zero {
            2
        } else {
            3
        };
        let positives = sign_changes(&[Sign::Positive, negate(t), s, negate(d)]);
        // χ(−λ) = −λ³ − tλ² − sλ − d
        let negatives = sign_changes(&[Sign::Negative, negate(t), negate(s), negate(d)]);
        debug_assert_eq!(positives + negatives + zeros, 3);
        Signature::new(positives, negatives, zeros)
    }
}

/// Signature of σ·H, by leading principal minors with a Descartes fallback
/// when a minor vanishes.
pub fn signature_at(h: &HermitianForm3, sigma: &GaloisAut) -> Result<Signature, FieldError> {
    if sigma.level() != h.level() {
        return Err(FieldError::LevelMismatch(sigma.level(), h.level()));
    }
    Ok(FormInvariants::of(h).signature_at(sigma.exponent()))
}

/// True iff the Gram form has signature (2,1) at the identity embedding.
///
/// A vanishing determinant means the polar vectors are dependent, which no
/// ideal marker can repair; ideal vertices only make 2×2 minors vanish, and
/// the Descartes fallback handles those.
pub fn triangle_exists(shape: &TriangleShape) -> bool {
    let h = gram_form(shape);
    FormInvariants::of(&h).signature_at(1).is_hyperbolic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{cos_pi_rational, numeric_embed, sign_real};
    use crate::hermitian::shape::Angle;
    use num_rational::Ratio;

    fn shape(b: [i64; 3], s: i64, t: i64) -> TriangleShape {
        TriangleShape::from_denominators(b, s, t).unwrap()
    }

    #[test]
    fn orthogonal_walls_give_identity() {
        for (s, t) in [(0, 1), (1, 3), (1, 1)] {
            let h = gram_form(&shape([2, 2, 2], s, t));
            assert!(h.matrix().is_identity());
            assert!(det_form(&h).is_one());
        }
    }

    #[test]
    fn equilateral_real_form() {
        let h = gram_form(&shape([3, 3, 3], 1, 1));
        let minus_half = CycElem::from_rational(h.level(), Ratio::new(-1, 2).into_big()).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)] {
            assert_eq!(*h.entry(i, j), minus_half);
        }
    }

    trait IntoBig {
        fn into_big(self) -> num_rational::BigRational;
    }
    impl IntoBig for Ratio<i64> {
        fn into_big(self) -> num_rational::BigRational {
            num_rational::BigRational::new((*self.numer()).into(), (*self.denom()).into())
        }
    }

    #[test]
    fn mixed_form_is_hermitian() {
        let h = gram_form(&shape([2, 4, 6], 1, 2));
        assert!(HermitianForm3::new(h.matrix().clone()).is_ok());
        assert!(h.entry(0, 1).is_zero());
        // ψ recovered from the triple product at the principal embedding
        let triple = &(h.entry(0, 1) * h.entry(1, 2)) * h.entry(2, 0);
        assert!(triple.is_zero());
        let h = gram_form(&shape([3, 4, 6], 1, 5));
        let triple = &(h.entry(0, 1) * h.entry(1, 2)) * h.entry(2, 0);
        let arg = numeric_embed(&triple, 1).arg();
        assert!((arg - std::f64::consts::PI / 5.0).abs() < 1e-12);
    }

    #[test]
    fn right_and_equilateral_determinants() {
        for (q, r) in [(3, 7), (4, 5), (5, 9)] {
            for (s, t) in [(1, 1), (1, 3), (2, 5)] {
                let sh = shape([2, q, r], s, t);
                let l = sh.level();
                let cq = cos_pi_rational(1, q, l).unwrap();
                let cr = cos_pi_rational(1, r, l).unwrap();
                let expect = &(&CycElem::one(l).unwrap() - &(&cq * &cq)) - &(&cr * &cr);
                assert_eq!(det_form(&gram_form(&sh)), expect);
            }
        }
        for n in [5i64, 7, 9] {
            for s in [1i64, 5, 7] {
                let sh = shape([n, n, n], s, 12 * n);
                let l = sh.level();
                let c = cos_pi_rational(1, n, l).unwrap();
                let cs = cos_pi_rational(s, 12 * n, l).unwrap();
                let three = CycElem::from_integer(l, 3).unwrap();
                let two = CycElem::from_integer(l, 2).unwrap();
                let c2 = &c * &c;
                let expect = &(&CycElem::one(l).unwrap() - &(&three * &c2)) + &(&(&two * &cs) * &(&c2 * &c));
                assert_eq!(det_form(&gram_form(&sh)), expect);
            }
        }
    }

    #[test]
    fn signature_examples() {
        let id = HermitianForm3::identity(14).unwrap();
        assert_eq!(signature_at(&id, &GaloisAut::new(14, 3).unwrap()).unwrap(), Signature::new(3, 0, 0));
        let h = gram_form(&shape([2, 3, 7], 1, 1));
        assert_eq!(h.level(), 84);
        let d = det_form(&h);
        assert_eq!(sign_real(&d).unwrap(), Sign::Negative);
        assert_eq!(signature_at(&h, &GaloisAut::identity(84).unwrap()).unwrap(), Signature::new(2, 1, 0));
        // m = 5 sends cos(π/7) to cos(5π/7) = −cos(2π/7); m = 11 sends it to cos(4π/7) = −cos(3π/7)
        let s11 = GaloisAut::new(84, 11).unwrap();
        assert_eq!(signature_at(&h, &s11).unwrap(), Signature::new(3, 0, 0));
        assert!(signature_at(&h, &GaloisAut::new(14, 3).unwrap()).is_err());
    }

    #[test]
    fn existence_examples() {
        assert!(!triangle_exists(&shape([2, 4, 4], 1, 3)));
        assert!(triangle_exists(&shape([2, 3, 7], 1, 1)));
        assert!(!triangle_exists(&shape([2, 2, 2], 1, 1)));
        let ideal = TriangleShape::new([Angle::pi_over(2).unwrap(), Angle::pi_over(3).unwrap(), Angle::Ideal], Ratio::new(1, 1));
        assert!(triangle_exists(&ideal));
    }

    #[test]
    fn degenerate_minor_uses_descartes() {
        // two ideal vertices: the leading 2×2 minor 1 − |e^{iψ}|² vanishes
        let sh = TriangleShape::new([Angle::Ideal, Angle::pi_over(3).unwrap(), Angle::Ideal], Ratio::new(1, 1));
        let h = gram_form(&sh);
        let inv = FormInvariants::of(&h);
        assert!(inv.d2.is_zero());
        assert_eq!(inv.signature_at(1), Signature::new(2, 1, 0));
        // all-ideal at ψ = 0: rank one
        let sh = TriangleShape::new([Angle::Ideal; 3], Ratio::new(0, 1));
        let inv = FormInvariants::of(&gram_form(&sh));
        assert_eq!(inv.signature_at(1), Signature::new(1, 0, 2));
    }
}
