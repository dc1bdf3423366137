//! Candidate complex hyperbolic triangle groups, their complex reflections,
//! and the generator sets bounding the field E of definition.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycElem;
use crate::error::{FieldError, Result, TriangleError};
use crate::hermitian::{gram_form_at, lcm_level, triangle_exists, HermitianForm3, Mat3, ShapeJson, TriangleShape};

/// A triangle shape together with reflection orders n_j and factors
/// η_j = exp(2πi k_j / n_j).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateGroup {
    shape: TriangleShape,
    orders: [u32; 3],
    exponents: [u32; 3],
}

impl CandidateGroup {
    /// Primitive factors η_j = e^{2πi/n_j}.
    pub fn new(shape: TriangleShape, orders: [i64; 3]) -> Result<Self> {
        Self::with_exponents(shape, orders, [1, 1, 1])
    }

    pub fn with_exponents(shape: TriangleShape, orders: [i64; 3], exponents: [i64; 3]) -> Result<Self> {
        let mut n = [0u32; 3];
        let mut k = [0u32; 3];
        for j in 0..3 {
            if orders[j] < 2 || orders[j] > u32::MAX as i64 {
                return Err(TriangleError::InvalidOrder(orders[j]));
            }
            if exponents[j].gcd(&orders[j]) != 1 {
                return Err(TriangleError::InvalidFactorExponent {
                    k: exponents[j],
                    n: orders[j],
                });
            }
            n[j] = orders[j] as u32;
            k[j] = exponents[j].rem_euclid(orders[j]) as u32;
        }
        let c = Self {
            shape,
            orders: n,
            exponents: k,
        };
        c.try_level()?;
        Ok(c)
    }

    pub fn shape(&self) -> &TriangleShape {
        &self.shape
    }

    pub fn orders(&self) -> [u32; 3] {
        self.orders
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.exponents
    }

    fn try_level(&self) -> Result<u32> {
        let mut level = self.shape.level() as u64;
        for n in self.orders {
            level = level.lcm(&(n as u64));
            if level > u32::MAX as u64 {
                return Err(TriangleError::InvalidArgument(format!("common level {level} is too large")));
            }
        }
        Ok(level as u32)
    }

    /// lcm of the shape level and the orders.
    pub fn level(&self) -> u32 {
        self.orders.iter().fold(self.shape.level(), |l, &n| lcm_level(l, n as u64))
    }

    /// η_j at the given level (0-based j).
    pub fn eta(&self, j: usize, level: u32) -> Result<CycElem, FieldError> {
        let n = self.orders[j];
        if level % n != 0 {
            return Err(FieldError::LevelMismatch(n, level));
        }
        CycElem::root_power(level, (self.exponents[j] * (level / n)) as i64)
    }

    pub fn etas(&self, level: u32) -> Result<[CycElem; 3], FieldError> {
        Ok([self.eta(0, level)?, self.eta(1, level)?, self.eta(2, level)?])
    }

    /// The Gram form expressed at the candidate level.
    pub fn gram_form(&self) -> HermitianForm3 {
        gram_form_at(&self.shape, self.level()).expect("candidate level is a multiple of the shape level")
    }

    /// Relabels the walls; each order travels with its wall.
    pub fn relabel(&self, perm: [usize; 3]) -> Self {
        let mut orders = self.orders;
        let mut exponents = self.exponents;
        for j in 0..3 {
            orders[perm[j]] = self.orders[j];
            exponents[perm[j]] = self.exponents[j];
        }
        Self {
            shape: self.shape.relabel(perm),
            orders,
            exponents,
        }
    }

    /// The candidate with ψ ↦ −ψ and every factor conjugated.
    pub fn conjugate(&self) -> Self {
        Self {
            shape: TriangleShape::new(*self.shape.angles(), -self.shape.psi()),
            orders: self.orders,
            exponents: [0, 1, 2].map(|j| (self.orders[j] - self.exponents[j]) % self.orders[j]),
        }
    }
}

impl fmt::Display for CandidateGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, orders=({},{},{})",
            self.shape, self.orders[0], self.orders[1], self.orders[2]
        )
    }
}

/// `{"angles": [...], "psi": "s/t", "orders": [n1,n2,n3], "factor_exponents": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub angles: [String; 3],
    pub psi: String,
    pub orders: [i64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_exponents: Option<[i64; 3]>,
}

impl From<&CandidateGroup> for CandidateJson {
    fn from(c: &CandidateGroup) -> Self {
        let shape = ShapeJson::from(&c.shape);
        let primitive = c.exponents == [1, 1, 1];
        Self {
            angles: shape.angles,
            psi: shape.psi,
            orders: c.orders.map(i64::from),
            factor_exponents: (!primitive).then(|| c.exponents.map(i64::from)),
        }
    }
}

impl TryFrom<&CandidateJson> for CandidateGroup {
    type Error = TriangleError;

    fn try_from(j: &CandidateJson) -> Result<Self> {
        let shape = TriangleShape::try_from(&ShapeJson {
            angles: j.angles.clone(),
            psi: j.psi.clone(),
        })?;
        CandidateGroup::with_exponents(shape, j.orders, j.factor_exponents.unwrap_or([1, 1, 1]))
    }
}

/// A 3×3 complex reflection over Q(ζ_L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionMatrix {
    matrix: Mat3,
}

impl ReflectionMatrix {
    pub fn new(matrix: Mat3) -> Self {
        Self { matrix }
    }

    pub fn level(&self) -> u32 {
        self.matrix.level()
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    /// The nontrivial eigenvalue, read off as trace − 2.
    pub fn factor(&self) -> CycElem {
        &self.matrix.trace() - &CycElem::from_integer(self.level(), 2).expect("valid level")
    }
}

/// The reflection in wall j (0-based) with polar vector e_j:
/// z ↦ z + (η_j − 1)·h(z, e_j)/h(e_j, e_j)·e_j, where h(z, w) = zᵀ H w̄.
pub fn reflection_matrix(candidate: &CandidateGroup, j: usize) -> Result<ReflectionMatrix> {
    if j > 2 {
        return Err(TriangleError::InvalidArgument(format!("wall index {j} out of range")));
    }
    if !triangle_exists(candidate.shape()) {
        return Err(TriangleError::DegenerateTriangle);
    }
    let level = candidate.level();
    let h = candidate.gram_form();
    Ok(reflection_in(&h, j, &candidate.eta(j, level)?)?)
}

pub(crate) fn reflection_in(h: &HermitianForm3, j: usize, eta: &CycElem) -> Result<ReflectionMatrix, FieldError> {
    let level = h.level();
    let scale = (eta - &CycElem::one(level)?).try_div(h.entry(j, j))?;
    let mut rows = Mat3::identity(level)?.entries().clone();
    for (a, slot) in rows[j].iter_mut().enumerate() {
        *slot = &*slot + &(&scale * h.entry(a, j));
    }
    Ok(ReflectionMatrix::new(Mat3::new(level, rows)?))
}

/// True iff Rᵀ H R̄ = H, R^n = I and R has eigenvalues {1, 1, η} with η ≠ 1,
/// all decided exactly.
pub fn verify_reflection(r: &ReflectionMatrix, h: &HermitianForm3, n: u32) -> bool {
    if r.level() != h.level() || n == 0 {
        return false;
    }
    preserves_form(r.matrix(), h) && r.matrix().pow(n).is_ok_and(|p| p.is_identity()) && has_reflection_spectrum(r)
}

/// Rᵀ H R̄ = H, which is h(Rz, Rw) = h(z, w) for h(z, w) = zᵀ H w̄.
pub fn preserves_form(m: &Mat3, h: &HermitianForm3) -> bool {
    m.transpose()
        .mul(h.matrix())
        .and_then(|x| x.mul(&m.conj()))
        .is_ok_and(|x| x == *h.matrix())
}

fn has_reflection_spectrum(r: &ReflectionMatrix) -> bool {
    let m = r.matrix();
    let level = r.level();
    let eta = r.factor();
    if eta.is_one() {
        return false;
    }
    let one = CycElem::one(level).expect("valid level");
    let two = CycElem::from_integer(level, 2).expect("valid level");
    // χ(λ) = (λ−1)²(λ−η) = λ³ − (2+η)λ² + (1+2η)λ − η
    if m.principal_minor_sum() != &one + &(&two * &eta) || m.det() != eta {
        return false;
    }
    // (R − I)(R − ηI) = 0 forces diagonalizability
    let id = Mat3::identity(level).expect("valid level");
    let (Ok(a), Ok(b)) = (m.sub(&id), m.sub(&id.scalar(&eta))) else {
        return false;
    };
    a.mul(&b).is_ok_and(|p| p.is_zero())
}

fn cos_squares(shape: &TriangleShape, level: u32) -> Result<Vec<CycElem>, FieldError> {
    shape
        .angles()
        .iter()
        .map(|a| a.cos(level).map(|c| &c * &c))
        .collect()
}

fn phased_product(shape: &TriangleShape, level: u32) -> Result<CycElem, FieldError> {
    let mut p = shape.phase(level)?;
    for a in shape.angles() {
        p = &p * &a.cos(level)?;
    }
    Ok(p)
}

/// η₁, η₂, η₃, cos²θ₁, cos²θ₂, cos²θ₃, e^{iψ}cosθ₁cosθ₂cosθ₃: generators of
/// the trace field, at the candidate level.
pub fn trace_field_generators(candidate: &CandidateGroup) -> Result<Vec<CycElem>> {
    let level = candidate.level();
    let mut gens: Vec<CycElem> = candidate.etas(level)?.into();
    gens.extend(cos_squares(candidate.shape(), level)?);
    gens.push(phased_product(candidate.shape(), level)?);
    Ok(gens)
}

/// Generators of the lower bound {η_j, cos²θ_j, e^{2iψ}} and the upper
/// bound {cos²θ_j, e^{iψ}∏cosθ_j} for E.
pub fn field_e_bounds(candidate: &CandidateGroup) -> Result<(Vec<CycElem>, Vec<CycElem>)> {
    let level = candidate.level();
    let squares = cos_squares(candidate.shape(), level)?;
    let phase = candidate.shape().phase(level)?;
    let mut lower: Vec<CycElem> = candidate.etas(level)?.into();
    lower.extend(squares.iter().cloned());
    lower.push(&phase * &phase);
    let mut upper = squares;
    upper.push(phased_product(candidate.shape(), level)?);
    Ok((lower, upper))
}

/// cosθ₁, cosθ₂, cosθ₃, e^{iψ} at the given level (a multiple of the shape level).
pub fn e_triangle_generators_at(shape: &TriangleShape, level: u32) -> Result<Vec<CycElem>, FieldError> {
    let mut gens: Vec<CycElem> = shape
        .angles()
        .iter()
        .map(|a| a.cos(level))
        .collect::<Result<_, _>>()?;
    gens.push(shape.phase(level)?);
    Ok(gens)
}

/// cosθ₁, cosθ₂, cosθ₃, e^{iψ} at the shape level.
pub fn e_triangle_generators(shape: &TriangleShape) -> Vec<CycElem> {
    e_triangle_generators_at(shape, shape.level()).expect("shape level is valid")
}
