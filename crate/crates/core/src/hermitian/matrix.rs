use std::array;

use crate::cyclotomic::CycElem;
use crate::error::FieldError;

/// A 3×3 matrix over Q(ζ_L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    level: u32,
    e: [[CycElem; 3]; 3],
}

impl Mat3 {
    pub fn new(level: u32, e: [[CycElem; 3]; 3]) -> Result<Self, FieldError> {
        for row in &e {
            for x in row {
                if x.level() != level {
                    return Err(FieldError::LevelMismatch(level, x.level()));
                }
            }
        }
        Ok(Self { level, e })
    }

    pub fn identity(level: u32) -> Result<Self, FieldError> {
        let one = CycElem::one(level)?;
        let zero = CycElem::zero(level)?;
        let e = array::from_fn(|i| array::from_fn(|j| if i == j { one.clone() } else { zero.clone() }));
        Ok(Self { level, e })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn get(&self, i: usize, j: usize) -> &CycElem {
        &self.e[i][j]
    }

    pub fn entries(&self) -> &[[CycElem; 3]; 3] {
        &self.e
    }

    pub fn map(&self, f: impl Fn(&CycElem) -> CycElem) -> Self {
        Self {
            level: self.level,
            e: array::from_fn(|i| array::from_fn(|j| f(&self.e[i][j]))),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            level: self.level,
            e: array::from_fn(|i| array::from_fn(|j| self.e[j][i].clone())),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(CycElem::conjugate)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        if self.level != other.level {
            return Err(FieldError::LevelMismatch(self.level, other.level));
        }
        let e = array::from_fn(|i| {
            array::from_fn(|j| {
                let mut acc = &self.e[i][0] * &other.e[0][j];
                for k in 1..3 {
                    acc = &acc + &(&self.e[i][k] * &other.e[k][j]);
                }
                acc
            })
        });
        Ok(Self { level: self.level, e })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        if self.level != other.level {
            return Err(FieldError::LevelMismatch(self.level, other.level));
        }
        Ok(Self {
            level: self.level,
            e: array::from_fn(|i| array::from_fn(|j| &self.e[i][j] - &other.e[i][j])),
        })
    }

    pub fn scalar(&self, c: &CycElem) -> Self {
        self.map(|x| x * c)
    }

    pub fn pow(&self, mut n: u32) -> Result<Self, FieldError> {
        let mut acc = Self::identity(self.level)?;
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| if i == j { self.e[i][j].is_one() } else { self.e[i][j].is_zero() }))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(CycElem::is_zero)
    }

    pub fn trace(&self) -> CycElem {
        &(&self.e[0][0] + &self.e[1][1]) + &self.e[2][2]
    }

    /// Determinant of the leading 2×2 block.
    pub fn leading_minor2(&self) -> CycElem {
        self.minor2(0, 1)
    }

    /// Principal 2×2 minor on rows/columns {i, j}.
    pub fn minor2(&self, i: usize, j: usize) -> CycElem {
        &(&self.e[i][i] * &self.e[j][j]) - &(&self.e[i][j] * &self.e[j][i])
    }

    /// Sum of the three principal 2×2 minors.
    pub fn principal_minor_sum(&self) -> CycElem {
        &(&self.minor2(0, 1) + &self.minor2(0, 2)) + &self.minor2(1, 2)
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> CycElem {
        let e = &self.e;
        let c0 = &(&e[1][1] * &e[2][2]) - &(&e[1][2] * &e[2][1]);
        let c1 = &(&e[1][0] * &e[2][2]) - &(&e[1][2] * &e[2][0]);
        let c2 = &(&e[1][0] * &e[2][1]) - &(&e[1][1] * &e[2][0]);
        &(&(&e[0][0] * &c0) - &(&e[0][1] * &c1)) + &(&e[0][2] * &c2)
    }

    /// Complex-valued matrix at the embedding ζ ↦ exp(2πim/L).
    pub fn numeric(&self, m: u32) -> [[num_complex::Complex64; 3]; 3] {
        array::from_fn(|i| array::from_fn(|j| crate::cyclotomic::numeric_embed(&self.e[i][j], m)))
    }
}
