//! The Galois group (Z/L)^× acting on Q(ζ_L).

use super::field::{is_unit, CycElem};
use super::sign::certainly_moved;
use crate::error::FieldError;
use crate::numtheory::units;

/// The automorphism σ_m : ζ_L ↦ ζ_L^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisAut {
    level: u32,
    exponent: u32,
}

impl GaloisAut {
    pub fn new(level: u32, exponent: i64) -> Result<Self, FieldError> {
        if level == 0 || level % 2 == 1 {
            return Err(FieldError::InvalidLevel(level));
        }
        let m = exponent.rem_euclid(level as i64) as u32;
        if !is_unit(m, level) {
            return Err(FieldError::NotAUnit(m, level));
        }
        Ok(Self { level, exponent: m })
    }

    pub fn identity(level: u32) -> Result<Self, FieldError> {
        Self::new(level, 1)
    }

    /// Complex conjugation, σ_{L−1}.
    pub fn conjugation(level: u32) -> Result<Self, FieldError> {
        Self::new(level, level as i64 - 1)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `self ∘ other`, i.e. σ_{m·m′}.
    pub fn compose(&self, other: &Self) -> Result<Self, FieldError> {
        if self.level != other.level {
            return Err(FieldError::LevelMismatch(self.level, other.level));
        }
        let m = (self.exponent as u64 * other.exponent as u64) % self.level as u64;
        Ok(Self {
            level: self.level,
            exponent: m as u32,
        })
    }

    /// All automorphisms at a level, in increasing exponent order.
    pub fn all(level: u32) -> Result<Vec<Self>, FieldError> {
        if level == 0 || level % 2 == 1 {
            return Err(FieldError::InvalidLevel(level));
        }
        Ok(units(level)
            .into_iter()
            .map(|m| Self { level, exponent: m })
            .collect())
    }
}

pub fn apply_galois(sigma: &GaloisAut, x: &CycElem) -> Result<CycElem, FieldError> {
    if sigma.level != x.level() {
        return Err(FieldError::LevelMismatch(sigma.level, x.level()));
    }
    if sigma.exponent == 1 {
        return Ok(x.clone());
    }
    Ok(x.galois_image(sigma.exponent))
}

pub fn conjugate(x: &CycElem) -> CycElem {
    x.conjugate()
}

/// Exact test σ_m(x) = x, with a certified numeric shortcut for the
/// common case where the images are visibly different.
pub(crate) fn fixes(m: u32, x: &CycElem) -> bool {
    if m % x.level() == 1 || x.as_rational().is_some() {
        return true;
    }
    if certainly_moved(x, m) {
        return false;
    }
    x.galois_image(m) == *x
}

pub fn fixes_all(sigma: &GaloisAut, gens: &[CycElem]) -> Result<bool, FieldError> {
    for g in gens {
        if g.level() != sigma.level {
            return Err(FieldError::LevelMismatch(sigma.level, g.level()));
        }
    }
    Ok(gens.iter().all(|g| fixes(sigma.exponent, g)))
}

/// The subgroup of (Z/L)^× fixing every generator, as a membership table
/// indexed by residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilizer {
    level: u32,
    member: Vec<bool>,
    order: usize,
}

impl Stabilizer {
    /// Computes Stab(gens) ⊆ (Z/L)^×.
    ///
    /// Elements generated by already-verified members are admitted without
    /// re-checking; everything else is tested exactly.
    pub fn of(level: u32, gens: &[CycElem]) -> Result<Self, FieldError> {
        if level == 0 || level % 2 == 1 {
            return Err(FieldError::InvalidLevel(level));
        }
        for g in gens {
            if g.level() != level {
                return Err(FieldError::LevelMismatch(level, g.level()));
            }
        }
        let l = level as usize;
        let mut member = vec![false; l];
        member[1 % l] = true;
        let mut elems = vec![1u32 % level];
        for m in units(level) {
            if member[m as usize] {
                continue;
            }
            if gens.iter().all(|g| fixes(m, g)) {
                // close the subgroup under multiplication by m
                let mut power = m;
                let mut cyclic = Vec::new();
                while !elems.contains(&power) && !cyclic.contains(&power) {
                    cyclic.push(power);
                    power = ((power as u64 * m as u64) % level as u64) as u32;
                }
                let mut added = Vec::new();
                for &c in &cyclic {
                    for &h in &elems {
                        let v = ((c as u64 * h as u64) % level as u64) as u32;
                        if !member[v as usize] {
                            member[v as usize] = true;
                            added.push(v);
                        }
                    }
                }
                elems.extend(added);
            }
        }
        let order = elems.len();
        Ok(Self {
            level,
            member,
            order,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn contains(&self, m: u32) -> bool {
        self.member[(m % self.level) as usize]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Exponents in the subgroup, ascending.
    pub fn elements(&self) -> Vec<u32> {
        (0..self.level).filter(|&m| self.member[m as usize]).collect()
    }

    /// True when `self` ⊆ `other`.
    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.level == other.level
            && self
                .member
                .iter()
                .zip(&other.member)
                .all(|(&a, &b)| !a || b)
    }

    /// Degree over Q of the fixed field, φ(L) / |Stab|.
    pub fn fixed_field_degree(&self) -> usize {
        units(self.level).len() / self.order
    }
}

/// [Q(gens) : Q] by orbit–stabilizer in (Z/L)^×.
pub fn subfield_degree(gens: &[CycElem]) -> Result<usize, FieldError> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    Ok(Stabilizer::of(first.level(), gens)?.fixed_field_degree())
}
