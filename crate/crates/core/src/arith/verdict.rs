use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of an obstruction test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Admissible,
    RuledOut,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Admissible => "ADMISSIBLE",
            Status::RuledOut => "RULED_OUT",
            Status::Indeterminate => "INDETERMINATE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which check decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReasonTag {
    /// Every check passed.
    Consistent,
    /// det h = 0 at the identity place.
    Degenerate,
    /// det h > 0 at the identity place.
    NotIndefinite,
    /// A reflection factor lies outside the upper bound for E.
    ReflectionFactorOutsideE,
    /// The lower bound for E is not contained in the upper bound.
    FieldBoundsInconsistent,
    /// A place with negative determinant moves the lower bound for E.
    NegativePlaceMovesE,
    /// The count of negative places fits no field between the bounds.
    PlaceCountMismatch,
    /// A negative place fixes the lower bound but moves the upper bound.
    NegativePlaceBetweenBounds,
    /// The count of negative places fits a field strictly inside the upper bound.
    PlaceCountBetweenBounds,
    /// A nontrivial conjugate of the Takeuchi determinant is not positive.
    ConjugateNotPositive,
}

impl ReasonTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ReasonTag::Consistent => "CONSISTENT",
            ReasonTag::Degenerate => "DEGENERATE",
            ReasonTag::NotIndefinite => "NOT_INDEFINITE",
            ReasonTag::ReflectionFactorOutsideE => "REFLECTION_FACTOR_OUTSIDE_E",
            ReasonTag::FieldBoundsInconsistent => "FIELD_BOUNDS_INCONSISTENT",
            ReasonTag::NegativePlaceMovesE => "NEGATIVE_PLACE_MOVES_E",
            ReasonTag::PlaceCountMismatch => "PLACE_COUNT_MISMATCH",
            ReasonTag::NegativePlaceBetweenBounds => "NEGATIVE_PLACE_BETWEEN_BOUNDS",
            ReasonTag::PlaceCountBetweenBounds => "PLACE_COUNT_BETWEEN_BOUNDS",
            ReasonTag::ConjugateNotPositive => "CONJUGATE_NOT_POSITIVE",
        }
    }
}

impl fmt::Display for ReasonTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A status with the check that produced it and, when one exists, the
/// exponent m of the Galois automorphism ζ_L ↦ ζ_L^m that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub tag: ReasonTag,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<u32>,
}

impl Verdict {
    pub fn admissible(reason: impl Into<String>) -> Self {
        Self {
            status: Status::Admissible,
            tag: ReasonTag::Consistent,
            reason: reason.into(),
            witness: None,
        }
    }

    pub fn ruled_out(tag: ReasonTag, reason: impl Into<String>, witness: Option<u32>) -> Self {
        Self {
            status: Status::RuledOut,
            tag,
            reason: reason.into(),
            witness,
        }
    }

    pub fn indeterminate(tag: ReasonTag, reason: impl Into<String>, witness: Option<u32>) -> Self {
        Self {
            status: Status::Indeterminate,
            tag,
            reason: reason.into(),
            witness,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.status == Status::Admissible
    }

    pub fn is_ruled_out(&self) -> bool {
        self.status == Status::RuledOut
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.status, self.tag, self.reason)?;
        if let Some(m) = self.witness {
            write!(f, " (witness m = {m})")?;
        }
        Ok(())
    }
}
