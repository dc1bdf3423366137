//! Wire form `{"level": L, "coeffs": ["p/q", ...]}`.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::CycElem;
use crate::error::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycElemJson {
    pub level: u32,
    pub coeffs: Vec<String>,
}

impl From<&CycElem> for CycElemJson {
    fn from(x: &CycElem) -> Self {
        Self {
            level: x.level(),
            coeffs: x.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<&CycElemJson> for CycElem {
    type Error = FieldError;

    fn try_from(j: &CycElemJson) -> Result<Self, FieldError> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| crate::rational::parse_rational(s).map_err(FieldError::Malformed))
            .collect::<Result<Vec<BigRational>, _>>()?;
        CycElem::from_coeffs(j.level, &coeffs)
    }
}

impl Serialize for CycElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycElemJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycElemJson::deserialize(d)?;
        CycElem::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cos_pi_rational;
    use proptest::prelude::*;

    #[test]
    fn wire_shape() {
        let c = cos_pi_rational(1, 3, 12).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"level":12,"coeffs":["1/2","0","0","0"]}"#);
        assert!(serde_json::from_str::<CycElem>(r#"{"level":12,"coeffs":["1/2"]}"#).is_err());
        assert!(serde_json::from_str::<CycElem>(r#"{"level":12,"coeffs":["x","0","0","0"]}"#).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(a in -50i64..50, b in 1i64..40) {
            let x = cos_pi_rational(a, b, (2 * b) as u32).unwrap();
            let back: CycElem = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
