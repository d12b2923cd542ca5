//! `RationalFunction` as a pair of integer coefficient lists (low degree
//! first) written as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AlgebraError, Polynomial, RationalFunction};

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient `{0}` is not a decimal integer")]
    BadInteger(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionRepr {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn parse_ints(v: &[String]) -> Result<Vec<BigInt>, SerialError> {
    v.iter()
        .map(|s| s.parse::<BigInt>().map_err(|_| SerialError::BadInteger(s.clone())))
        .collect()
}

impl From<&RationalFunction> for RationalFunctionRepr {
    fn from(f: &RationalFunction) -> Self {
        RationalFunctionRepr {
            numerator: strings(&f.numerator_ints()),
            denominator: strings(&f.denominator_ints()),
        }
    }
}

impl TryFrom<&RationalFunctionRepr> for RationalFunction {
    type Error = SerialError;

    fn try_from(r: &RationalFunctionRepr) -> Result<Self, Self::Error> {
        let num = Polynomial::from_bigints(&parse_ints(&r.numerator)?);
        let den = Polynomial::from_bigints(&parse_ints(&r.denominator)?);
        Ok(RationalFunction::new(num, den)?)
    }
}

impl RationalFunction {
    /// `{"numerator": [...], "denominator": [...]}` with decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&RationalFunctionRepr::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SerialError> {
        let repr: RationalFunctionRepr = serde_json::from_str(text)?;
        RationalFunction::try_from(&repr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let f = RationalFunction::from_int_coeffs(&[1, -2, 2], &[1, -3, 3, -1]).unwrap();
        assert_eq!(
            f.to_json(),
            r#"{"numerator":["1","-2","2"],"denominator":["1","-3","3","-1"]}"#
        );
        assert_eq!(RationalFunction::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(
            RationalFunction::zero().to_json(),
            r#"{"numerator":[],"denominator":["1"]}"#
        );
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            RationalFunction::from_json(r#"{"numerator":["x"],"denominator":["1"]}"#),
            Err(SerialError::BadInteger(_))
        ));
        assert!(matches!(
            RationalFunction::from_json(r#"{"numerator":["1"],"denominator":[]}"#),
            Err(SerialError::Algebra(AlgebraError::ZeroDenominator))
        ));
        assert!(matches!(RationalFunction::from_json("[1,2"), Err(SerialError::Json(_))));
    }
}
