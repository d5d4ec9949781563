//! JSON spec files.
//!
//! ```json
//! {
//!   "order": 10,
//!   "alpha": {"kind": "family", "family": "exp", "params": {"c": "1"}},
//!   "r": {"kind": "list", "values": ["0", "1"], "convention": "paper_Rn_over_n"}
//! }
//! ```
//!
//! `r.values` lists `R_1, R_2, ...` of `R(t) = sum R_n t^n / n`; indices past the
//! end of the list are zero, so a list shorter than `order` describes a
//! polynomial `R`. The `convention` string is mandatory.

use std::collections::BTreeMap;
use std::path::Path;

use gfc_core::families::alpha_from_lambdas;
use gfc_core::rational::int;
use gfc_core::{GenFunError, GenFunSpec, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{exacts, rationals, Exact};
use crate::CliError;

/// The only accepted value of `r.convention`.
pub const R_CONVENTION: &str = "paper_Rn_over_n";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub order: usize,
    pub alpha: AlphaSource,
    pub r: RSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlphaSource {
    /// `alpha_0, alpha_1, ...`
    List { values: Vec<Exact> },
    Family {
        family: FamilyName,
        #[serde(default)]
        params: BTreeMap<String, Exact>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    /// `lambda1` (default 1), `alpha1` (default 1)
    Hermite,
    /// `lambda2` (default 2), `alpha1` (default 1)
    Chebyshev1,
    /// `lambda1`, `lambda2` (required), `alpha1` (default 1)
    Ultraspherical,
    /// `exp(c t)`, `c` default 1
    Exp,
    /// `(1 - b t)^{-a}`, `a` required, `b` default 1
    Binomial,
    /// `1 + ln(1/(1 - c t)) / c`, `c` default 2
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RKind {
    List,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RSource {
    pub kind: RKind,
    pub values: Vec<Exact>,
    pub convention: String,
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

impl From<GenFunError> for CliError {
    fn from(e: GenFunError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        if file.r.convention != R_CONVENTION {
            return Err(parse_err(format!(
                "r.convention must be {R_CONVENTION:?}, got {:?}",
                file.r.convention
            )));
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }

    /// Spec from explicit coefficient lists.
    pub fn from_lists(alpha: &[Rational], r: &[Rational]) -> Self {
        SpecFile {
            order: alpha.len() - 1,
            alpha: AlphaSource::List { values: exacts(alpha) },
            r: RSource { kind: RKind::List, values: exacts(r), convention: R_CONVENTION.into() },
        }
    }

    /// Builds the in-memory spec at the file's order, or at `order` when given.
    pub fn to_spec(&self, order: Option<usize>) -> Result<GenFunSpec, CliError> {
        let order = order.unwrap_or(self.order);
        if order == 0 {
            return Err(parse_err("order must be at least 1"));
        }
        let max = crate::max_order()?;
        if order > max {
            return Err(CliError::Precondition(format!(
                "order {order} exceeds {}={max}",
                crate::MAX_ORDER_VAR
            )));
        }
        let alpha = self.alpha.values(order)?;
        if self.r.values.len() > self.order {
            return Err(parse_err(format!(
                "r lists {} values but order is {}",
                self.r.values.len(),
                self.order
            )));
        }
        // a lower order override truncates, a higher one pads with zeros
        let mut r = rationals(&self.r.values);
        r.resize(order, Rational::zero());
        Ok(GenFunSpec::new(alpha, r, order)?)
    }
}

fn param(params: &BTreeMap<String, Exact>, key: &str, default: Option<Rational>) -> Result<Rational, CliError> {
    match params.get(key) {
        Some(v) => Ok(v.0.clone()),
        None => default.ok_or_else(|| parse_err(format!("missing family parameter {key:?}"))),
    }
}

impl AlphaSource {
    /// `alpha_0..=alpha_order`.
    pub fn values(&self, order: usize) -> Result<Vec<Rational>, CliError> {
        match self {
            AlphaSource::List { values } => {
                if values.len() < order + 1 {
                    return Err(parse_err(format!(
                        "alpha lists {} values, order {order} needs {}",
                        values.len(),
                        order + 1
                    )));
                }
                Ok(rationals(&values[..=order]))
            }
            AlphaSource::Family { family, params } => {
                let allowed: &[&str] = match family {
                    FamilyName::Hermite => &["lambda1", "alpha1"],
                    FamilyName::Chebyshev1 => &["lambda2", "alpha1"],
                    FamilyName::Ultraspherical => &["lambda1", "lambda2", "alpha1"],
                    FamilyName::Exp | FamilyName::Log => &["c"],
                    FamilyName::Binomial => &["a", "b"],
                };
                if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
                    return Err(parse_err(format!("unknown parameter {k:?} for {family:?}")));
                }
                let one = Some(Rational::one());
                let (l1, l2, a1) = match family {
                    FamilyName::Hermite => {
                        (param(params, "lambda1", one.clone())?, Rational::zero(), param(params, "alpha1", one)?)
                    }
                    FamilyName::Chebyshev1 => {
                        (Rational::zero(), param(params, "lambda2", Some(int(2)))?, param(params, "alpha1", one)?)
                    }
                    FamilyName::Ultraspherical => (
                        param(params, "lambda1", None)?,
                        param(params, "lambda2", None)?,
                        param(params, "alpha1", one)?,
                    ),
                    FamilyName::Exp => {
                        let c = param(params, "c", one)?;
                        (c.clone(), Rational::zero(), c)
                    }
                    FamilyName::Binomial => {
                        let a = param(params, "a", None)?;
                        let b = param(params, "b", one)?;
                        let ab = &a * &b;
                        (ab.clone(), b, ab)
                    }
                    FamilyName::Log => {
                        let c = param(params, "c", Some(int(2)))?;
                        (Rational::zero(), c, Rational::one())
                    }
                };
                alpha_from_lambdas(&l1, &l2, &a1, order).map_err(|e| CliError::Precondition(e.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gfc_core::rational::frac;

    const HERMITE: &str = r#"{
        "order": 6,
        "alpha": {"kind": "family", "family": "exp"},
        "r": {"kind": "list", "values": ["0", "1"], "convention": "paper_Rn_over_n"}
    }"#;

    #[test]
    fn parses_family_spec() {
        let f = SpecFile::from_json(HERMITE).unwrap();
        let spec = f.to_spec(None).unwrap();
        assert_eq!(spec.order(), 6);
        assert_eq!(spec.alpha_n(3), &frac(1, 6));
        assert_eq!(spec.r_n(2), Some(&int(1)));
        assert_eq!(spec.r_n(6), Some(&int(0)));
        assert_eq!(f.to_spec(Some(9)).unwrap().order(), 9);
    }

    #[test]
    fn convention_is_mandatory() {
        let bad = HERMITE.replace("paper_Rn_over_n", "coefficients");
        assert!(matches!(SpecFile::from_json(&bad), Err(CliError::Parse(_))));
        let missing = HERMITE.replace(r#", "convention": "paper_Rn_over_n""#, "");
        assert!(matches!(SpecFile::from_json(&missing), Err(CliError::Parse(_))));
    }

    #[test]
    fn floats_and_unknown_fields_are_rejected() {
        let float = HERMITE.replace(r#""1"]"#, r#"1.0]"#);
        assert!(SpecFile::from_json(&float).is_err());
        let extra = HERMITE.replace(r#""order": 6,"#, r#""order": 6, "extra": 1,"#);
        assert!(SpecFile::from_json(&extra).is_err());
    }

    #[test]
    fn family_generators() {
        let cases = [
            (r#"{"kind":"family","family":"binomial","params":{"a":"1/2","b":"2"}}"#, vec![int(1), int(1), frac(3, 2), frac(5, 2)]),
            (r#"{"kind":"family","family":"log"}"#, vec![int(1), int(1), int(1), frac(4, 3)]),
            (r#"{"kind":"family","family":"chebyshev1"}"#, vec![int(1), int(1), int(1), frac(4, 3)]),
            (r#"{"kind":"family","family":"exp","params":{"c":"2"}}"#, vec![int(1), int(2), int(2), frac(4, 3)]),
            (r#"{"kind":"family","family":"hermite"}"#, vec![int(1), int(1), frac(1, 2), frac(1, 6)]),
            (r#"{"kind":"family","family":"ultraspherical","params":{"lambda1":"1","lambda2":"2"}}"#, vec![int(1), int(1), frac(3, 2), frac(5, 2)]),
        ];
        for (json, expected) in cases {
            let src: AlphaSource = serde_json::from_str(json).unwrap();
            assert_eq!(src.values(3).unwrap(), expected, "{json}");
        }
        let missing: AlphaSource = serde_json::from_str(r#"{"kind":"family","family":"binomial"}"#).unwrap();
        assert!(matches!(missing.values(3), Err(CliError::Parse(_))));
        let unknown: AlphaSource = serde_json::from_str(r#"{"kind":"family","family":"exp","params":{"z":"1"}}"#).unwrap();
        assert!(matches!(unknown.values(3), Err(CliError::Parse(_))));
    }

    #[test]
    fn list_lengths_are_checked() {
        let f = SpecFile::from_lists(&[int(1), int(1), int(1)], &[int(0), int(1)]);
        assert!(f.to_spec(None).is_ok());
        assert!(matches!(f.to_spec(Some(3)), Err(CliError::Parse(_))));
        assert_eq!(f.to_spec(Some(1)).unwrap().r_coeffs(), &[int(0)]);
        let long_r = SpecFile::from_lists(&[int(1), int(1)], &[int(0), int(1)]);
        assert!(matches!(long_r.to_spec(None), Err(CliError::Parse(_))));
    }

    #[test]
    fn invariant_violations_are_preconditions() {
        let f = SpecFile::from_lists(&[int(2), int(1), int(1)], &[int(0), int(1)]);
        assert!(matches!(f.to_spec(None), Err(CliError::Precondition(_))));
    }

    #[test]
    fn round_trip() {
        let f = SpecFile::from_json(HERMITE).unwrap();
        assert_eq!(SpecFile::from_json(&f.to_json()).unwrap(), f);
    }
}
