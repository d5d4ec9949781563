//! Rationals on the wire: always `"p/q"` or `"p"` strings, never floats.

use std::fmt;

use gfc_core::rational::{format, parse};
use gfc_core::Rational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exact(pub Rational);

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact(r.clone())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(&self.0))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(&self.0))
    }
}

struct ExactVisitor;

impl Visitor<'_> for ExactVisitor {
    type Value = Exact;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or \"p\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
        parse(v)
            .map(Exact)
            .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_str(ExactVisitor)
    }
}

pub fn exacts(rs: &[Rational]) -> Vec<Exact> {
    rs.iter().map(Exact::from).collect()
}

pub fn rationals(es: &[Exact]) -> Vec<Rational> {
    es.iter().map(|e| e.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gfc_core::rational::frac;

    #[test]
    fn floats_are_rejected() {
        assert!(serde_json::from_str::<Exact>("0.5").is_err());
        assert!(serde_json::from_str::<Exact>("\"0.5\"").is_err());
        assert!(serde_json::from_str::<Exact>("\"1/0\"").is_err());
        assert_eq!(serde_json::from_str::<Exact>("\"-2/4\"").unwrap(), Exact(frac(-1, 2)));
        assert_eq!(serde_json::to_string(&Exact(frac(9, 35))).unwrap(), "\"9/35\"");
    }
}
