//! JSON reports with stable key names.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use crate::linalg::{Int, Mat};
use crate::module::Morphism;
use crate::panachee::{Analysis, Completion, TorsorDescription};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntJson(pub Int);

impl From<Int> for IntJson {
    fn from(x: Int) -> Self {
        IntJson(x)
    }
}

impl Serialize for IntJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for IntJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntJson;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IntJson, E> {
                Ok(IntJson(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IntJson, E> {
                Ok(IntJson(Int::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<IntJson, E> {
                v.trim()
                    .parse::<Int>()
                    .map(IntJson)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn int_vec(v: &[Int]) -> Vec<IntJson> {
    v.iter().cloned().map(IntJson).collect()
}

pub fn int_rows(m: &Mat) -> Vec<Vec<IntJson>> {
    m.to_rows().iter().map(|r| int_vec(r)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub group_invariants: Vec<IntJson>,
    pub coords: Vec<IntJson>,
    pub is_zero: bool,
    pub crosscheck_coords: Vec<IntJson>,
}

impl ObstructionReport {
    pub fn new(an: &Analysis) -> Self {
        ObstructionReport {
            group_invariants: int_vec(an.ext2().invariants()),
            coords: int_vec(&an.obstruction.coords),
            is_zero: an.obstruction.is_zero(),
            crosscheck_coords: int_vec(&an.splice_sum.coords),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsorReport {
    pub group_invariants: Vec<IntJson>,
    /// `None` for an infinite quotient.
    pub size: Option<IntJson>,
    pub unique: bool,
}

impl TorsorReport {
    pub fn new(t: &TorsorDescription) -> Self {
        TorsorReport {
            group_invariants: int_vec(t.quotient.invariants()),
            size: t.size.clone().map(IntJson),
            unique: t.unique,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrices {
    pub e: Vec<Vec<IntJson>>,
    pub h: Vec<Vec<IntJson>>,
    pub f: Vec<Vec<IntJson>>,
    pub g: Vec<Vec<IntJson>>,
    #[serde(rename = "iP")]
    pub ip: Vec<Vec<IntJson>>,
    #[serde(rename = "pY")]
    pub py: Vec<Vec<IntJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionReport {
    #[serde(rename = "X_invariants")]
    pub x_invariants: Vec<IntJson>,
    pub class_coords: Vec<IntJson>,
    pub matrices: Matrices,
}

impl CompletionReport {
    pub fn new(c: &Completion) -> Self {
        let m = |f: &Morphism| int_rows(f.matrix());
        CompletionReport {
            x_invariants: int_vec(c.x.invariants()),
            class_coords: int_vec(&c.class_x.coords),
            matrices: Matrices {
                e: m(&c.e),
                h: m(&c.h),
                f: m(&c.f),
                g: m(&c.g),
                ip: m(c.x_ses.i()),
                py: m(c.x_ses.p()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub exists: bool,
    pub solution_classes: usize,
}

/// Top-level report; sections that were not computed are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub obstruction: Option<ObstructionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torsor: Option<TorsorReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub completion: Option<CompletionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<Vec<CompletionReport>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleReport>,
}

impl Report {
    pub fn new(ring: &crate::linalg::Ring) -> Self {
        Report {
            ring: ring.to_string(),
            obstruction: None,
            torsor: None,
            completion: None,
            solutions: None,
            oracle: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn ints_round_trip() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let v = vec![IntJson(int(-3)), IntJson(big.clone())];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[-3,"123456789012345678901234567890"]"#);
        let back: Vec<IntJson> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<IntJson>("\"x1\"").is_err());
    }
}
