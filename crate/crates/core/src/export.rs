//! Serialization helpers: exact integers as decimal strings, CSV tables.

use std::fmt::Write as _;

use crate::engine::{EventProfile, WalkCounts};

/// Serde adapters writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(|_| D::Error::custom(format!("bad integer `{t}`"))))
            .collect()
    }

    pub mod nested {
        use super::*;

        pub fn serialize<S: Serializer>(rows: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(
                rows.iter()
                    .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
            )
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|t| t.parse().map_err(|_| D::Error::custom(format!("bad integer `{t}`"))))
                        .collect()
                })
                .collect()
        }
    }

    /// Single big integer as a decimal string.
    pub mod one {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
            let t = String::deserialize(d)?;
            t.parse().map_err(|_| D::Error::custom(format!("bad integer `{t}`")))
        }
    }
}

/// `n,sigma_n,a_n` rows; `a_0` is left empty.
pub fn counts_csv(c: &WalkCounts) -> String {
    let mut out = String::from("n,sigma_n,a_n\n");
    for (n, v) in c.counts.iter().enumerate() {
        let a = c.root(n).map(|a| a.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{n},{v},{a}");
    }
    out
}

/// `n,r,count` rows.
pub fn events_csv(p: &EventProfile) -> String {
    let mut out = String::from("n,r,count\n");
    for (n, row) in p.counts.iter().enumerate() {
        for (r, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{n},{r},{v}");
        }
    }
    out
}
