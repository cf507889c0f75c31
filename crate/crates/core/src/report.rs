//! The machine-readable analysis report and its JSON conventions: exact
//! integers serialize as JSON numbers when they fit losslessly in a double
//! and as decimal strings beyond that (bound values get astronomical).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bounds::{BoundVerdict, SkippedCheck};

const SAFE_ABS: i64 = 9_007_199_254_740_992; // 2^53

pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) if n.abs() < SAFE_ABS => s.serialize_i64(n),
        _ => s.serialize_str(&v.to_string()),
    }
}

pub mod bigint_json {
    use super::*;
    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(v, s)
    }
}

pub mod bigint_vec_json {
    use super::*;
    pub fn serialize<S: Serializer>(
        v: &Vec<BigInt>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for item in v {
            seq.serialize_element(&JsonInt(item.clone()))?;
        }
        seq.end()
    }
}

pub mod bigint_opt_json {
    use super::*;
    pub fn serialize<S: Serializer>(
        v: &Option<BigInt>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => serialize_bigint(x, s),
            None => s.serialize_none(),
        }
    }
}

/// A `BigInt` with the number-or-string JSON convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(&self.0, s)
    }
}

/// Echo of the analyzed instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceEcho {
    pub label: Option<String>,
    pub field: String,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(with = "bigint_opt_json")]
    pub extdeg: Option<BigInt>,
}

/// The structured analysis report. Field names are stable; exact values
/// follow the number-or-string convention above.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub instance: InstanceEcho,
    pub dim: usize,
    /// Depth of the associated graded ring G.
    pub depth: usize,
    #[serde(with = "bigint_json")]
    pub e: BigInt,
    #[serde(with = "bigint_opt_json")]
    pub hdeg: Option<BigInt>,
    #[serde(with = "bigint_opt_json")]
    pub deviation: Option<BigInt>,
    #[serde(rename = "lengthL", with = "bigint_json")]
    pub length_l: BigInt,
    pub reg: i64,
    pub greg: Option<i64>,
    /// Graded Betti numbers of G as (i, j, b) triples.
    pub betti: Vec<(usize, i64, u64)>,
    /// ell(A/m^(n+1)) for n = 0..=n0.
    #[serde(with = "bigint_vec_json")]
    pub hs: Vec<BigInt>,
    /// e_0..e_d with the alternating-sign convention.
    #[serde(with = "bigint_vec_json")]
    pub e_coeffs: Vec<BigInt>,
    pub verdicts: Vec<BoundVerdict>,
    pub skipped: Vec<SkippedCheck>,
}

impl AnalysisReport {
    pub fn any_verdict_failed(&self) -> bool {
        self.verdicts.iter().any(|v| !v.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
