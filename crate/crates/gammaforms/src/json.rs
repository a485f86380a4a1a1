//! JSON schema for machine-readable output. Integers are written as JSON
//! numbers of any size.

use std::fmt;
use std::str::FromStr;

use gammaforms_core::{Form, GroupElement};
use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// An integer of any size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map(Int).map_err(|_| de::Error::custom(format!("{n} is not an integer")))
    }
}

impl From<&BigInt> for Int {
    fn from(n: &BigInt) -> Self {
        Int(n.clone())
    }
}

impl From<i64> for Int {
    fn from(n: i64) -> Self {
        Int(BigInt::from(n))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl From<&Form> for FormJson {
    fn from(q: &Form) -> Self {
        FormJson { a: (&q.a).into(), b: (&q.b).into(), c: (&q.c).into() }
    }
}

impl From<&FormJson> for Form {
    fn from(q: &FormJson) -> Self {
        Form { a: q.a.0.clone(), b: q.b.0.clone(), c: q.c.0.clone() }
    }
}

/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson(pub [[Int; 2]; 2]);

impl From<&GroupElement> for MatrixJson {
    fn from(g: &GroupElement) -> Self {
        MatrixJson([[(&g.a).into(), (&g.b).into()], [(&g.c).into(), (&g.d).into()]])
    }
}

/// A form with its CM point `(−b + √D)/2a` as the triple `[−b, D, 2a]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedEntry {
    pub form: FormJson,
    pub cm_point: [Int; 3],
    /// SL₂-reduced form of the same proper class.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sl2_class: Option<FormJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormList {
    pub disc: Int,
    pub level: u64,
    pub forms: Vec<ReducedEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub input: FormJson,
    pub level: u64,
    pub reduced: FormJson,
    /// `γ ∈ Γ₀(N)` with `input·γ = reduced`.
    pub transform: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub form1: FormJson,
    pub form2: FormJson,
    pub level: u64,
    pub equivalent: bool,
    /// `γ ∈ Γ₀(N)` with `form1·γ = form2`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub transform: Option<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupJson {
    pub disc: Int,
    pub level: u64,
    pub order: usize,
    pub invariant_factors: Vec<u64>,
    /// Element 0 is the identity.
    pub elements: Vec<FormJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub pairs: usize,
    pub mismatches: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoJson {
    pub disc: Int,
    pub level: u64,
    pub scaled_disc: Int,
    pub isomorphic: bool,
    pub invariant_factors: Vec<u64>,
    pub scaled_invariant_factors: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusEntry {
    pub coset: Vec<Int>,
    pub forms: Vec<FormJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusJson {
    pub disc: Int,
    pub level: u64,
    pub modulus: Int,
    pub ker_chi: Vec<Int>,
    pub h: Vec<Int>,
    /// Genus 0 is the principal genus.
    pub genera: Vec<GenusEntry>,
}

/// Outcome of `classify`. A prime in some genus carries `coset`, `witness`,
/// `x`, `y`; a prime with `(D/p) ≠ 1` carries `kronecker`; a prime dividing
/// `N` carries `outside_genera` and possibly a witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coset: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kronecker: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outside_genera: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub x: Int,
    pub y: Int,
    pub proper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentJson {
    pub form: FormJson,
    pub value: Int,
    pub level: u64,
    pub representations: Vec<RepresentationJson>,
}

/// Exact rationals are written as strings `"n/d"` (or `"n"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub k: i64,
    pub center: String,
    pub radius: String,
    pub from_re: String,
    pub to_re: String,
    /// `−k⁻¹`: `γ_k` maps that arc onto this one.
    pub paired_with: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundomainJson {
    pub p: i64,
    pub lines: Vec<String>,
    pub arcs: Vec<ArcJson>,
    pub e2: Vec<i64>,
    pub e3: Vec<i64>,
}
