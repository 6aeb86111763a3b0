//! JSON document shapes and conversions to and from the core types.

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use wkring_core::{Exp, LaurentPoly, RootSubset};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: Vec<i64>,
    /// Decimal string, so coefficients never truncate.
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        Poly {
            terms: p
                .terms()
                .map(|(e, c)| Term { exp: e.iter().map(|&x| i64::from(x)).collect(), coef: c.to_string() })
                .collect(),
        }
    }

    /// Reads a polynomial with `blocks` copies of a rank-`rank` lattice.
    pub fn to_poly(&self, rank: usize, blocks: usize) -> Result<LaurentPoly, CliError> {
        let width = rank * blocks;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exp.len() != width {
                return Err(CliError::Format(format!(
                    "exponent {:?} has length {}, expected {width}",
                    t.exp,
                    t.exp.len()
                )));
            }
            let e: Exp = t
                .exp
                .iter()
                .map(|&x| i32::try_from(x).map_err(|_| CliError::Format(format!("exponent {x} out of range"))))
                .collect::<Result<_, _>>()?;
            let c: BigInt = t.coef.trim().parse().map_err(|_| CliError::Format(format!("bad coefficient `{}`", t.coef)))?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(rank, blocks, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

/// A subset of simple roots as its sorted one-based index list.
pub fn subset_json(i: RootSubset) -> Vec<usize> {
    i.one_based()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub alpha: Vec<i64>,
    pub omega: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<RootEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylEntry {
    pub w: String,
    pub length: usize,
    pub descents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub order: usize,
    pub elements: Vec<WeylEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSet {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSetsDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub csets: Vec<CSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub v: String,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergEntry {
    pub v: String,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub f: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub basis: Vec<SteinbergEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CTerm {
    pub w: String,
    pub coef: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CTableDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub basis: Vec<BasisEntry>,
    /// Keyed `"v|v'"` in basis order.
    pub products: IndexMap<String, Vec<CTerm>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTerm {
    pub w: String,
    /// Coordinates over `{f̄_v}`, keyed by `v` in basis order.
    pub coef: IndexMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTableDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub kgb_rank: usize,
    pub products: IndexMap<String, Vec<KTerm>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coord {
    pub v: String,
    pub coef: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub coords: Vec<Coord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjacent {
    pub cones: [usize; 2],
    pub chi: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub fan: FanDoc,
    /// Positions in `fan.cones`.
    pub maximal_cones: Vec<usize>,
    pub adjacencies: Vec<Adjacent>,
    pub full_maximal_cones: usize,
    pub fixed_points: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub localization: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let p = &LaurentPoly::exp(2, 2, &[1, -1, 0, 2]) - &LaurentPoly::constant(2, 2, BigInt::from(10).pow(30));
        let doc = Poly::from_poly(&p);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"coef\":\"-1000000000000000000000000000000\""));
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_poly(2, 2).unwrap(), p);
        assert!(back.to_poly(2, 1).is_err());
    }

    #[test]
    fn bad_coefficient_is_rejected() {
        let doc = Poly { terms: vec![Term { exp: vec![1], coef: "x".into() }] };
        assert!(matches!(doc.to_poly(1, 1), Err(CliError::Format(_))));
    }
}
