use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{BracketResult, ChainDiagram, TodaError};
use crate::algtop::{ChainComplex, Matrix};
use crate::scalar::{Gf2, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Integer,
    Mod2,
}

/// Rows of a matrix; a matrix with no rows is `[]`.
type Rows = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub ranks: Vec<usize>,
    /// `differentials[k]` is the differential out of degree `k + 1`.
    #[serde(default)]
    pub differentials: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexesJson {
    pub c3: ComplexJson,
    pub c2: ComplexJson,
    pub c1: ComplexJson,
    pub c0: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsJson {
    pub h: Vec<Rows>,
    pub g: Vec<Rows>,
    pub f: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopiesJson {
    #[serde(rename = "H")]
    pub null_gh: Vec<Rows>,
    #[serde(rename = "G")]
    pub null_fg: Vec<Rows>,
}

/// On-disk form of a [`ChainDiagram`]. Maps and homotopies list one block
/// per source degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    #[serde(default)]
    pub coefficients: Coefficients,
    pub complexes: ComplexesJson,
    pub maps: MapsJson,
    pub homotopies: HomotopiesJson,
}

pub enum AnyDiagram {
    Integer(ChainDiagram<BigInt>),
    Mod2(ChainDiagram<Gf2>),
}

fn matrix<R: Scalar>(rows: &Rows, expected: (usize, usize), what: &str, degree: usize) -> Result<Matrix<R>, TodaError> {
    let bad = rows.len() != expected.0 || rows.iter().any(|r| r.len() != expected.1);
    if bad {
        let got = (rows.len(), rows.iter().map(Vec::len).find(|&l| l != expected.1).unwrap_or(expected.1));
        return Err(TodaError::Shape { map: what.to_string(), degree, expected, got });
    }
    let reduced: Vec<Vec<R>> = rows.iter().map(|r| r.iter().map(|&v| R::from_i64(v)).collect()).collect();
    Ok(Matrix::from_rows(reduced, expected.1))
}

fn complex<R: Scalar>(c: &ComplexJson, name: &str) -> Result<ChainComplex<R>, TodaError> {
    let mut ds = Vec::new();
    for (k, rows) in c.differentials.iter().enumerate() {
        let expected = (c.ranks.get(k).copied().unwrap_or(0), c.ranks.get(k + 1).copied().unwrap_or(0));
        ds.push(matrix(rows, expected, &format!("{name}.d{}", k + 1), k + 1)?);
    }
    Ok(ChainComplex::new(c.ranks.clone(), ds)?)
}

fn blocks<R: Scalar>(
    src: &ChainComplex<R>,
    dst: &ChainComplex<R>,
    degree: usize,
    rows: &[Rows],
    name: &str,
) -> Result<Vec<Matrix<R>>, TodaError> {
    if rows.len() != src.ranks().len() {
        return Err(TodaError::Blocks { map: name.to_string(), blocks: rows.len(), degrees: src.ranks().len() });
    }
    rows.iter().enumerate().map(|(k, r)| matrix(r, (dst.rank(k + degree), src.rank(k)), name, k)).collect()
}

fn build<R: Scalar>(j: &DiagramJson) -> Result<ChainDiagram<R>, TodaError> {
    let c = &j.complexes;
    let (c3, c2, c1, c0) = (complex(&c.c3, "c3")?, complex(&c.c2, "c2")?, complex(&c.c1, "c1")?, complex(&c.c0, "c0")?);
    let h = blocks(&c3, &c2, 0, &j.maps.h, "h")?;
    let g = blocks(&c2, &c1, 0, &j.maps.g, "g")?;
    let f = blocks(&c1, &c0, 0, &j.maps.f, "f")?;
    let nh = blocks(&c3, &c1, 1, &j.homotopies.null_gh, "H")?;
    let ng = blocks(&c2, &c0, 1, &j.homotopies.null_fg, "G")?;
    ChainDiagram::new([c3, c2, c1, c0], h, g, f, nh, ng)
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<AnyDiagram, TodaError> {
    Ok(match j.coefficients {
        Coefficients::Integer => AnyDiagram::Integer(build(j)?),
        Coefficients::Mod2 => AnyDiagram::Mod2(build(j)?),
    })
}

fn scalar_json<R: Scalar>(v: &R) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn rows_json<R: Scalar>(m: &Matrix<R>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(scalar_json).collect())).collect())
}

pub fn result_json<R: Scalar>(r: &BracketResult<R>) -> Value {
    let rep: BTreeMap<String, Value> = r.representative.blocks().iter().enumerate().map(|(k, b)| (k.to_string(), rows_json(b))).collect();
    json!({
        "representative": rep,
        "summand_orders": r.summand_orders.iter().map(scalar_json).collect::<Vec<_>>(),
        "class": r.class.iter().map(scalar_json).collect::<Vec<_>>(),
        "indeterminacy": r.indeterminacy.iter().map(|g| g.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "vanishes": r.vanishes,
    })
}
