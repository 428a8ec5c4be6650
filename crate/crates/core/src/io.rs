//! JSON forms of systems and certificates.
//!
//! A polynomial is a term list `[{"coeff": "p/q", "mono": {"x1": 2}}]` with
//! variables referenced by name, so certificates are only meaningful next to
//! the system whose variable table they use.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::encoders::{PolySystem, Problem};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::nulla::{Certificate, SolveReport};
use crate::poly::{
    format_rational, parse_rational, Monomial, Polynomial, VarRole, Variable, VariableTable,
};

fn bad(message: impl Into<String>) -> Error {
    Error::Structural(message.into())
}

pub fn poly_to_json(p: &Polynomial, table: &VariableTable) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mono: Map<String, Value> = m
                    .iter()
                    .map(|(v, e)| (table.name(v).to_string(), json!(e)))
                    .collect();
                json!({"coeff": format_rational(c), "mono": mono})
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value, table: &VariableTable) -> Result<Polynomial> {
    let terms = v
        .as_array()
        .ok_or_else(|| bad("polynomial must be a term list"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let coeff = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term without a string coeff"))?;
        let mono = t
            .get("mono")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("term without a mono object"))?;
        let mut exps = Vec::with_capacity(mono.len());
        for (name, e) in mono {
            let id = table
                .lookup(name)
                .ok_or_else(|| bad(format!("unknown variable {name:?}")))?;
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| bad(format!("bad exponent for {name}")))?;
            exps.push((id, e));
        }
        out.push((Monomial::from_exponents(exps), parse_rational(coeff)?));
    }
    Ok(Polynomial::from_terms(out))
}

pub fn system_to_json(s: &PolySystem) -> Value {
    json!({
        "kind": s.problem.name(),
        "params": s.problem,
        "graph": s.graph,
        "m": s.m,
        "cardinality_index": s.cardinality_index,
        "variables": s.table.variables(),
        "polys": s.polys.iter().map(|p| poly_to_json(p, &s.table)).collect::<Vec<_>>(),
    })
}

pub fn system_from_json(v: &Value) -> Result<PolySystem> {
    let field = |k: &str| v.get(k).ok_or_else(|| bad(format!("missing field {k:?}")));
    let variables: Vec<Variable> = serde_json::from_value(field("variables")?.clone())?;
    let table = VariableTable::from_variables(variables)?;
    let problem: Problem = serde_json::from_value(field("params")?.clone())?;
    let graph: Graph = serde_json::from_value(field("graph")?.clone())?;
    let m: Option<usize> = serde_json::from_value(field("m")?.clone())?;
    let cardinality_index: Option<usize> =
        serde_json::from_value(field("cardinality_index")?.clone())?;
    let polys = field("polys")?
        .as_array()
        .ok_or_else(|| bad("polys must be a list"))?
        .iter()
        .map(|p| poly_from_json(p, &table))
        .collect::<Result<Vec<_>>>()?;
    let indicator_ids = table
        .ids()
        .filter(|&id| table.role(id) == VarRole::Indicator)
        .collect();
    let s = PolySystem {
        table,
        polys,
        cardinality_index,
        m,
        problem,
        graph,
        indicator_ids,
    };
    s.check()?;
    Ok(s)
}

pub fn write_system(s: &PolySystem) -> String {
    let mut text = serde_json::to_string_pretty(&system_to_json(s)).expect("json values serialize");
    text.push('\n');
    text
}

pub fn read_system(text: &str) -> Result<PolySystem> {
    system_from_json(&serde_json::from_str(text)?)
}

/// SHA-256 of the compact system JSON, hex encoded.
pub fn system_hash(s: &PolySystem) -> String {
    let compact = serde_json::to_string(&system_to_json(s)).expect("json values serialize");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

pub fn report_to_json(r: &SolveReport) -> Value {
    Value::Array(
        r.records
            .iter()
            .map(|rec| {
                json!({
                    "degree": rec.degree,
                    "rows": rec.rows,
                    "cols": rec.cols,
                    "nonzeros": rec.nonzeros,
                    "status": rec.status,
                    "micros": rec.elapsed.as_micros() as u64,
                })
            })
            .collect(),
    )
}

pub fn certificate_to_json(c: &Certificate, s: &PolySystem, report: Option<&SolveReport>) -> Value {
    json!({
        "degree": c.degree,
        "betas": c.betas.iter().map(|b| poly_to_json(b, &s.table)).collect::<Vec<_>>(),
        "system_hash": system_hash(s),
        "report": report.map_or(Value::Array(vec![]), report_to_json),
    })
}

pub fn write_certificate(c: &Certificate, s: &PolySystem, report: Option<&SolveReport>) -> String {
    let mut text = serde_json::to_string_pretty(&certificate_to_json(c, s, report))
        .expect("json values serialize");
    text.push('\n');
    text
}

/// A certificate read back from disk.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateFile {
    pub certificate: Certificate,
    pub system_hash: Option<String>,
    /// The degree the file claims; the certificate's own degree is
    /// recomputed from the betas.
    pub stated_degree: Option<u32>,
}

/// Parses a certificate against the variable table of `s`.
pub fn read_certificate(text: &str, s: &PolySystem) -> Result<CertificateFile> {
    let v: Value = serde_json::from_str(text)?;
    let betas = v
        .get("betas")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing betas list"))?
        .iter()
        .map(|b| poly_from_json(b, &s.table))
        .collect::<Result<Vec<_>>>()?;
    Ok(CertificateFile {
        certificate: Certificate::new(betas),
        system_hash: v
            .get("system_hash")
            .and_then(Value::as_str)
            .map(str::to_string),
        stated_degree: v
            .get("degree")
            .and_then(Value::as_u64)
            .and_then(|d| u32::try_from(d).ok()),
    })
}
