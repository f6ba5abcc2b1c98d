//! JSON forms of posets, functions, cocycles, basis tables and reports.
//! Ring elements are written as strings (matrices as arrays of strings).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automorph::AutDecomposition;
use crate::cocycle::{Cocycle, Decomposition, Law, Mode};
use crate::derivation::DerivSpaceReport;
use crate::error::{Error, Result};
use crate::incalg::{IncFunction, StructuralMatrix};
use crate::poset::{build_preorder, FundamentalCycle, Preorder};
use crate::reduced::{CoefTable, Compatibility, Reduction};
use crate::ring::{Ring, RingElem, RingSpec};
use crate::table::{BasisElem, BasisTable};

pub type DynFunction = IncFunction<RingElem>;
pub type DynTable = BasisTable<RingElem>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub relations: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub from: usize,
    pub to: usize,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub ring: String,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub edges: Vec<EntryJson>,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub basis: String,
    pub image: FunctionJson,
}

pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_ring(s: &str) -> Result<RingSpec> {
    s.parse()
}

pub fn poset_from_json(p: &PosetJson) -> Result<Preorder> {
    build_preorder(p.n, &p.relations).map_err(|e| match e {
        Error::IndexOutOfRange { .. } => Error::Parse(e.to_string()),
        other => other,
    })
}

/// Closed relation without the diagonal.
pub fn poset_to_json(p: &Preorder) -> PosetJson {
    PosetJson {
        n: p.len(),
        relations: p.pairs().into_iter().filter(|(x, y)| x != y).collect(),
    }
}

/// Parses a function; `ring` overrides nothing but must agree when given.
pub fn function_from_json(
    p: &Arc<Preorder>,
    f: &FunctionJson,
    ring: Option<&RingSpec>,
) -> Result<DynFunction> {
    let spec = parse_ring(&f.ring)?;
    if let Some(r) = ring {
        if *r != spec {
            return Err(Error::RingSpec(format!(
                "function is over {spec}, expected {r}"
            )));
        }
    }
    let mut out = IncFunction::zero(p, &spec);
    for e in &f.entries {
        let v = RingElem::from_json(&spec, &e.value)?;
        out.set(e.from, e.to, v).map_err(|err| match err {
            Error::IndexOutOfRange { .. } | Error::OutsideRelation(..) => {
                Error::Parse(format!("entry ({}, {}): {err}", e.from, e.to))
            }
            other => other,
        })?;
    }
    Ok(out)
}

pub fn function_to_json(f: &DynFunction) -> FunctionJson {
    FunctionJson {
        ring: f.ring().to_string(),
        entries: f
            .entries()
            .map(|(&(from, to), v)| EntryJson {
                from,
                to,
                value: v.to_json(),
            })
            .collect(),
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "full" => Ok(Mode::Full),
        "tree" => Ok(Mode::TreeOnly),
        other => Err(Error::Parse(format!(
            "mode {other:?}, expected full or tree"
        ))),
    }
}

/// Edge values of a cocycle file over `spec`.
pub fn cocycle_assignment(
    c: &CocycleJson,
    spec: &RingSpec,
) -> Result<BTreeMap<(usize, usize), RingElem>> {
    let mut out = BTreeMap::new();
    for e in &c.edges {
        let v = RingElem::from_json(spec, &e.value)?;
        if out.insert((e.from, e.to), v).is_some() {
            return Err(Error::Parse(format!(
                "edge ({}, {}) given twice",
                e.from, e.to
            )));
        }
    }
    Ok(out)
}

pub fn cocycle_to_json<L: Law<RingElem>>(c: &Cocycle<RingElem, L>) -> CocycleJson {
    CocycleJson {
        edges: c
            .assignment()
            .into_iter()
            .map(|((from, to), v)| EntryJson {
                from,
                to,
                value: v.to_json(),
            })
            .collect(),
        mode: "full".into(),
        ring: Some(c.ring().to_string()),
    }
}

pub fn table_from_json(
    source: &Arc<Preorder>,
    target: &Arc<Preorder>,
    entries: &[TableEntryJson],
) -> Result<DynTable> {
    let first = entries
        .first()
        .ok_or_else(|| Error::Parse("empty table".into()))?;
    let spec = parse_ring(&first.image.ring)?;
    let images = entries
        .iter()
        .map(|e| {
            let b: BasisElem = e.basis.parse()?;
            Ok((b, function_from_json(target, &e.image, Some(&spec))?))
        })
        .collect::<Result<Vec<_>>>()?;
    BasisTable::new(source, target, &spec, images)
}

pub fn table_to_json(t: &DynTable) -> Vec<TableEntryJson> {
    t.entries()
        .map(|(b, img)| TableEntryJson {
            basis: b.to_string(),
            image: function_to_json(img),
        })
        .collect()
}

fn values_json<R: Ring>(v: &[R]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn insert_cycle<R: Ring>(v: &mut Value, cycle: &Option<(FundamentalCycle, R)>) {
    let (walk, chord, weight) = match cycle {
        None => (Value::Null, Value::Null, Value::Null),
        Some((c, w)) => (json!(c.walk), json!(c.chord), json!(w.to_string())),
    };
    v["failing_cycle"] = walk;
    v["failing_chord"] = chord;
    v["cycle_weight"] = weight;
}

pub fn cocycle_decomposition_json<L: Law<RingElem>>(d: &Decomposition<RingElem, L>) -> Value {
    let mut v = json!({
        "vertex": d.vertex.iter().map(RingElem::to_json).collect::<Vec<_>>(),
        "residue": cocycle_to_json(&d.residue),
        "is_inner": d.is_inner,
    });
    insert_cycle(&mut v, &d.failing_cycle);
    v
}

pub fn aut_decomposition_json(d: &AutDecomposition<RingElem>) -> Value {
    let mut v = json!({
        "tau": d.tau,
        "inner_unit": function_to_json(&d.inner_unit),
        "cocycle": cocycle_to_json(&d.cocycle),
        "vertex_units": d.vertex_units.iter().map(RingElem::to_json).collect::<Vec<_>>(),
        "residue": cocycle_to_json(&d.residue),
        "is_inner": d.is_inner,
    });
    insert_cycle(&mut v, &d.failing_cycle);
    v
}

pub fn deriv_space_json<F: Ring>(r: &DerivSpaceReport<F>) -> Value {
    json!({
        "m": r.m,
        "lambda": r.lambda,
        "rank": r.rank,
        "dim_psi": r.dim_psi,
        "dim_psi0": r.dim_psi0,
        "dim_out": r.dim_out,
        "all_inner": r.all_inner,
        "kernel_basis": r.kernel_basis.iter().map(|v| values_json(v)).collect::<Vec<_>>(),
    })
}

pub fn structural_json(s: &StructuralMatrix<RingElem>) -> Value {
    json!({
        "matrix": s.matrix.iter()
            .map(|row| row.iter().map(RingElem::to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "pattern": s.pattern.iter()
            .map(|row| row.iter().map(|&b| u8::from(b)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "perm": s.perm,
        "blocks": s.blocks,
    })
}

pub fn types_json(red: &Reduction) -> Value {
    Value::Array(
        red.types()
            .iter()
            .map(|t| {
                json!({
                    "id": t.id,
                    "class": t.class,
                    "representative": [t.representative.0, t.representative.1],
                    "members": t.members.len(),
                })
            })
            .collect(),
    )
}

pub fn compatibility_json(c: &Compatibility) -> Value {
    json!({
        "compatible": c.compatible,
        "witness": c.witness.map(|(a, b)| [[a.0, a.1], [b.0, b.1]]),
    })
}

/// Sparse triples `[t, r, s, count]`.
pub fn coefficients_json(t: &CoefTable) -> Value {
    Value::Array(
        t.entries
            .iter()
            .map(|(&(t, r, s), &c)| json!([t, r, s, c]))
            .collect(),
    )
}

/// A partition file: a list of classes, each a list of `[x, y]` intervals.
pub fn partition_from_json(text: &str) -> Result<Vec<Vec<(usize, usize)>>> {
    from_str(text)
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": e.code(), "detail": e.to_string()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::named;

    #[test]
    fn poset_round_trip() {
        let p = named::diamond();
        let j = poset_to_json(&p);
        assert_eq!(j.relations, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"n":4,"relations":[[0,1],[0,2],[0,3],[1,3],[2,3]]}"#
        );
        let back = poset_from_json(&from_str(&text).unwrap()).unwrap();
        assert_eq!(back, p);
        let bad: PosetJson = from_str(r#"{"n":2,"relations":[[0,5]]}"#).unwrap();
        assert!(poset_from_json(&bad).unwrap_err().is_malformed_input());
    }

    #[test]
    fn function_round_trip() {
        let p = Arc::new(named::chain(3));
        let text = r#"{"ring":"Q","entries":[{"from":0,"to":2,"value":"-3/6"},{"from":1,"to":1,"value":2}]}"#;
        let f = function_from_json(&p, &from_str(text).unwrap(), None).unwrap();
        let out = serde_json::to_string(&function_to_json(&f)).unwrap();
        assert_eq!(
            out,
            r#"{"ring":"Q","entries":[{"from":0,"to":2,"value":"-1/2"},{"from":1,"to":1,"value":"2"}]}"#
        );
        let again =
            function_from_json(&p, &from_str(&out).unwrap(), Some(&RingSpec::Rationals)).unwrap();
        assert_eq!(again, f);
        let outside = r#"{"ring":"Q","entries":[{"from":2,"to":0,"value":"1"}]}"#;
        assert!(function_from_json(&p, &from_str(outside).unwrap(), None)
            .unwrap_err()
            .is_malformed_input());
        let other = "Zmod:5".parse::<RingSpec>().unwrap();
        assert!(function_from_json(&p, &from_str(text).unwrap(), Some(&other)).is_err());
    }

    #[test]
    fn matrix_values_and_tables() {
        let p = Arc::new(named::chain(2));
        let text = r#"{"ring":"Mat:2:Zmod:4","entries":[{"from":0,"to":1,"value":[["1","2"],["0","3"]]}]}"#;
        let f = function_from_json(&p, &from_str(text).unwrap(), None).unwrap();
        let j = function_to_json(&f);
        assert_eq!(function_from_json(&p, &j, None).unwrap(), f);

        let id = BasisTable::<RingElem>::identity(&p, &RingSpec::Rationals).unwrap();
        let j = table_to_json(&id);
        assert_eq!(j[0].basis, "e_0");
        assert_eq!(table_from_json(&p, &p, &j).unwrap(), id);
    }

    #[test]
    fn modes_and_errors() {
        assert_eq!(parse_mode("tree").unwrap(), Mode::TreeOnly);
        assert!(parse_mode("partial").is_err());
        let e = error_json(&Error::NotInvertible { class: 1 });
        assert_eq!(e["error"], "NotInvertible");
    }
}
