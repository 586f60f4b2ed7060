//! JSON encodings of ring elements, matrices, decompositions and cell diagrams.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pdg_core::arith::{to_root, CycInt, CycMatrix};
use pdg_core::pcomplex::Decomposition;
use pdg_core::pdgmod::{CellDiagram, Side};
use pdg_core::zigzag::ZigzagAlgebra;
use serde_json::{json, Map, Value};

fn int(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn coeff_map<'a>(cs: impl Iterator<Item = (usize, &'a BigInt)>) -> Value {
    let mut m = Map::new();
    for (e, c) in cs {
        if *c != BigInt::from(0) {
            m.insert(e.to_string(), int(c));
        }
    }
    json!({ "coeffs": m })
}

pub fn cyc(c: &CycInt) -> Value {
    coeff_map(c.coeffs().iter().enumerate())
}

pub fn cyc_at_root(c: &CycInt) -> Value {
    let r = to_root(c);
    coeff_map(r.coeffs().iter().enumerate())
}

pub fn matrix(m: &CycMatrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(cyc).collect())).collect())
}

pub fn matrix_at_root(m: &CycMatrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(cyc_at_root).collect())).collect())
}

/// Summands as [j, bottom, multiplicity], omitting contractible ones.
pub fn summands(dec: &Decomposition, p: u32) -> Value {
    let rows: Vec<Value> = dec.non_contractible(p).into_iter().map(|((j, b), m)| json!([j, b, m])).collect();
    Value::Array(rows)
}

pub fn table(t: &BTreeMap<(u32, i64), usize>) -> Value {
    Value::Array(t.iter().map(|(&(j, b), &m)| json!([j, b, m])).collect())
}

pub fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

pub fn diagram(d: &CellDiagram, alg: &ZigzagAlgebra) -> Value {
    let nodes: Vec<Value> = d
        .cells
        .iter()
        .enumerate()
        .map(|(t, c)| json!({ "P": c.vertex, "shift": c.shift, "pos": t }))
        .collect();
    let edges: Vec<Value> = d
        .edges
        .iter()
        .map(|e| json!({ "from": e.from, "to": e.to, "label": alg.render(&e.label) }))
        .collect();
    json!({ "side": side_name(d.side), "nodes": nodes, "edges": edges })
}

/// Inverse of [`diagram`]; `None` on any malformed field.
pub fn parse_diagram(v: &Value, alg: &ZigzagAlgebra) -> Option<CellDiagram> {
    let side = match v.get("side")?.as_str()? {
        "left" => Side::Left,
        "right" => Side::Right,
        _ => return None,
    };
    let mut d = CellDiagram::new(side);
    for (t, node) in v.get("nodes")?.as_array()?.iter().enumerate() {
        if node.get("pos")?.as_u64()? != t as u64 {
            return None;
        }
        let vertex = u32::try_from(node.get("P")?.as_u64()?).ok()?;
        if vertex == 0 || vertex > alg.n {
            return None;
        }
        d.add_cell(vertex, node.get("shift")?.as_i64()?);
    }
    for e in v.get("edges")?.as_array()? {
        let from = e.get("from")?.as_u64()? as usize;
        let to = e.get("to")?.as_u64()? as usize;
        if from >= to || to >= d.len() {
            return None;
        }
        let label = alg.parse(e.get("label")?.as_str()?).ok()?;
        d.add_edge(from, to, label, alg.field());
    }
    Some(d)
}
