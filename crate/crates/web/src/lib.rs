//! Browser bindings: chain contraction, the singular fibre table, and orbit
//! tables of the standard groups. Every call returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use conicq::group::{default_field, standard_group, GroupKind};
use conicq::hj::{contract_chain, FibreChain};
use conicq::quotient::{table1_bound, TableCounts};

pub fn contract_json(chain: &str) -> Result<String, String> {
    let ch: FibreChain = chain.parse().map_err(|e| format!("{e}"))?;
    let c = contract_chain(&ch).map_err(|e| format!("{e}"))?;
    Ok(json!({ "chain": ch.to_string(), "fate": c.fate, "trace": c.trace }).to_string())
}

pub fn table1_json(kind: &str, a: u32, b: u32, c: u32, d: u32) -> Result<String, String> {
    let kind = GroupKind::parse(kind).map_err(|e| format!("{e}"))?;
    let t = TableCounts { a, b, c, d };
    let (n, m) = table1_bound(kind, t).map_err(|e| format!("{e}"))?;
    Ok(json!({ "group": kind.to_string(), "n": n, "m": m }).to_string())
}

pub fn orbits_json(kind: &str) -> Result<String, String> {
    let kind = GroupKind::parse(kind).map_err(|e| format!("{e}"))?;
    let g = standard_group(kind, &default_field(kind)).map_err(|e| format!("{e}"))?;
    let lengths = g.special_orbit_table().map_err(|e| format!("{e}"))?;
    Ok(json!({ "group": kind.to_string(), "order": g.order(), "lengths": lengths }).to_string())
}

#[wasm_bindgen]
pub fn contract(chain: &str) -> Result<String, JsValue> {
    contract_json(chain).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn table1(kind: &str, a: u32, b: u32, c: u32, d: u32) -> Result<String, JsValue> {
    table1_json(kind, a, b, c, d).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn orbits(kind: &str) -> Result<String, JsValue> {
    orbits_json(kind).map_err(|e| JsValue::from_str(&e))
}
