use conicq_web::{contract_json, orbits_json, table1_json};

#[test]
fn bindings_return_json() {
    let c: serde_json::Value = serde_json::from_str(&contract_json("-3,-1,-3,-1,-3;swap").unwrap()).unwrap();
    assert_eq!(c["fate"], "singular");
    let t: serde_json::Value = serde_json::from_str(&table1_json("D6", 1, 0, 1, 0).unwrap()).unwrap();
    assert_eq!((t["n"].as_u64(), t["m"].as_u64()), (Some(8), Some(2)));
    let o: serde_json::Value = serde_json::from_str(&orbits_json("S4").unwrap()).unwrap();
    assert_eq!(o["lengths"], serde_json::json!([6, 8, 12]));
    assert!(contract_json("-1,-2;swap").is_err());
    assert!(table1_json("A5", 2, 0, 0, 0).is_err());
}
