use concordance_wasm::{cable_obstruction_json, catalog_json, front_invariants_json, signature_function_json};
use serde_json::Value;

#[test]
fn catalog_lists_knots_and_fronts() {
    let v: Value = serde_json::from_str(&catalog_json()).unwrap();
    let knots = v["knots"].as_array().unwrap();
    let trefoil = knots.iter().find(|k| k["name"] == "RH-trefoil").unwrap();
    assert_eq!(trefoil["seifert_matrix"], serde_json::json!([[-1, 1], [0, -1]]));
    assert!(v["fronts"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["name"] == "paper-pattern-P"));
}

#[test]
fn signature_step_function() {
    let v: Value = serde_json::from_str(&signature_function_json("[[-1,1],[0,-1]]", 1).unwrap()).unwrap();
    let arcs = v["table"]["arcs"].as_array().unwrap();
    let values: Vec<i64> = arcs.iter().map(|a| a["value"].as_i64().unwrap()).collect();
    assert_eq!(values, vec![0, -2]);
    assert!(signature_function_json("[[1,0],[0,1]]", 1).is_err());
    assert!(signature_function_json("[[1,0]", 1).is_err());
}

#[test]
fn front_and_cable_operations() {
    let v: Value =
        serde_json::from_str(&front_invariants_json("orient -\nboundary 3\nL 0\nR 2\nX 1\nX 1\nX 1\n").unwrap())
            .unwrap();
    assert_eq!(
        (v["invariants"]["tb"].as_i64(), v["invariants"]["winding"].as_i64()),
        (Some(2), Some(1))
    );
    assert!(front_invariants_json("orient +\nL 0\n").is_err());
    let v: Value = serde_json::from_str(&cable_obstruction_json("[[-1,1],[0,-1]]", 2).unwrap()).unwrap();
    assert_eq!(v["verdict"], "obstructed");
    assert_eq!(v["witnesses"][0]["omega"], "1/7");
}
