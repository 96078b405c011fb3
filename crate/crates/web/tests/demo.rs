use koptlab_web::{chordal_saturate, favaron, tuza_join};

#[test]
fn favaron_on_c5() {
    let v = favaron("Dhc", 2).unwrap();
    assert_eq!(v["phi"], 5);
    assert_eq!(v["dominating"], true);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 5);
    assert!(v["cross"]["edges"].is_array());
}

#[test]
fn tuza_join_on_p4() {
    let v = tuza_join("Ch", 2).unwrap();
    let r = &v["report"];
    assert_eq!(r["nu"], r["alpha_k_prime"]);
    assert_eq!(r["tau"], r["tau_formula"]);
    assert_eq!(v["graph"]["n"], 6);
    assert_eq!(v["packing"]["triangles"].as_array().unwrap().len(), r["nu"].as_u64().unwrap() as usize);
}

#[test]
fn chordal_saturate_is_deterministic() {
    let a = chordal_saturate(10, 7, 2).unwrap();
    assert_eq!(a, chordal_saturate(10, 7, 2).unwrap());
    let d: Vec<u64> = a["d"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let n = a["graph"]["n"].as_u64().unwrap();
    for v in (0..n).filter(|v| !d.contains(v)) {
        let deg = a["subgraph"]["edges"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e[0].as_u64() == Some(v) || e[1].as_u64() == Some(v))
            .count();
        assert_eq!(deg, 2);
    }
}

#[test]
fn bad_input_is_an_error() {
    assert!(favaron("not graph6", 1).is_err());
    assert!(favaron("Dhc", 0).is_err());
    assert!(tuza_join("Bw", 1).unwrap_err().contains("triangle"));
    assert!(chordal_saturate(0, 1, 1).is_err());
    assert!(chordal_saturate(40, 1, 1).is_err());
}
