use std::process::Command;

fn lmrttg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lmrttg"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn construct_dot_s2() {
    let (code, out, _) = lmrttg(&["construct", "--n", "6", "--m", "7", "--family", "s2", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph G {"));
    assert_eq!(out.matches(" -- ").count(), 7);
}

#[test]
fn construct_g_json_round_trips() {
    let (code, out, _) = lmrttg(&["construct", "--n", "4", "--m", "5", "--family", "g"]);
    assert_eq!(code, 0);
    let g = lmrttg::graph::GraphJson::parse(&out).unwrap().to_two_terminal().unwrap();
    assert_eq!(g.edge_count(), 5);
    assert_eq!(g.terminals(), (0, 1));
}

#[test]
fn reliability_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g45.json");
    let (_, json, _) = lmrttg(&["construct", "--n", "4", "--m", "5", "--family", "g"]);
    std::fs::write(&path, json).unwrap();
    let (code, out, _) = lmrttg(&["reliability", "--graph", path.to_str().unwrap(), "--at", "1/2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reliability"], "23/32");
    assert_eq!(v["n_vector"], serde_json::json!(["1", "6", "10", "5", "1"]));
    let (code, _, err) = lmrttg(&["reliability", "--graph", path.to_str().unwrap(), "--at", "3/2"]);
    assert_eq!(code, 2);
    assert!(err.contains("outside"));
}

#[test]
fn invariants_of_family() {
    let (code, out, _) = lmrttg(&["invariants", "--n", "6", "--m", "8", "--family", "s1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h_value"], 61);
}

#[test]
fn golden_reports() {
    for (suite, fmt, file) in [
        ("lemma7", "json", "exceptional_pairs.json"),
        ("lemma7", "md", "exceptional_pairs.md"),
        ("sturm", "json", "sturm.json"),
    ] {
        let (code, out, _) = lmrttg(&["--no-meta", "verify", suite, "--format", fmt]);
        assert_eq!(code, 0);
        let want = std::fs::read_to_string(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(out, want, "{file}");
    }
}

#[test]
fn brute_report() {
    let (code, out, _) = lmrttg(&["--no-meta", "verify", "brute", "--n", "5", "--m", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["unique"], true);
    assert_eq!(v["matches_construction"], true);
    assert!(v.get("elapsed_ms").is_none());
    let (code, _, _) = lmrttg(&["verify", "brute", "--n", "9", "--m", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_all_passes() {
    let (code, out, err) = lmrttg(&["--jobs", "2", "--no-meta", "verify", "all", "--max-n", "6"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(lmrttg(&["verify", "nonsense"]).0, 2);
    assert_eq!(lmrttg(&["classify", "--n", "7..5"]).0, 2);
    assert_eq!(lmrttg(&["construct", "--n", "6", "--m", "5", "--family", "c3"]).0, 2);
}
