use std::process::Command;

use serde_json::Value;

fn sector_pack(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sector-pack")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn documented_examples() {
    assert_eq!(sector_pack(&["eval", "--family", "div-f:2/3", "--point", "2,1"]).1, "2\n");
    assert_eq!(sector_pack(&["unrank", "--family", "cantor-f", "--rank", "7"]).1, "2,1\n");
    assert_eq!(sector_pack(&["basis", "--slope", "1/3"]).1, "(1,0) (3,1)\n");
    assert_eq!(sector_pack(&["basis", "--slope", "inf"]).1, "(1,0) (0,1)\n");
    assert_eq!(sector_pack(&["transform", "--map", "phi:2"]).1, "2 -3 1 -2\n");
}

#[test]
fn enumerate_csv() {
    let (code, out, _) = sector_pack(&["enumerate", "--slope", "3/2", "--order", "residue-interleaved", "--count", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "rank,x,y\n0,0,0\n1,1,0\n2,2,0\n3,1,1\n4,2,1\n5,3,0\n");
    let (_, out, _) = sector_pack(&["enumerate", "--family", "steep-f:2", "--count", "5", "--format", "csv"]);
    assert_eq!(out, "rank,x,y\n0,0,0\n1,1,0\n2,1,1\n3,1,2\n4,2,0\n");
}

#[test]
fn json_is_a_single_document_matching_text() {
    let cases: &[&[&str]] = &[
        &["eval", "--family", "quasi:3/2", "--point", "2,3"],
        &["unrank", "--family", "steep-g:2", "--rank", "1"],
        &["enumerate", "--slope", "inf", "--order", "diagonal", "--count", "4"],
        &["basis", "--slope", "2/3"],
        &["transform", "--map", "psi:2", "--point", "3,1"],
        &["layout", "--family", "steep-f:1", "--count", "3"],
        &["verify", "--family", "div-g:2/3", "--prefix", "200"],
    ];
    for args in cases {
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let (code, out, _) = sector_pack(&json_args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(out.lines().count(), 1);
        let _: Value = serde_json::from_str(&out).unwrap();
    }
    let (_, text, _) = sector_pack(&["eval", "--family", "quasi:3/2", "--point", "2,3"]);
    let (_, json, _) = sector_pack(&["eval", "--family", "quasi:3/2", "--point", "2,3", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["rank"].to_string(), text.trim());
    assert_eq!(v["point"], serde_json::json!([2, 3]));
    let (_, json, _) = sector_pack(&["unrank", "--family", "steep-g:2", "--rank", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["point"], serde_json::json!([1, 2]));
}

#[test]
fn layout_dump() {
    let (code, out, _) = sector_pack(&["layout", "--family", "steep-f:2", "--count", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "offset,x,y\n0,0,0\n1,1,0\n2,1,1\n3,1,2\n4,2,0\n");
}

#[test]
fn verify_all_builtin_families() {
    let (code, out, _) = sector_pack(&["verify"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("pass ")));
    assert_eq!(out.lines().count(), sector_pack::standard_families(10).len());
}

#[test]
fn verify_failure_exits_three() {
    let dir = std::env::temp_dir().join(format!("sector-pack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let shifted = dir.join("shifted.json");
    std::fs::write(&shifted, "{\"x2\":\"1/2\",\"x\":\"1/2\",\"y\":\"1\",\"1\":\"1\"}\n").unwrap();
    let (code, out, _) = sector_pack(&["verify", "--poly", shifted.to_str().unwrap(), "--slope", "1", "--prefix", "100"]);
    assert_eq!(code, 3);
    assert!(out.contains("missing value 0"), "{out}");
    let good = dir.join("f1.json");
    std::fs::write(&good, "{\"x2\":\"1/2\",\"x\":\"1/2\",\"y\":\"1\"}").unwrap();
    assert_eq!(sector_pack(&["verify", "--poly", good.to_str().unwrap(), "--slope", "1"]).0, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_writes_report() {
    let dir = std::env::temp_dir().join(format!("sector-pack-search-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, out, err) = sector_pack(&["search", "--slope", "1", "--bound", "1", "--prefix", "200", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(err.contains("survivors"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["survivors"], serde_json::json!([{"x2": "1/2", "x": "1/2", "y": "1"}]));
    assert_eq!(report["exhausted"], Value::Bool(true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn error_statuses() {
    let (code, _, err) = sector_pack(&["eval", "--family", "steep-f:1", "--point", "1,2"]);
    assert_eq!(code, 1);
    assert!(err.contains("outside"));
    assert_eq!(sector_pack(&["basis", "--slope", "1/0"]).0, 1);
    assert_eq!(sector_pack(&["unrank", "--family", "cantor-f", "--rank", "-3"]).0, 2);
    assert_eq!(sector_pack(&["unrank", "--family", "cantor-f", "--rank", "x"]).0, 1);
    assert_eq!(sector_pack(&["enumerate", "--slope", "inf", "--order", "column-bottom-up"]).0, 1);
    assert_eq!(sector_pack(&["search", "--slope", "inf"]).0, 1);
    assert_eq!(sector_pack(&["transform", "--map", "psi:0"]).0, 1);
    assert_eq!(sector_pack(&[]).0, 2);
}
