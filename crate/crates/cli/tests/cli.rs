use std::fs;
use std::process::{Command, Output};

fn semilie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semilie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_writes_tables_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k3.txt");
    let o = semilie(&["enumerate", "--order", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.split("\n\n").filter(|b| !b.trim().is_empty()).count(), 24);
}

#[test]
fn derive_json_schema() {
    let o = semilie(&["derive", "--order", "3"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["order"], 3);
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 15);
    let keys: Vec<&str> = entries[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec![
        "model_id", "dimension", "reducible", "absorbing_states", "symmetry", "variant_count",
        "lie_closed", "algebra_closed", "known_label", "generators", "sources",
    ];
    want.sort();
    let mut got = keys.clone();
    got.sort();
    assert_eq!(got, want);
    let labeled: Vec<&str> = entries.iter().filter_map(|e| e["known_label"].as_str()).collect();
    assert!(labeled.contains(&"equal-input-3") && labeled.contains(&"C3-group-based"));
}

#[test]
fn derive_from_tables_file_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("t.txt");
    fs::write(&good, "# two tables\n1 1\n2 2\n\n1 2\n2 1\n").unwrap();
    let o = semilie(&["derive", "--order", "2", "--tables", good.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 3);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 1\n2 2\n\n1 2\n2 x\n").unwrap();
    let o = semilie(&["derive", "--order", "2", "--tables", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("block 2") && err.contains("line 5"), "{err}");
}

#[test]
fn markdown_and_output_dir_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("semilie.toml");
    fs::write(&cfg, format!("output_dir = {:?}\n", dir.path().join("out"))).unwrap();
    let o = semilie(&["--config", cfg.to_str().unwrap(), "derive", "--order", "2", "--format", "md", "--out", "k2.md"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let md = fs::read_to_string(dir.path().join("out/k2.md")).unwrap();
    assert!(md.contains("binary-symmetric"));
}

#[test]
fn classify_finds_a_derived_id() {
    let o = semilie(&["derive", "--order", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let id = doc["entries"][0]["model_id"].as_str().unwrap().to_string();
    let o = semilie(&["classify", "--model-id", &id, "--order", "2"]);
    assert!(o.status.success());
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["model_id"], id.as_str());
    assert_eq!(semilie(&["classify", "--model-id", "ffff", "--order", "2"]).status.code(), Some(1));
}

#[test]
fn verify_closure_verdicts() {
    let o = semilie(&["verify-closure", "--fixture", "GM2", "--trials", "20", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (line, json) = text.split_once('\n').unwrap();
    assert!(line.starts_with("PASS GM2"), "{line}");
    let detail: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(detail["verdict"], "pass");
    assert_eq!(detail["seed"], 3);

    let o = semilie(&["verify-closure", "--fixture", "SYM", "--trials", "20"]);
    assert!(stdout(&o).starts_with("FAIL SYM"));

    let o = semilie(&["derive", "--order", "4", "--format", "csv"]);
    let row = stdout(&o).lines().find(|l| l.contains(",F81,")).unwrap().to_string();
    let id = row.split(',').next().unwrap();
    let o = semilie(&["verify-closure", "--order", "4", "--model-id", id, "--trials", "10"]);
    assert!(stdout(&o).starts_with(&format!("PASS {id}")));
}

#[test]
fn construct_commands() {
    let o = semilie(&["construct", "group-based", "--group", "V4"]);
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["known_label"], "K3ST");
    assert_eq!(rec["dimension"], 3);

    let o = semilie(&["construct", "equivariant", "--order", "4", "--perm", "(13)", "--perm", "(1234)"]);
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["known_label"], "K2ST");

    let o = semilie(&["construct", "fixture", "JJ3"]);
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((rec["lie_closed"].as_bool(), rec["algebra_closed"].as_bool()), (Some(true), Some(false)));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(semilie(&[]).status.code(), Some(1));
    assert_eq!(semilie(&["enumerate"]).status.code(), Some(1));
    assert_eq!(semilie(&["enumerate", "--order", "7"]).status.code(), Some(1));
    assert_eq!(semilie(&["derive", "--order", "2", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(semilie(&["construct", "fixture", "HKY"]).status.code(), Some(1));
    assert_eq!(semilie(&["construct", "group-based", "--group", "Q8"]).status.code(), Some(1));
    assert_eq!(semilie(&["verify-closure"]).status.code(), Some(1));
    assert_eq!(semilie(&["--help"]).status.code(), Some(0));
    assert_eq!(semilie(&["--version"]).status.code(), Some(0));
}
