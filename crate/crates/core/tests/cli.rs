use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn finitew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finitew")).args(args).output().expect("binary runs")
}

fn stderr_line(o: &Output) -> String {
    let s = String::from_utf8_lossy(&o.stderr).to_string();
    assert_eq!(s.trim_end().lines().count(), 1, "diagnostic is not one line: {s:?}");
    s
}

fn validate(schema: &str, out: &Output) {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let instance: Value = serde_json::from_slice(&out.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn outputs_match_schemas() {
    validate("minimal-models.schema.json", &finitew(&["minimal-models", "--type", "A2", "--p", "5", "--q", "4"]));
    validate("admissible.schema.json", &finitew(&["admissible", "--type", "B2", "--k", "-1/2"]));
    validate("jacobian.schema.json", &finitew(&["jacobian", "--type", "B2"]));
    validate("variety.schema.json", &finitew(&["variety", "--type", "A2", "--q", "2", "--element", "e1-2*f11"]));
    for kind in ["--classical", "--quantum", "--whittaker"] {
        validate("brst.schema.json", &finitew(&["brst", "--type", "A2", "--nilpotent", "minimal", "--max-degree", "2", kind]));
    }
    validate("brst.schema.json", &finitew(&["brst", "--type", "A2", "--nilpotent", "p=2,1", "--max-degree", "2"]));
}

#[test]
fn jacobian_without_generators_is_refused() {
    let o = finitew(&["jacobian", "--type", "E6"]);
    assert_eq!(o.status.code(), Some(3));
    stderr_line(&o);
}

#[test]
fn exit_codes() {
    let o = finitew(&["admissible", "--type", "A1", "--k", "-2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr_line(&o).contains("critical level"));

    let o = finitew(&["minimal-models", "--type", "A1", "--p", "3", "--q", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr_line(&o).contains("q = 1 < h = 2"));

    for args in [
        &["admissible", "--type", "Q3", "--k", "1"][..],
        &["admissible", "--type", "A1", "--k", "one"],
        &["variety", "--type", "A1", "--q", "2", "--element", "e7"],
        &["brst", "--type", "A1", "--nilpotent", "subregular", "--max-degree", "2"],
        &["brst", "--type", "A1", "--nilpotent", "principal", "--max-degree", "2", "--quantum", "--classical"],
        &["frobnicate"],
    ] {
        let o = finitew(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        stderr_line(&o);
    }

    let o = finitew(&["brst", "--type", "A1", "--nilpotent", "principal", "--max-degree", "11"]);
    assert_eq!(o.status.code(), Some(4));
    stderr_line(&o);
}

#[test]
fn output_file_and_csv() {
    let dir = std::env::temp_dir().join(format!("finitew-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ising.csv");
    let o = finitew(&["--format", "csv", "--output", path.to_str().unwrap(), "minimal-models", "--type", "A1", "--p", "3", "--q", "4"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("type,p,q,level,c,index,character"));
    assert_eq!(lines.count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn brst_quantum_a1_series() {
    let o = finitew(&["brst", "--type", "A1", "--nilpotent", "principal", "--max-degree", "4", "--quantum"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h0_series"], serde_json::json!([1, 0, 1, 0, 1]));
}
