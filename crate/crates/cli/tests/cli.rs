use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freeplanar")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("freeplanar-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn kreweras_of_a_small_partition() {
    let out = run(&["nc", "kreweras", "{1,2},{3}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{1},{2,3}");
    let back = run(&["nc", "kreweras", "--inverse", "{1},{2,3}"]);
    assert_eq!(stdout(&back), "{1,2},{3}");
}

#[test]
fn boxtimes_of_catalan_profiles() {
    let path = temp_file("catalan.json", r#"{"name":"catalan","moments":["1","2","5","14"]}"#);
    let p = path.to_str().unwrap();
    let out = run(&["conv", "boxtimes", p, p, "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), r#"["1","3","12","55"]"#);
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "all", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    for suite in ["partitions/", "kreweras/", "tangles/", "gpa/", "freeprod/"] {
        assert!(text.contains(suite), "{suite} missing");
    }
}

#[test]
fn verify_is_byte_stable_and_records_the_seed() {
    let args = ["verify", "kreweras", "--max-n", "4", "--seed", "7", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["passed"], true);
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(run(&["nc", "frobnicate"]).status.code(), Some(2));
    let bad = run(&["nc", "kreweras", "{1,3},{2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("{1,2},{3}"));
    assert_eq!(run(&["tangle", "parse", "Mult"]).status.code(), Some(2));
    assert_eq!(run(&["nc", "kreweras", "{1,3},{2,4}"]).status.code(), Some(2));
}

#[test]
fn json_output_parses_back() {
    let out = run(&["nc", "enumerate", "4", "--format", "json"]);
    let parts: Vec<String> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parts.len(), 14);
    for p in &parts {
        let k = run(&["nc", "kreweras", p, "--format", "json"]);
        let k: String = serde_json::from_slice(&k.stdout).unwrap();
        let back = run(&["nc", "kreweras", "--inverse", &k]);
        assert_eq!(&stdout(&back), p);
    }
    let dims = run(&["fp", "dims", "tlj", "tlj", "--n", "5", "--format", "json"]);
    let dims: Vec<String> = serde_json::from_slice(&dims.stdout).unwrap();
    assert_eq!(dims, ["1", "3", "12", "55", "273"]);
}

#[test]
fn basis_labels_use_the_documented_shape() {
    let out = run(&["fp", "basis", "tlj", "tlj", "--n", "2", "--format", "json"]);
    let labels: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(labels.as_array().unwrap().len(), 3);
    assert!(stdout(&out).starts_with(r#"[{"I":[2],"parts":[{"p":"{1,2}","pIdx":[1],"kIdx":[1,1]}]}"#));
}

#[test]
fn graph_planar_algebra_commands() {
    let spec = temp_file("spec.json", r#"{"name":"C+M2","blocks":[1,2]}"#);
    let spec = spec.to_str().unwrap();
    let basis = run(&["gpa", "basis", "1", "--spec", spec, "--format", "json"]);
    let loops: Vec<serde_json::Value> = serde_json::from_slice(&basis.stdout).unwrap();
    assert_eq!(loops.len(), 5);
    let x = temp_file("x.json", r#"{"degree":1,"terms":[{"loop":[[2,1],[2,2]],"coeff":"1"}]}"#);
    let y = temp_file("y.json", r#"{"degree":1,"terms":[{"loop":[[2,2],[2,1]],"coeff":"1"}]}"#);
    let product = run(&["gpa", "eval", "Mult 1", "--spec", spec, "--input", x.to_str().unwrap(), "--input", y.to_str().unwrap(), "--format", "json"]);
    assert!(product.status.success(), "{}", String::from_utf8_lossy(&product.stderr));
    let v: serde_json::Value = serde_json::from_slice(&product.stdout).unwrap();
    assert_eq!(v["terms"][0]["loop"], serde_json::json!([[2, 1], [2, 1]]));
    let tr = run(&["gpa", "trace", x.to_str().unwrap(), "--spec", spec]);
    assert_eq!(stdout(&tr), "0");
    let dims = run(&["gpa", "boolean", "3"]);
    assert_eq!(stdout(&dims), r#"["1","1","2"]"#);
}

#[test]
fn free_product_rank_and_group_moments() {
    let out = run(&["fp", "rank", "--n", "2"]);
    assert_eq!(stdout(&out), r#"["1","3"]"#);
    let s3 = run(&["group", "moments", "--points", "3", "--gen", "2,1,3", "--gen", "2,3,1", "--k", "3"]);
    assert_eq!(stdout(&s3), r#"["1","2","5"]"#);
    let wreath = run(&["fp", "wreath-moments", "point:1", "catalan", "--n", "3"]);
    assert_eq!(stdout(&wreath), r#"["1","2","5"]"#);
}

#[test]
fn tangle_commands() {
    assert_eq!(stdout(&run(&["tangle", "pi", "U 2"])), "{1,4},{2,3}");
    assert_eq!(stdout(&run(&["tangle", "shading", "Tpi[{1,6},{2,3,4,5}]"])), "{1,2,5,6},{3,4}");
    let free = run(&["tangle", "free", "U 2", "Id 2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&free.stdout).unwrap();
    assert_eq!(v["free"], true);
    let reduced = run(&["tangle", "reduce", "{1,4},{2,3}"]);
    assert_eq!(stdout(&reduced), "Tpi[{1,4},{2,3}]\nTpi[{1,2,3,4}]");
    assert_eq!(run(&["tangle", "reduce", "{1,2},{3,4}"]).status.code(), Some(2));
}
