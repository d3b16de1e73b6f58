//! End-to-end binary tests: exit codes, formats, exports.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biplab"))
}

fn temp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("biplab-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_pyramid(dir: &std::path::Path) -> PathBuf {
    // Square pyramid; with the apex as source, directional simplicity
    // fails, which must surface as exit code 1.
    let path = dir.join("pyramid.txt");
    std::fs::write(
        &path,
        "p00: 0 0 0\np10: 2 0 0\np01: 0 2 0\np11: 2 2 0\napex: 1 1 2\n",
    )
    .unwrap();
    path
}

#[test]
fn passing_run_exits_zero_with_json() {
    let out = bin()
        .args(["verify-structure", "--w", "321"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn mathematical_failure_exits_one_with_witness() {
    let dir = temp_dir();
    let pyramid = write_pyramid(&dir);
    let out = bin()
        .args([
            "verify-structure",
            "--vertices",
            pyramid.to_str().unwrap(),
            "--cost",
            "1/7,1/13,-1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let failed: Vec<&serde_json::Value> = checks
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| c["check"] == "directional-simplicity"
        && c["witness"]["vertex"] == "apex"));
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["verify-structure"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["bcfw", "--w", "321"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["verify-structure", "--w", "3311"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_format_and_output_file() {
    let dir = temp_dir();
    let path = dir.join("report.csv");
    let out = bin()
        .args([
            "verify-structure",
            "--w",
            "321",
            "--format",
            "csv",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("subject,check,status"));
    assert!(body.contains("w=321,lattice,pass"));
}

#[test]
fn single_interval_topology_detail() {
    let out = bin()
        .args([
            "verify-topology",
            "--w",
            "3412",
            "--u",
            "1234",
            "--v",
            "3412",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    let detail = checks[0]["detail"].as_str().unwrap();
    assert!(detail.contains("predicted=sphere(1)"));
    assert!(detail.contains("mu=-1"));
}

#[test]
fn dot_and_poset_exports() {
    let dir = temp_dir();
    let dot = dir.join("moves.dot");
    let out = bin()
        .args([
            "move-graph",
            "--permutahedron",
            "3",
            "--dot",
            dot.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&dot).unwrap();
    assert!(body.starts_with("graph moves"));
    assert!(body.contains("123-132-312-321"));

    let poset = dir.join("poset.json");
    let out = bin()
        .args([
            "verify-structure",
            "--w",
            "321",
            "--export-poset",
            poset.to_str().unwrap(),
            "--export-tables",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let js: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&poset).unwrap()).unwrap();
    assert_eq!(js["elements"].as_array().unwrap().len(), 6);
    assert!(js["join"].is_array());
}

#[test]
fn move_graph_on_w_3412_is_connected() {
    let out = bin().args(["move-graph", "--w", "3412"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bcfw_emits_bridges_and_plabic_on_request() {
    let out = bin()
        .args(["bcfw", "--w", "2413", "--emit-bridges", "--emit-plabic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let witness = &report["checks"][0]["witness"];
    assert_eq!(witness["bridges"].as_array().unwrap().len(), 6);
    assert_eq!(witness["plabic"]["n"], 4);
    assert!(witness["plabic"]["rotation_system"].is_array());
}

#[test]
fn move_graph_json_export() {
    let dir = temp_dir();
    let path = dir.join("moves.json");
    let out = bin()
        .args([
            "move-graph",
            "--w",
            "321",
            "--export-graph",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let js: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(js["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(js["edges"][0]["polygon"], 6);
    // Zero caps are usage errors.
    let out = bin()
        .args(["move-graph", "--w", "321", "--max-chains", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
