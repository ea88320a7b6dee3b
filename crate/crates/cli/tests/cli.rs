use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_two-convex-lab"));
    c.env_remove("TWO_CONVEX_LAB_SEED");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn validate_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let oct = dir.path().join("oct.off4");
    assert!(run(&["generate", "octahedron_s2", "-o", oct.to_str().unwrap()]).status.success());
    let out = run(&["validate", oct.to_str().unwrap(), "--embedding"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["euler_characteristic"], 2);
    assert_eq!(v["result"]["embedded"], true);
    assert_eq!(v["run"]["exact"], true);

    let corrupt = dir.path().join("corrupt.off4");
    std::fs::write(&corrupt, "OFF4\n3 1\n0 0 0 0\n1 0 0 oops\n0 1 0 0\n3 0 1 2\n").unwrap();
    let out = run(&["validate", corrupt.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    // two triangles sharing an edge: boundary edges are non-manifold here
    let open = dir.path().join("open.off4");
    std::fs::write(&open, "OFF4\n4 2\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 0 1 0\n3 0 1 2\n3 0 2 3\n").unwrap();
    assert_eq!(run(&["validate", open.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn homology_and_obstruction() {
    let v = json(&run(&["homology", "builtin:clifford_torus:4"]));
    assert_eq!((v["result"]["betti0"].as_u64(), v["result"]["betti1"].as_u64(), v["result"]["betti2"].as_u64()), (Some(1), Some(2), Some(1)));
    let v = json(&run(&["homology", "builtin:octahedron_s2"]));
    assert_eq!(v["result"]["betti1"], 0);
    assert_eq!(json(&run(&["obstruction", "--nonorientable", "2"]))["result"]["exists_degree_one"], false);
    assert_eq!(json(&run(&["obstruction", "--nonorientable", "3"]))["result"]["exists_degree_one"], true);
    assert_eq!(json(&run(&["obstruction", "--orientable", "1"]))["result"]["exists_degree_one"], true);
    assert_eq!(json(&run(&["obstruction", "builtin:projective_plane_min"]))["result"]["exists_degree_one"], false);
    assert_eq!(run(&["obstruction", "--nonorientable", "0"]).status.code(), Some(4));
}

#[test]
fn degree_of_identity_and_bad_maps() {
    let v = json(&run(&["degree2", "builtin:octahedron_s2", "builtin:octahedron_s2"]));
    assert_eq!(v["result"]["degree_mod2"], 1);
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("const.txt");
    std::fs::write(&map, "# everything to vertex 0\n0 0 0 0 0 0\n").unwrap();
    let out = run(&["degree2", "builtin:octahedron_s2", "builtin:octahedron_s2", "--map", map.to_str().unwrap()]);
    assert_eq!(json(&out)["result"]["degree_mod2"], 0);
    std::fs::write(&map, "0 1 2\n").unwrap();
    assert_eq!(run(&["degree2", "builtin:octahedron_s2", "builtin:octahedron_s2", "--map", map.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("cert.json");
    let out = run(&["certify", "builtin:clifford_torus:8", "--point", "0,0,0,0", "--json-out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["result"]["certified"], 1);
    let out = run(&["verify-cert", "builtin:clifford_torus:8", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["passed"], 1);

    // a coarser torus has a different triangle list
    let out = run(&["verify-cert", "builtin:clifford_torus:6", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let v = json(&run(&["certify", "builtin:octahedron_s2", "--point", "0,0,0,0"]));
    assert_eq!(v["result"]["reports"][0]["result"]["evidence"]["mode"], "hyperplane_reduction");
    assert_eq!(run(&["certify", "builtin:octahedron_s2", "--point", "1,0,0,0"]).status.code(), Some(4));
    assert_eq!(run(&["certify", "builtin:octahedron_s2", "--point", "1,0,0"]).status.code(), Some(2));
}

#[test]
fn slice_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("gamma.dat");
    let out = run(&["slice", "builtin:octahedron_s2", "--direction", "0,0,1,0", "--plot-out", plot.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["result"]["k"], 4);
    assert_eq!(v["result"]["cone_holds"], true);
    assert_eq!(std::fs::read_to_string(&plot).unwrap().lines().count(), 5);
    let v = json(&run(&["slice", "builtin:clifford_torus_apex5:8", "--direction=-1,0,-1,0"]));
    assert_eq!(v["result"]["k"], 5);
    assert_eq!(run(&["slice", "builtin:octahedron_s2", "--direction", "0,0,0,0"]).status.code(), Some(2));
}

#[test]
fn link_words_from_fixtures_and_search() {
    let v = json(&run(&["linkword", "--fixture", fixture("fig1.json").to_str().unwrap()]));
    assert_eq!(v["result"]["word"], "abAB");
    assert_eq!(v["result"]["commutator"], true);
    let v = json(&run(&["linkword", "--fixture", fixture("unlink.json").to_str().unwrap()]));
    assert_eq!(v["result"]["word"], "");
    let out = run(&["--budget-link", "0", "linkword", "builtin:clifford_torus_apex5:8", "--direction=-1,0,-1,0"]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(json(&out)["result"]["outcome"], "exhausted");
}

#[test]
fn seed_from_environment() {
    let a = bin().args(["certify", "builtin:octahedron_s2", "--samples", "3"]).env("TWO_CONVEX_LAB_SEED", "11").output().unwrap();
    let b = run(&["--seed", "11", "certify", "builtin:octahedron_s2", "--samples", "3"]);
    assert_eq!(json(&a)["run"]["seed"], 11);
    assert_eq!(a.stdout, b.stdout);
}
