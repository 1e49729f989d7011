use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .display()
        .to_string()
}

fn toricy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricy")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = toricy(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn theta_of_a_weighted_projective_space() {
    let out = stdout(&["wps", "theta", "5,5,4,4,2", "--points"]);
    assert!(out.starts_with("4 5\n"));
    assert!(out.contains("44 lattice points"));
    assert!(out.contains("reflexive true"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["wps", "theta", "1,1,1,3,4", "--json"])).unwrap();
    assert_eq!(json["hull_flags"]["is_reflexive"], true);
    assert_eq!(json["theta"]["dim"], 4);
}

#[test]
fn analyze_reports_quasismoothness() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["analyze", "--weights", "1,1,2,3,3,3", "--json"])).unwrap();
    assert_eq!(json["quasismooth"], false);
    assert_eq!(json["regularity"]["irreducible"], true);
    let hull = stdout(&["analyze", "--weights", "1,1,1,1,1,2", "--support", "hull"]);
    assert!(hull.contains("quasismooth true"));
}

#[test]
fn good_pair_duals() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "goodpair",
        "dual",
        "--delta1",
        &data("cross.poly"),
        "--delta2",
        &data("triangle.poly"),
        "--json",
    ]))
    .unwrap();
    assert_eq!(json["family"]["support"].as_array().unwrap().len(), 5);
    assert_eq!(json["dual_family"]["support"].as_array().unwrap().len(), 4);
    assert_eq!(json["dual_family"]["ambient"]["class_group"]["display"], "Z^2");
}

#[test]
fn transpose_matrices() {
    let out = stdout(&["bhk", "transpose", "--matrix", &data("p55442.mat")]);
    assert!(out.contains("10 5 6 6 3"));
    assert!(out.contains("dual group: Z/5"));
    assert!(out.contains("transpose check: ok"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "bhk",
        "transpose",
        "--matrix",
        &data("fermat.mat"),
        "--group-lattice",
        &data("fermat_z5.grp"),
        "--json",
    ]))
    .unwrap();
    assert_eq!(json["check"]["polytopes_agree"], true);
    assert_eq!(json["dual_group"]["structure"]["display"], "Z/5");
}

#[test]
fn hodge_and_mirror_test() {
    assert_eq!(stdout(&["hodge", "--polytope", &data("simplex4.poly")]), "101 1\n");
    let out = stdout(&[
        "mirror-test",
        "--delta1",
        &data("simplex4.poly"),
        "--delta2",
        &data("simplex4_plus.poly"),
    ]);
    assert!(out.starts_with("fail"));
    assert!(out.contains("3 79"));
}

#[test]
fn survey_and_table() {
    let out = toricy(&["survey", "--dim", "5", "--max-w", "3", "--jobs", "1"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "weights,F,R,C,Q,bucket,theta_points,hull_vertices");
    assert!(csv.contains("\n1 1 1 1 1 1,1,1,1,1,F,462,6\n"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("3      6     13      5      2"));
    let table = stdout(&["table1", "--max-w", "4"]);
    assert!(table.contains("4     10     39     11      3"));
}

#[test]
fn errors_exit_with_one() {
    let out = toricy(&["hodge", "--polytope", "/nonexistent/file.poly"]);
    assert_eq!(out.status.code(), Some(1));
    let out = toricy(&["wps", "theta", "2,2,4"]);
    assert_eq!(out.status.code(), Some(1));
}
