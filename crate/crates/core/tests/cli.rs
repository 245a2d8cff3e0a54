use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linset::io;

fn linset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linset")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn catalogue(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalogue").join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn version_names_conway_table() {
    let o = linset(&["--version"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("conway-table v1"));
}

#[test]
fn gen_subgeometry_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("baer.pts");
    let o = linset(&["gen", "subgeometry", "--p", "3", "--t", "2", "--n", "2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 14);
    assert_eq!(text, std::fs::read_to_string(catalogue("baer_pg2_9.pts")).unwrap());
    assert_eq!(io::format_points(&io::parse_points(&text).unwrap()), text);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(io::sidecar_path(&out)).unwrap()).unwrap();
    assert_eq!(meta["family"]["family"], "subgeometry");
    assert_eq!(meta["flags"]["is_minimal"], true);
    let (_, w) = io::read_witness(&dir.path().join("baer.wit")).unwrap();
    assert_eq!(w.rank, 3);
}

#[test]
fn gen_rejects_rank_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.pts");
    let o = linset(&["gen", "random_rank_r", "--p", "3", "--t", "2", "--n", "2", "--r", "0", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: bad_params:"));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn check_reports_baer() {
    let o = linset(&["check", s(&catalogue("baer_pg2_9.pts")), "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["is_blocking"], true);
    assert_eq!(r["is_small"], true);
    assert_eq!(r["is_minimal"], true);
    assert_eq!(r["exponent"], 1);
    assert_eq!(r["is_redei"], true);
}

#[test]
fn check_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.pts");
    std::fs::write(&empty, "").unwrap();
    let o = linset(&["check", s(&empty), "--k", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: parse:"));

    let o = linset(&["check", s(&catalogue("baer_pg2_9.pts")), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: usage:"));

    let o = linset(&["check", s(&dir.path().join("missing.pts")), "--k", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: io:"));

    let o = linset(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_baer_and_trivial_line() {
    let o = linset(&["reconstruct", s(&catalogue("baer_pg2_9.pts")), "--k", "1", "--p0", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r[0]["dim_w"], 2);
    assert_eq!(r[0]["status"], "success");

    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.pts");
    let mut text = String::from("3 2 2\n");
    for a in 0..9 {
        text.push_str(&format!("1 {a} 0\n"));
    }
    text.push_str("0 1 0\n");
    std::fs::write(&line, text).unwrap();
    let o = linset(&["reconstruct", s(&line), "--k", "1", "--p0", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: no_subline_secant:"));
}

#[test]
fn islinear_witness_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("w.wit");
    let o = linset(&["islinear", s(&catalogue("rank4_pg2_27.pts")), "--p0", "3", "--out", s(&wit)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, w) = io::read_witness(&wit).unwrap();
    assert_eq!(w.points, io::read_points(&catalogue("rank4_pg2_27.pts")).unwrap());

    let neg = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalogue-negative/baer_moved_pg2_9.pts");
    let o = linset(&["islinear", s(&neg), "--p0", "3", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"linear\": false"));
    assert!(stderr(&o).starts_with("error: not_linear:"));
}

#[test]
fn spread_dump_golden() {
    let o = linset(&["spread", "dump", "--p", "3", "--t", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let golden = include_str!("golden/spread_dump_p3_t2_n1.txt");
    assert_eq!(text, golden);
    // the ten elements partition the 40 points of PG(3,3) into lines
    let mut seen: Vec<u32> = text
        .lines()
        .flat_map(|l| l.split(" : ").nth(1).unwrap().split(' ').map(|x| x.parse::<u32>().unwrap()).collect::<Vec<_>>())
        .collect();
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.split(" : ").nth(1).unwrap().split(' ').count() == 4));
    seen.sort_unstable();
    assert_eq!(seen, (0..40).collect::<Vec<_>>());
}

#[test]
fn secants_and_project() {
    let o = linset(&["secants", s(&catalogue("baer_pg2_9.pts")), "--p0", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["subline_secants"], 13);

    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("img.pts");
    let o = linset(&["project", s(&catalogue("subplane_pg3_49.pts")), "--out", s(&img)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["image_size"], 57);
    assert_eq!(r["blocking"], true);
    assert_eq!(r["small"], true);
    assert_eq!(r["minimal"], true);
    assert_eq!(io::read_points(&img).unwrap().space().dim(), 2);

    let o = linset(&["project", s(&catalogue("baer_pg2_9.pts")), "--centre", "1 0 0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: centre_in_set:"));
}

#[test]
fn thread_count_does_not_change_output() {
    let file = catalogue("cone_pg3_9.pts");
    let a = linset(&["--threads", "1", "secants", s(&file), "--p0", "3", "--k", "2"]);
    let b = linset(&["secants", s(&file), "--p0", "3", "--k", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = linset(&["--threads", "0", "secants", s(&file), "--p0", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn harness_run_on_catalogue() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sc.json");
    let cat = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalogue");
    let o = linset(&["harness", "run", "--catalogue", s(&cat), "--out", s(&out), "--lemma", "sziklai_i,grootte_bound"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let card: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(card["schema_version"], 1);
    assert_eq!(card["summary"]["violated"], 0);
    let baer = card["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["instance"] == "baer_pg2_9" && c["id"] == "sziklai_i")
        .unwrap();
    assert_eq!(baer["bound"], "2");
    assert_eq!(baer["verdict"], "holds");
    let sub = card["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["instance"] == "subplane_pg2_49" && c["id"] == "grootte_bound")
        .unwrap();
    assert_eq!(sub["bound"], "55");
    assert!(io::sidecar_path(&out).exists());

    let o = linset(&["harness", "run", "--catalogue", s(&cat), "--out", s(&out), "--lemma", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}
