use std::fs;
use std::process::{Command, Output};

fn lozenge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lozenge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_both_matches() {
    let o = lozenge(&["count", "--family", "P", "--a", "1", "--b", "1", "--c", "1", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2 2 MATCH");
}

#[test]
fn count_formula_only() {
    let o = lozenge(&["count", "--family", "P", "--a", "0", "--b", "5", "--c", "5", "--mode", "formula"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn weighted_count_is_a_fraction() {
    let o = lozenge(&["count", "--family", "P_W", "--a", "1", "--b", "1", "--c", "1"]);
    assert_eq!(stdout(&o).trim(), "3/2 3/2 MATCH");
}

#[test]
fn shamrock_parity_error_exits_2() {
    let o = lozenge(&[
        "count", "--family", "HS", "--x", "1", "--y", "1", "--z", "0", "--m", "0", "--a", "0", "--b", "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parity"));
}

#[test]
fn missing_and_extra_parameters_exit_2() {
    assert_eq!(lozenge(&["count", "--family", "P", "--a", "1"]).status.code(), Some(2));
    let o = lozenge(&["count", "--family", "P", "--a", "1", "--b", "1", "--c", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spec_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("spec.json");
    fs::write(&p, r#"{"family":"HS","params":{"x":2,"y":1,"z":0,"m":0,"a":0,"b":0}}"#).unwrap();
    let o = lozenge(&["count", "--spec-file", p.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3 3 MATCH");
}

#[test]
fn cell_list_has_no_formula() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cells.json");
    fs::write(&p, r#"{"cells":[[0,0],[0,1]],"weights":[]}"#).unwrap();
    let path = p.to_str().unwrap();
    assert_eq!(stdout(&lozenge(&["count", "--spec-file", path, "--mode", "oracle"])).trim(), "1");
    assert_eq!(lozenge(&["count", "--spec-file", path, "--mode", "formula"]).status.code(), Some(2));
}

#[test]
fn verify_trapsimp_passes() {
    let o = lozenge(&["verify", "--suite", "trapsimp"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 400);
    for l in &lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert!(v["holds"].as_bool().unwrap() || v.get("skipped").is_some());
    }
}

#[test]
fn verify_unknown_suite_exits_2() {
    assert_eq!(lozenge(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_with_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("grids.json");
    let mut g: serde_json::Value =
        serde_json::from_str(include_str!("../../core/fixtures/default_grids.json")).unwrap();
    g["trapsimp"]["samples"] = 5.into();
    fs::write(&p, g.to_string()).unwrap();
    let o = lozenge(&["verify", "--suite", "trapsimp", "--grid-file", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 20);
}

#[test]
fn sweep_p_skips_invalid_tuples() {
    let o = lozenge(&[
        "sweep", "--family", "P", "--range", "a=0:3", "--range", "b=0:3", "--range", "c=0:3", "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,a,b,c,formula,oracle,match,oracle_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 40);
    assert!(rows.iter().all(|r| r.ends_with(",MATCH,")));
}

#[test]
fn sweep_b_all_match() {
    let o = lozenge(&[
        "sweep", "--family", "B", "--range", "x=0:2", "--range", "a=0:2", "--range", "b=0:2", "--range", "c=0:2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().skip(1).filter(|l| l.contains(",MATCH,")).count(), 81);
}

#[test]
fn sweep_empty_range_is_header_only() {
    let o = lozenge(&["sweep", "--family", "P", "--range", "a=1:0", "--range", "b=0:1", "--range", "c=0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "family,a,b,c,formula,oracle,match,oracle_ms\n");
}

#[test]
fn sweep_cap_exits_2() {
    let o = lozenge(&[
        "sweep", "--family", "P", "--range", "a=0:9", "--range", "b=0:9", "--range", "c=0:9", "--cap", "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic() {
    let args = [
        "sweep", "--family", "H3", "--range", "x=0:1", "--range", "b=0:1", "--range", "c=0:1", "--range", "m=0:1",
        "--range", "a=0:1", "--range", "d=0:1", "--no-timing",
    ];
    let first = lozenge(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, lozenge(&args).stdout);
}

#[test]
fn render_shamrock_with_tiling() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hs.svg");
    let o = lozenge(&[
        "render", "--family", "HS", "--x", "2", "--y", "3", "--z", "2", "--m", "1", "--a", "1", "--b", "1",
        "--out", out.to_str().unwrap(), "--with-tiling",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"class="tiling""#));
    // The hole contributes boundary edges strictly inside the outline.
    assert!(svg.matches("<line").count() > 6 * 5);
}

#[test]
fn render_weighted_shading() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pw.svg");
    let o = lozenge(&[
        "render", "--family", "P_W", "--a", "2", "--b", "3", "--c", "1", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("weight 1/2").count(), 2);
}

#[test]
fn render_untileable_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cells.json");
    fs::write(&spec, r#"{"cells":[[0,0],[0,2]],"weights":[]}"#).unwrap();
    let out = dir.path().join("x.svg");
    let o = lozenge(&[
        "render", "--spec-file", spec.to_str().unwrap(), "--out", out.to_str().unwrap(), "--with-tiling",
    ]);
    assert_eq!(o.status.code(), Some(3));
}
