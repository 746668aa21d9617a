use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use intom::analysis::text::parse_compactum;
use intom::boolalg::text::{parse_ba, parse_iso};
use intom::compact::text::parse_cover;

const THREE: &str = "tree v1\nnode <> split m=0 r=0 et=1\nnode 1 terminal\nnode 2 terminal\n";

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("intom-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn intom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intom")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn dualcheck_on_three_components() {
    let dir = scratch("dual");
    let t = write(&dir, "t.tree", THREE);
    let o = intom(&["dualcheck", &t]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "forms equal: 2 isolated points\n");
}

#[test]
fn construct_single_eta() {
    let dir = scratch("eta");
    let t = write(&dir, "t.tree", "tree v1\nnode <> eta\n");
    let o = intom(&["construct", &t]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "compactum v1\ncantor 0/2^0 1/2^0\n");
}

#[test]
fn seeded_suite_passes() {
    let o = intom(&["suite", "--seed", "42", "--depth", "4", "--count", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("duality roundtrips: 100/100 pass\n"));
}

#[test]
fn pipeline_outputs_parse_back() {
    let dir = scratch("pipe");
    let t = write(&dir, "t.tree", THREE);
    let c = dir.join("c.txt");
    let cs = c.to_str().unwrap();
    assert_eq!(intom(&["construct", &t, "--out", cs]).status.code(), Some(0));
    let text = fs::read_to_string(&c).unwrap();
    assert!(parse_compactum(&text).is_ok());
    for cmd in ["derive", "reduce"] {
        let o = intom(&[cmd, cs]);
        assert!(parse_compactum(&stdout(&o)).is_ok(), "{cmd}");
    }
    let ba = intom(&["algebra", cs]);
    assert_eq!(stdout(&ba), "ba v1\ncluster in=2 junk=1 atomless=0\n");
    assert!(parse_ba(&stdout(&ba)).is_ok());
    let b = write(&dir, "b.txt", &stdout(&ba));
    let q = intom(&["quotient", &b]);
    assert_eq!(stdout(&q), "ba v1\ncluster in=2 junk=0 atomless=0\n");
    let cover = intom(&["cover", cs, "--precision", "3"]);
    assert_eq!(cover.status.code(), Some(0));
    assert_eq!(parse_cover(&stdout(&cover)).unwrap().n, 3);
    let parts = intom(&["partitions", cs, "--depth", "0", "--count", "2"]);
    assert_eq!(stdout(&parts).lines().count(), 3);
}

#[test]
fn iso_success_and_failure() {
    let dir = scratch("iso");
    let a = write(&dir, "a.ba", "ba v1\ncluster in=2 junk=1 atomless=0\n");
    let b = write(&dir, "b.ba", "ba v1\ncluster in=1 junk=0 atomless=0\ncluster in=1 junk=1 atomless=0\n");
    let o = intom(&["iso", &a, &b]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(parse_iso(&stdout(&o)).unwrap().atoms.len(), 3);
    let c = write(&dir, "c.ba", "ba v1\ncluster in=2 junk=2 atomless=0\n");
    let o = intom(&["iso", &a, &c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error kind=check message="));
}

#[test]
fn simulate_reports_gap() {
    let dir = scratch("sim");
    let s = write(&dir, "s.script", "tree v1\nnode <> terminal\nevent fresh <>\n");
    let o = intom(&["simulate", &s, "--stage", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("stage 1\npoint 1/2^3\n"));
    assert!(out.lines().last().unwrap().starts_with("gap "));
}

#[test]
fn supnorm_of_demo_function() {
    let dir = scratch("sup");
    let f = write(&dir, "f.plf", "plf (0,0) (1/4,0) (1/2,1/2) (3/4,0) (1,0)\n");
    let h = write(&dir, "h.txt", "compactum v1\npoint 0\npoint 1/4\npoint 3/4\npoint 1\n");
    let o = intom(&["supnorm", &f, &h]);
    assert_eq!(stdout(&o), "sup 0/2^0\ninterval-sup 1/2^1\nbreakpoints-in-host false\n");
}

#[test]
fn svg_is_deterministic() {
    let dir = scratch("svg");
    let t = write(&dir, "t.tree", THREE);
    let a = intom(&["render-svg", &t]);
    let b = intom(&["render-svg", &t]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<svg "));
}

#[test]
fn errors_have_kinds_and_codes() {
    let dir = scratch("err");
    let bad = write(&dir, "bad.tree", "tree v1\nnode 1 terminal\n");
    let o = intom(&["construct", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error kind=parse message="));
    let o = intom(&["construct", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error kind=io"));
    let o = intom(&["cover", &bad, "--precision", "65"]);
    assert_eq!(o.status.code(), Some(2));
    let o = intom(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error kind=usage"));
}
