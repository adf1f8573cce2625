use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cactus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TWO_POWERS: &str = "[\n  {\"x\":[6,0],\"y\":[],\"c\":\"1\"},\n  {\"x\":[0,6],\"y\":[],\"c\":\"1\"}\n]\n";
const THREE_POWERS: &str =
    "[\n  {\"x\":[6,0],\"y\":[],\"c\":\"1\"},\n  {\"x\":[3,3],\"y\":[],\"c\":\"1\"},\n  {\"x\":[0,6],\"y\":[],\"c\":\"1\"}\n]\n";

fn twisted(cmd: &str, rest: &[&str]) -> Output {
    cactus(&[&[cmd, "--model", "twisted-binary:c=1"][..], rest].concat())
}

#[test]
fn decompose_recovers_product_of_linear_forms() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", TWO_POWERS);
    let o = twisted("decompose", &["--functional", s(&f), "--r", "2", "--d", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("g 0 1 0\n"), "{out}");
    assert!(out.contains("params r=2 c=1 d=5 k=3\n"), "{out}");
    assert!(out.contains("span_ok true\n"), "{out}");
}

#[test]
fn certificate_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", TWO_POWERS);
    let o = twisted("decompose", &["--functional", s(&f), "--r", "2", "--d", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let cert = write(&dir, "cert.txt", &stdout(&o));
    let v = twisted("verify", &["--functional", s(&f), "--certificate", s(&cert)]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert_eq!(stdout(&v), "valid\n");

    // The same certificate does not annihilate a different functional.
    let other = write(&dir, "q.json", THREE_POWERS);
    let v = twisted("verify", &["--functional", s(&other), "--certificate", s(&cert)]);
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(stdout(&v), "invalid\n");
}

#[test]
fn decompose_outside_rank_locus_exits_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", THREE_POWERS);
    let o = twisted("decompose", &["--functional", s(&f), "--r", "2", "--d", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rank 3"), "{}", stdout(&o));
}

#[test]
fn rank_over_prime_field() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", TWO_POWERS);
    let o = cactus(&["rank", "--model", "twisted-binary:c=1", "--field", "fp:3", "--functional", s(&f), "--window", "2,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("rank 2\n"), "{}", stdout(&o));

    let o = cactus(&["rank", "--model", "twisted-binary:c=1", "--field", "fp:3", "--functional", s(&f), "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hilbert_prints_profile() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", TWO_POWERS);
    let o = cactus(&["hilbert", "--model", "twisted-binary:c=1", "--functional", s(&f), "--bidegree", "5,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("bidegree (5,1)\n1 2\n2 2\n"), "{out}");
    assert!(out.ends_with("symmetric true\n"), "{out}");
}

#[test]
fn malformed_functional_names_the_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "[\n  {\"x\":[6,0],\"y\":[],\"c\":\"1\"},\n  {\"x\":[6],\"y\":[],\"c\":\"1\"}\n]\n");
    let o = cactus(&["rank", "--model", "twisted-binary:c=1", "--functional", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("bad.json"), "{err}");
}

#[test]
fn missing_file_and_unknown_flag_exit_two() {
    let o = cactus(&["rank", "--model", "twisted-binary:c=1", "--functional", "/nonexistent/p.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/p.json"));

    let o = cactus(&["rank", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cactus(&["decompose", "--model", "single-projective:n=1", "--functional", "x", "--r", "1", "--d", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cone_split_on_the_ray() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "cone.txt", "1\n1\n1\n1\n");
    let o = cactus(&["cone-split", "--cone", s(&cone), "--r", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "d 4\nk 2\nlambda 17\nD1 3\nD2 5\nDelta1 2\n");

    let o = cactus(&["cone-split", "--cone", s(&cone), "--r", "2", "--class", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_over_f3_is_clean_and_deterministic() {
    let args = ["sweep", "--field", "fp:3", "--r", "2", "--c", "1", "--d", "5", "--k", "3"];
    let a = cactus(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let out = stdout(&a);
    assert!(out.contains("points 1093\n"), "{out}");
    assert!(out.contains("disagreements 0\n"), "{out}");
    assert!(stderr(&a).starts_with("runtime_ms "));
    let b = cactus(&[&args[..], &["--jobs", "3"][..]].concat());
    assert_eq!(out, stdout(&b));

    let o = cactus(&[&args[..], &["--budget", "10"][..]].concat());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_props_samples_and_files() {
    let model = ["--model", "ambient-product:n1=1,n2=1", "--field", "fp:101"];
    let run = |extra: &[&str]| cactus(&[&["check-props"][..], &model[..], extra].concat());
    let a = run(&["--samples", "10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert!(stdout(&a).ends_with("samples 10\nfailures 0\n"));
    assert_eq!(stdout(&a), stdout(&run(&["--samples", "10", "--seed", "7"])));

    let dir = TempDir::new().unwrap();
    let pts = write(&dir, "pts.txt", "1 0 | 1 0\n0 1 | 1 1\n1 1 | 0 1\n");
    let o = run(&["--points", s(&pts), "--window", "3,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("degree 3\n"), "{}", stdout(&o));
}
