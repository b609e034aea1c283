use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpus/{name}.doc"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refbetti")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const THETA: &str = "vertices 5\n\
    simplex 0\nsimplex 1\nsimplex 2\nsimplex 3\nsimplex 4\n\
    simplex 0 2\nsimplex 1 2\nsimplex 0 3\nsimplex 1 3\nsimplex 0 4\nsimplex 1 4\n\
    values 1 2 4 3 0\n";

#[test]
fn compute_circle() {
    let o = run(&["compute", path(&corpus("circle")), "--field", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "field Q\ndegree 0 mass 1\npoint 0 2 1\ndegree 1 mass 1\npoint 2 0 1\n");
}

#[test]
fn compute_over_gf2_with_representatives() {
    let o = run(&["compute", path(&corpus("circle")), "--p", "2", "--reps"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("field GF 2\n"));
    assert!(stdout(&o).contains("rep 2 0 1\n"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["compute", "--reps", "--ortho"],
        vec!["poly"],
        vec!["plot"],
        vec!["perturb", "--seed", "5"],
        vec!["verify", "--check", "stability", "--trials", "5", "--seed", "3"],
    ] {
        let wedge = corpus("wedge");
        let mut full = args.clone();
        full.insert(1, path(&wedge));
        let (a, b) = (run(&full), run(&full));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn compute_then_distance_round_trip() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.cfg");
    let b = dir.path().join("b.cfg");
    assert!(run(&["compute", path(&corpus("torus")), "-o", path(&a)]).status.success());
    assert!(run(&["compute", path(&corpus("torus")), "--function", "1", "-o", path(&b)]).status.success());
    let same = run(&["distance", path(&a), path(&a)]);
    assert_eq!(same.status.code(), Some(0));
    assert!(stdout(&same).ends_with("distance 0\n"));
    let other = run(&["distance", path(&a), path(&b)]);
    assert_eq!(other.status.code(), Some(0));
    assert!(stdout(&other).contains("degree 1 distance "));
}

#[test]
fn distance_with_unequal_masses_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.cfg");
    let b = dir.path().join("b.cfg");
    std::fs::write(&a, "field Q\ndegree 0 mass 1\npoint 0 2 1\n").unwrap();
    std::fs::write(&b, "field Q\ndegree 0 mass 2\npoint 0 2 2\n").unwrap();
    let o = run(&["distance", path(&a), path(&b)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("different total mass"));
}

#[test]
fn verify_duality_on_torus() {
    let o = run(&["verify", path(&corpus("torus")), "--check", "duality"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS duality"));
}

#[test]
fn verify_standard_checks_on_circle() {
    let o = run(&["verify", path(&corpus("circle")), "--trials", "10", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let passes = stdout(&o).lines().filter(|l| l.starts_with("PASS ")).count();
    assert_eq!(passes, 7);
}

#[test]
fn failing_check_exits_one_with_witness() {
    let dir = TempDir::new().unwrap();
    let theta = dir.path().join("theta.doc");
    std::fs::write(&theta, THETA).unwrap();
    let o = run(&["verify", path(&theta), "--check", "orthogonality"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL orthogonality: degree 1: subspaces at (3, 0) and (4, 1)"));
}

#[test]
fn input_errors_exit_two() {
    let circle = corpus("circle");
    assert_eq!(run(&["compute", path(&circle), "--field", "GF", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["compute", path(&circle), "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "/nonexistent.doc"]).status.code(), Some(2));
    assert_eq!(run(&["compute", path(&circle), "--p", "2", "--ortho"]).status.code(), Some(2));
    assert_eq!(run(&["verify", path(&corpus("interval")), "--check", "duality"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", path(&circle), "--check", "local-stability", "--eps", "1/2"]).status.code(),
        Some(2)
    );
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.doc");
    std::fs::write(&bad, "vertices 2\nsimplex 0\nsimplex 0 5\nvalues 0 1\n").unwrap();
    let o = run(&["compute", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3: vertex 5 out of range"));
}

#[test]
fn plot_writes_svg_and_csv() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("c.svg");
    let csv = dir.path().join("c.csv");
    let o = run(&["plot", path(&corpus("circle")), "--svg", path(&svg), "--csv", path(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(svg).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("id=\"diagonal\""));
    assert_eq!(svg.matches("<circle").count(), 1);
    assert_eq!(svg.matches("class=\"below\"").count(), 1);
    assert_eq!(std::fs::read_to_string(csv).unwrap(), "degree,a,b,multiplicity\n0,0,2,1\n1,2,0,1\n");
}

#[test]
fn perturb_emits_a_readable_document() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.doc");
    let o = run(&["perturb", path(&corpus("sphere")), "--eps", "1/10", "--seed", "9", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let c = run(&["compute", path(&out)]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("degree 2 mass 1"));
    let d = run(&["perturb", path(&corpus("circle")), "--function", "1", "--distinct", "-o", path(&out)]);
    assert_eq!(d.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let values: Vec<&str> = text.lines().find(|l| l.starts_with("values")).unwrap().split_whitespace().skip(1).collect();
    let mut dedup = values.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), 3);
}
