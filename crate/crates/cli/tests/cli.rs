use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ulrich-forge"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(args: &[&str]) -> (Output, serde_json::Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = run(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| "null".into());
    (out, serde_json::from_str(&text).unwrap())
}

#[test]
fn normal_form_prints_y_squared() {
    let o = run(&["groebner", "--ideal", "(x*y, x^2-y^2)", "--nf", "x^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "y^2");
}

#[test]
fn groebner_queries() {
    let o = run(&["groebner", "--ideal", "(x*y, x^2-y^2)", "--colength"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = run(&["groebner", "--ideal", "(x^2, x*y)", "--colength"]);
    assert_eq!(stdout(&o).trim(), "infinite");
    let o = run(&[
        "groebner", "--ideal", "(x, y)^2", "--equal", "(x^2, x*y, y^2)", "--expect", "EQUAL",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_35_matches_golden_json() {
    let (o, got) = json_of(&["verify-35", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("verify35_n2.json")).unwrap()).unwrap();
    assert_eq!(got, golden);
    assert_eq!(got["schema"], 1);
    assert_eq!(got["verdict"], "NO_ULRICH");
}

#[test]
fn verify_35_json_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        run(&["verify-35", "--n", "3", "--json", p.to_str().unwrap()]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verify_35_precondition_and_expect_flags() {
    let o = run(&["verify-35", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("PRECONDITION_FAILED"));
    let o = run(&["verify-35", "--n", "2", "--expect", "ULRICH_EXISTS"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify-35", "--n", "3", "--field", "fp:32003", "--expect", "NO_ULRICH"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_51_ring_files() {
    let cases = [
        ("pinched2.ring", "NO_ULRICH", 0),
        ("pinched3.ring", "NO_ULRICH", 0),
        ("plane.ring", "ULRICH_EXISTS", 0),
        ("veronese.ring", "REFUSED", 1),
    ];
    for (file, verdict, code) in cases {
        let path = data(file);
        let (o, j) = json_of(&["verify-51", "--ring", path.to_str().unwrap()]);
        assert_eq!(j["verdict"], verdict, "{file}");
        assert_eq!(o.status.code(), Some(code), "{file}");
    }
}

#[test]
fn verify_37_reports_the_localized_subreport() {
    let (o, j) = json_of(&["verify-37", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(j["verdict"], "LOCALIZES_TO_NO_ULRICH");
    assert_eq!(j["subreports"][0]["verdict"], "NO_ULRICH");
}

#[test]
fn semigroup_queries() {
    let o = run(&["semigroup", "--gens", "pinched:2", "--gaps"]);
    assert_eq!(stdout(&o).trim(), "2 gaps: (1,0) (0,1)");
    let o = run(&["semigroup", "--gens", "sg 2 {(2,0),(3,0),(2,1),(0,2),(0,3),(1,2),(1,1)}", "--multiplicity"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = run(&["semigroup", "--gens", "pinched:2", "--hilbert", "2"]);
    assert_eq!(stdout(&o).trim(), "0 1 8");
    let o = run(&["semigroup", "--gens", "sg 2 {(1,0)}", "--gaps", "--expect", "NOT_FINITE_WITHIN_BOUND"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reduction_certificates() {
    let o = run(&["reduction", "--ideal", "(x*y, x^2-y^2)", "--in", "(x,y)^2", "--expect", "POSITIVE"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["reduction", "--ideal", "(x^2, y^3)", "--in", "(x,y)^2"]);
    assert!(stdout(&o).contains("NEGATIVE_MULTIPLICITY"));
}

#[test]
fn koszul_residue_field() {
    let (o, j) = json_of(&["koszul", "--module", "residue", "--sop", "x,y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!((j["result"]["h0"].as_u64(), j["result"]["h1"].as_u64(), j["result"]["h2"].as_u64()), (Some(1), Some(2), Some(1)));
}

#[test]
fn analyze_freeplus_family() {
    let o = run(&["analyze", "--family", "freeplus ideal=(x,y) growth=n", "--range", "1..10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: LIM_ULRICH_TREND"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["groebner", "--ideal", "(x"]).status.code(), Some(2));
    assert_eq!(run(&["verify-35"]).status.code(), Some(2));
    assert_eq!(run(&["groebner", "--ideal", "(x)", "--nf", "x", "--colength"]).status.code(), Some(2));
    assert_eq!(run(&["verify-35", "--n", "2", "--field", "fp:4"]).status.code(), Some(2));
}

#[test]
fn inconclusive_exits_3() {
    // Too small a reduction-number budget for a true reduction.
    let o = run(&["reduction", "--ideal", "(x^3, y^3)", "--in", "(x^3, x^2*y, x*y^2, y^3)", "--tmax", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}
