use std::path::PathBuf;

use qhopf_cli::{run, Outcome};
use serde_json::Value;

fn qhopf(args: &[&str]) -> Outcome {
    run(std::iter::once("qhopf").chain(args.iter().copied()))
}

fn certs(o: &Outcome) -> &serde_json::Map<String, Value> {
    &o.report.as_ref().expect("a report").certificates
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qhopf-cli-{}-{name}", std::process::id()))
}

#[test]
fn classify_standard_pair_is_genuine_subalgebra() {
    let o = qhopf(&["classify", "--m", "4", "--n", "4", "--l1", "1", "--l2", "2", "--abc", "0,1,1", "--sigma", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(certs(&o)["case"], "(ii)");
    assert_eq!(certs(&o)["genuine"], true);
}

#[test]
fn classify_without_twist_is_the_hopf_algebra() {
    let o = qhopf(&["classify", "--m", "4", "--n", "4", "--l1", "1", "--l2", "2", "--sigma", "1"]);
    assert_eq!(o.code, 0);
    assert_eq!(certs(&o)["case"], "(i)");
    assert_eq!(certs(&o)["dim"], 256);
}

#[test]
fn check_dj_passes() {
    let o = qhopf(&["twist", "check-dj", "--mm", "2", "--nn", "2", "--abc", "1,0,1"]);
    assert_eq!(o.code, 0);
    assert!(o.report.unwrap().passed());
}

#[test]
fn covering_quiver_on_klein_group() {
    let o = qhopf(&["quiver", "covering", "--group", "2x2", "--weights", "(1,0);(0,1)"]);
    assert_eq!(o.code, 0);
    assert_eq!(certs(&o)["vertices"], 4);
    assert_eq!(certs(&o)["arrows"], 8);
}

#[test]
fn json_file_supplies_missing_flags() {
    let o = qhopf(&["classify", "--json", &data("classify.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(certs(&o)["case"], "(ii)");
    // an explicit flag overrides the file
    let o = qhopf(&["classify", "--json", &data("classify.json"), "--abc", "1,1,1"]);
    assert_eq!(o.code, 0);
    assert_eq!(certs(&o)["case"], "none");

    let o = qhopf(&["quiver", "covering", "--json", &data("covering.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(certs(&o)["arrows"], 8);
}

#[test]
fn malformed_json_is_a_usage_error_with_location() {
    let o = qhopf(&["classify", "--json", &data("malformed.json")]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qhopf(&["frobnicate"]).code, 2);
    assert_eq!(qhopf(&["classify", "--m", "4"]).code, 2);
    // m must be a square for the standard pair
    assert_eq!(qhopf(&["classify", "--m", "2", "--n", "4", "--l1", "1", "--l2", "1", "--abc", "0,0,0"]).code, 2);
    assert_eq!(qhopf(&["quiver", "covering", "--group", "2x2", "--weights", "(3,0)"]).code, 2);
    assert_eq!(qhopf(&["decompose-generators", "--m", "2", "--n", "4", "--g", "(1,0)", "--h", "(1,0)"]).code, 2);
}

#[test]
fn help_exits_zero() {
    let o = qhopf(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("construct-hopf"));
}

#[test]
fn failing_verification_exits_one() {
    // A(H,J) is not closed here, so the Gabriel quiver of A is undefined
    let o = qhopf(&["quiver", "gabriel", "--m", "4", "--n", "4", "--l1", "1", "--l2", "2", "--sigma", "1", "--abc", "1,1,1"]);
    assert_eq!(o.code, 1);
    assert!(o.report.unwrap().failures().any(|c| c.name == "closed" && c.witness.is_some()));
}

#[test]
fn out_and_dot_files_are_written() {
    let (out, dot) = (scratch("report.json"), scratch("q.dot"));
    let o = qhopf(&[
        "quiver", "gabriel", "--m", "2", "--n", "2", "--l1", "1", "--l2", "1", "--sigma", "1",
        "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["certificates"]["rep_type_number"], 2);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 8);
    let _ = std::fs::remove_file(out);
    let _ = std::fs::remove_file(dot);
}

#[test]
fn canonical_output_is_byte_identical() {
    let args = ["twist", "build", "--mm", "2", "--nn", "2", "--abc", "1,1,1", "--canonical"];
    let (a, b) = (qhopf(&args), qhopf(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("timing_ms"));
}

#[test]
fn twist_build_dumps_exact_scalars() {
    let o = qhopf(&["twist", "build", "--mm", "2", "--nn", "2", "--abc", "0,1,1"]);
    assert_eq!(o.code, 0);
    let j = &certs(&o)["J"];
    assert_eq!(j["rank"], 2);
    let entries = j["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 256);
    // J is normalized: the trivial character pairs to 1
    assert_eq!(entries[0], serde_json::json!([[0, 0], "1"]));
    assert!(entries.iter().all(|e| e[1].as_str().unwrap().starts_with('1') || e[1].as_str().unwrap().contains('ζ') || e[1].as_str().unwrap().starts_with('-')));
}

#[test]
fn cocycle_commands() {
    let o = qhopf(&["cocycle", "check", "--group", "2x2", "--a", "1,1", "--aij", "1"]);
    assert_eq!(o.code, 0);
    let o = qhopf(&["cocycle", "coboundary", "--group", "2x2", "--aij", "1"]);
    assert_eq!(certs(&o)["coboundary"], false);
    let o = qhopf(&["cocycle", "coboundary", "--group", "2x2"]);
    assert_eq!(certs(&o)["coboundary"], true);
    // out-of-range parameters are refused
    assert_eq!(qhopf(&["cocycle", "check", "--group", "2x2", "--a", "2,0"]).code, 2);
    let o = qhopf(&["cocycle", "pullback", "--source", "4x4", "--group", "2x2", "--aij", "1"]);
    assert_eq!(o.code, 0);
    assert_eq!(certs(&o)["pullback_coboundary"], true);
}

#[test]
fn construct_and_apply() {
    let o = qhopf(&["construct-hopf", "--m", "2", "--n", "4", "--l1", "1", "--l2", "2", "--g", "(1,0)", "--h", "(0,1)", "--verify", "full"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = qhopf(&["twist", "apply", "--m", "4", "--n", "4", "--l1", "1", "--l2", "2", "--sigma", "1", "--abc", "0,1,1"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.report.unwrap().checks.len(), 14);
}

#[test]
fn decompose_generators_reverifies() {
    let o = qhopf(&["decompose-generators", "--m", "2", "--n", "4", "--g", "(1,1)", "--h", "(1,2)"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(certs(&o)["decomposition"]["witness"].is_object());
}

#[test]
fn threads_flag_is_accepted() {
    let o = qhopf(&["sweep", "--kind", "genuineness", "--threads", "1"]);
    assert_eq!(o.code, 0);
    assert_eq!(qhopf(&["sweep", "--kind", "genuineness", "--threads", "0"]).code, 2);
}
