use qhopf_web::{check_twist, classify_instance, construct_hopf};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("bindings return JSON")
}

#[test]
fn hopf_instance_passes_in_full_mode() {
    let v = parse(construct_hopf(2, 2, 1, 1, 1));
    assert_eq!(v["dimension"], 16);
    assert_eq!(v["mode"], "full");
    assert_eq!(v["passed"], true);
}

#[test]
fn large_instances_fall_back_to_generators() {
    let v = parse(construct_hopf(4, 4, 1, 2, 1));
    assert_eq!(v["dimension"], 256);
    assert_eq!(v["mode"], "generators");
    assert_eq!(v["passed"], true);
}

#[test]
fn twist_checks_pass() {
    let v = parse(check_twist(2, 2, 1, 1, 1));
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_cases() {
    assert_eq!(parse(classify_instance(4, 4, 1, 2, 1, true, 0, 1, 1))["case"], "(ii)");
    assert_eq!(parse(classify_instance(4, 4, 1, 2, 1, true, 0, 1, 1))["genuine"], true);
    assert_eq!(parse(classify_instance(4, 4, 1, 2, 1, true, 1, 1, 1))["case"], "none");
    assert_eq!(parse(classify_instance(4, 4, 1, 2, 1, false, 0, 0, 0))["case"], "(i)");
}

#[test]
fn refused_input_reports_an_error() {
    let v = parse(construct_hopf(3, 5, 1, 1, 1));
    assert!(v["error"].is_string());
    let v = parse(classify_instance(2, 4, 1, 1, 0, true, 0, 0, 0));
    assert!(v["error"].as_str().unwrap().contains("square"));
}
