//! Browser bindings: each export takes plain numbers or strings and returns a
//! JSON report, or `{"error": ...}` when the input is refused.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qhopf::groupalg::{associator_counit_holds, associator_phi, pentagon_failure, twist_coboundary, twist_j};
use qhopf::hopf::{HopfAlgebra, HopfParams, VerifyMode};
use qhopf::quasihopf::{classify, Case};
use qhopf::report::Check;

/// Above this dimension the browser only checks the axioms on generators.
pub const BROWSER_FULL_LIMIT: usize = 64;

fn checks(cs: &[Check]) -> Value {
    json!(cs)
}

fn render(r: qhopf::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

pub fn hopf_report(m: u32, n: u32, l1: u32, l2: u32, sigma: u32) -> qhopf::Result<Value> {
    let p = HopfParams::new(m, n, l1, l2, &[1, sigma], &[0, 1]);
    let h = HopfAlgebra::build(&p)?;
    let mode = if h.dimension() <= BROWSER_FULL_LIMIT { VerifyMode::Full } else { VerifyMode::Generators };
    let mut cs = h.verify_hopf(mode)?;
    cs.extend(h.distinguished_relations()?);
    let (x, y) = h.distinguished_elements()?;
    Ok(json!({
        "dimension": h.dimension(),
        "derived": p.derive()?,
        "mode": format!("{mode:?}").to_lowercase(),
        "passed": cs.iter().all(|c| c.passed),
        "checks": checks(&cs),
        "X": h.format_element(&x),
        "Y": h.format_element(&y),
    }))
}

pub fn twist_report(mm: u32, nn: u32, a: u32, b: u32, c: u32) -> qhopf::Result<Value> {
    let (_, j) = twist_j(mm, nn, a, b, c)?;
    let (chars, phi) = associator_phi(mm, nn, a, b, c)?;
    let dj = twist_coboundary(&j)?;
    let mut cs = Vec::new();
    cs.push(match dj.first_difference(&phi)? {
        None => Check::pass("d(J)=Phi", format!("{} character triples", dj.exps.len())),
        Some(k) => Check::fail("d(J)=Phi", "values differ", format!("characters {k:?}")),
    });
    cs.push(match pentagon_failure(&phi)? {
        None => Check::pass("pentagon", format!("{} identities", chars.group.order().pow(4))),
        Some(k) => Check::fail("pentagon", "identity fails", format!("characters {k:?}")),
    });
    cs.push(Check::from_bool("associator_counit", associator_counit_holds(&phi)?, "(id⊗ε⊗id)(Φ) = 1"));
    Ok(json!({
        "group": chars.group.factors(),
        "passed": cs.iter().all(|c| c.passed),
        "checks": checks(&cs),
    }))
}

pub fn classify_report(m: u32, n: u32, l1: u32, l2: u32, sigma: u32, abc: Option<(u32, u32, u32)>) -> qhopf::Result<Value> {
    let c = classify(m, n, sigma, l1, l2, abc)?;
    let case = match c.case {
        Case::Hopf => "(i)",
        Case::Subalgebra => "(ii)",
        Case::NotClosed => "none",
    };
    Ok(json!({
        "case": case,
        "family": c.case,
        "genuine": c.genuine,
        "dim": c.dim,
        "detail": checks(&c.detail),
    }))
}

#[wasm_bindgen]
pub fn construct_hopf(m: u32, n: u32, l1: u32, l2: u32, sigma: u32) -> String {
    render(hopf_report(m, n, l1, l2, sigma))
}

#[wasm_bindgen]
pub fn check_twist(mm: u32, nn: u32, a: u32, b: u32, c: u32) -> String {
    render(twist_report(mm, nn, a, b, c))
}

/// `twisted = false` classifies `H` itself and ignores `a, b, c`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn classify_instance(m: u32, n: u32, l1: u32, l2: u32, sigma: u32, twisted: bool, a: u32, b: u32, c: u32) -> String {
    render(classify_report(m, n, l1, l2, sigma, twisted.then_some((a, b, c))))
}
