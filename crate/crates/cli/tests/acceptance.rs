//! One pass/fail line per acceptance criterion; exits nonzero if any fails.

use std::time::Instant;

use qhopf::report::Report;
use qhopf::sweep;

type Job = (&'static str, fn() -> qhopf::Result<Report>);

fn jobs() -> Vec<Job> {
    vec![
        ("cocycle completeness, |G| <= 16, classes distinct for |G| <= 8", || sweep::cocycle_completeness(16, 8)),
        ("d(J) = Phi at mm=nn=2 and mm=2, nn=3", || sweep::twist_coboundary_check(&[(2, 2), (2, 3)])),
        ("pentagon for every Phi at mm=nn=2", || sweep::pentagon_check(2, 2)),
        ("full-basis Hopf axioms for m,n in {2,4}, negative fixtures fail", || sweep::hopf_axiom_sweep(&[2, 4])),
        ("closure of A(H,J) matches the congruences at m=n=4", || sweep::closure_report(4, 4)),
        ("omega_0bc on Z2 x Z2 is a coboundary iff (b,c) = (0,0)", sweep::genuineness_check),
        ("standard decomposition for mn <= 64, m | n", || sweep::decomposition_check(64)),
        ("Gabriel quivers are covering quivers with type number 2", || sweep::quiver_check(&[2, 4])),
        ("X^2 = Y^2 = 0 and (XY)^l + (-q2^-1)^l (YX)^l = 0", || sweep::relation_check(&[2, 4])),
    ]
}

fn line(k: usize, name: &str, ok: bool, detail: &str, secs: f64) -> bool {
    println!("criterion {k:>2} {}: {name} ({detail}; {secs:.1}s)", if ok { "PASS" } else { "FAIL" });
    ok
}

fn summary(r: &Report) -> String {
    match r.failures().next() {
        None => format!("{} checks, {}", r.checks.len(), r.checks.first().map_or("", |c| c.detail.as_str())),
        Some(c) => format!("{}: {} [{}]", c.name, c.detail, c.witness.as_deref().unwrap_or("")),
    }
}

fn main() {
    let mut all = true;
    let mut first = Vec::new();
    for (k, (name, f)) in jobs().into_iter().enumerate() {
        let start = Instant::now();
        let secs = || start.elapsed().as_secs_f64();
        match f() {
            Ok(r) => {
                all &= line(k + 1, name, r.passed(), &summary(&r), secs());
                first.push(Some(r.canonical_json()));
            }
            Err(e) => {
                all &= line(k + 1, name, false, &format!("error: {e}"), secs());
                first.push(None);
            }
        }
    }

    let start = Instant::now();
    let mut differing = Vec::new();
    for (k, ((_, f), before)) in jobs().into_iter().zip(&first).enumerate() {
        let again = f().ok().map(|r| r.canonical_json());
        if before.is_none() || again != *before {
            differing.push(k + 1);
        }
    }
    let cli = |_: ()| qhopf_cli::run(["qhopf", "sweep", "--kind", "genuineness", "--canonical"]).stdout;
    let cli_same = cli(()) == cli(());
    let detail = if differing.is_empty() && cli_same {
        "all nine sweep reports byte-identical on rerun, CLI output identical".to_string()
    } else {
        format!("reports differ for criteria {differing:?}, CLI identical: {cli_same}")
    };
    all &= line(10, "deterministic reports", differing.is_empty() && cli_same, &detail, start.elapsed().as_secs_f64());

    if !all {
        std::process::exit(1);
    }
}
