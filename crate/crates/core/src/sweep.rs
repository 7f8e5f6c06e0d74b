//! Batch verifications over whole parameter ranges, each producing a
//! deterministic report.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::abgroup::{aut_enumerate, generating_pairs, standard_decompose, AbelianGroup};
use crate::cohomology::{check_3cocycle, small_groups, Cochain, CoboundarySolver, CocycleParams, DEFAULT_COBOUNDARY_BUDGET};
use crate::error::Result;
use crate::groupalg::{associator_phi, pentagon_failure, twist_coboundary, twist_j};
use crate::hopf::{enumerate_params, Fixture, HopfAlgebra, HopfParams, VerifyMode};
use crate::quasihopf::{closure_sweep, general_congruences, general_spec, omega_0bc_is_coboundary, standard_pair_congruences, standard_pair_spec, standard_pair_tuples, IdemAlgebra, Pairing, TwistedInstance};
use crate::quiver::{covering_quiver, degree_one_weights, find_isomorphism, gabriel_quiver, rep_type_number, VertexMap};
use crate::report::{Check, Report};

#[cfg(feature = "parallel")]
fn pmap<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn pmap<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

fn finish(mut r: Report, start: Instant) -> Report {
    r.timing_ms = Some(start.elapsed().as_millis() as u64);
    r
}

fn describe(p: &HopfParams) -> String {
    format!("H({},{},{},{},g={:?},h={:?})", p.m, p.n, p.l1, p.l2, p.g, p.h)
}

/// Every representative `ω_𝐚` on every group of order ≤ `max_order` with at most
/// three factors satisfies the 3-cocycle identity; on groups of order ≤
/// `distinct_order`, listed largest factor first, distinct parameters give
/// distinct classes.
pub fn cocycle_completeness(max_order: usize, distinct_order: usize) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("cocycle completeness |G| <= {max_order}, distinct classes |G| <= {distinct_order}"));
    let groups = small_groups(max_order, 3);
    let per_group: Vec<Result<(String, usize, Option<String>)>> = pmap(&groups, |g| {
        let params = CocycleParams::enumerate(g)?;
        for p in &params {
            let w = Cochain::of_params(p, g)?;
            if let Some(f) = check_3cocycle(&w, max_order)? {
                return Ok((format!("{:?}", g.factors()), params.len(), Some(format!("{p:?}: {f:?}"))));
            }
        }
        Ok((format!("{:?}", g.factors()), params.len(), None))
    });
    let mut total = 0;
    let mut first_bad = None;
    let mut table = Vec::new();
    for x in per_group {
        let (name, count, bad) = x?;
        total += count;
        table.push((name.clone(), count));
        if first_bad.is_none() {
            first_bad = bad.map(|b| format!("{name} {b}"));
        }
    }
    r.push(match first_bad {
        None => Check::pass("cocycle_identity", format!("{total} representatives on {} groups", groups.len())),
        Some(w) => Check::fail("cocycle_identity", "representative fails the 3-cocycle identity", w),
    });
    r.certify("representatives_per_group", table);

    let small: Vec<AbelianGroup> = groups
        .iter()
        .filter(|g| g.order() <= distinct_order && g.order() > 1)
        .map(|g| AbelianGroup::new(g.factors().iter().rev().copied().collect()))
        .collect::<Result<_>>()?;
    let mut pairs_checked = 0usize;
    let mut bad = None;
    for g in &small {
        let params = CocycleParams::enumerate(g)?;
        let solver = CoboundarySolver::new(g, g.exponent(), DEFAULT_COBOUNDARY_BUDGET)?;
        let cochains: Vec<Cochain> = params.iter().map(|p| Cochain::of_params(p, g)).collect::<Result<_>>()?;
        let idx: Vec<usize> = (0..cochains.len()).collect();
        let results: Vec<Result<Option<String>>> = pmap(&idx, |&i| {
            for j in i + 1..cochains.len() {
                let quotient = cochains[i].mul(&cochains[j].inverse())?;
                if solver.solve(&quotient)?.is_some() {
                    return Ok(Some(format!("{:?}: {:?} ~ {:?}", g.factors(), params[i], params[j])));
                }
            }
            Ok(None)
        });
        for x in results {
            if let (None, Some(w)) = (&bad, x?) {
                bad = Some(w);
            }
        }
        pairs_checked += cochains.len() * (cochains.len() - 1) / 2;
    }
    r.push(match bad {
        None => Check::pass("pairwise_non_cohomologous", format!("{pairs_checked} pairs on {} groups", small.len())),
        Some(w) => Check::fail("pairwise_non_cohomologous", "two representatives differ by a coboundary", w),
    });
    Ok(finish(r, start))
}

/// `d(J_{a,b,c}) = Φ_{a,b,c}` for every parameter triple at the given sizes.
pub fn twist_coboundary_check(sizes: &[(u32, u32)]) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new("twist coboundary equals associator");
    for &(mm, nn) in sizes {
        let d = crate::cyclo::gcd(mm as u64, nn as u64) as u32;
        for a in 0..mm {
            for b in 0..d {
                for c in 0..nn {
                    let (_, j) = twist_j(mm, nn, a, b, c)?;
                    let (_, phi) = associator_phi(mm, nn, a, b, c)?;
                    let dj = twist_coboundary(&j)?;
                    let name = format!("d(J)=Phi mm={mm} nn={nn} abc={a}{b}{c}");
                    r.push(match dj.first_difference(&phi)? {
                        None => Check::pass(name, format!("{} character triples", dj.exps.len())),
                        Some(k) => Check::fail(name, "values differ", format!("characters {k:?}")),
                    });
                }
            }
        }
    }
    Ok(finish(r, start))
}

/// The pentagon identity for every `Φ_{a,b,c}` at `𝕞 = mm`, `𝕟 = nn`.
pub fn pentagon_check(mm: u32, nn: u32) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("pentagon mm={mm} nn={nn}"));
    let d = crate::cyclo::gcd(mm as u64, nn as u64) as u32;
    for a in 0..mm {
        for b in 0..d {
            for c in 0..nn {
                let (chars, phi) = associator_phi(mm, nn, a, b, c)?;
                let name = format!("pentagon abc={a}{b}{c}");
                r.push(match pentagon_failure(&phi)? {
                    None => Check::pass(name, format!("{} identities", chars.group.order().pow(4))),
                    Some(k) => Check::fail(name, "identity fails", format!("characters {k:?}")),
                });
            }
        }
    }
    Ok(finish(r, start))
}

/// Full-basis Hopf axioms on every valid `H` with `m, n` from `sizes`, and the
/// negative-control fixtures on the first instance.
pub fn hopf_axiom_sweep(sizes: &[u32]) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("hopf axioms m,n in {sizes:?}"));
    let params = enumerate_params(sizes);
    let results: Vec<Result<(usize, Vec<Check>)>> = pmap(&params, |p| {
        let h = HopfAlgebra::build(p)?;
        Ok((h.dimension(), h.verify_hopf(VerifyMode::Full)?))
    });
    let mut max_dim = 0;
    let mut bad = None;
    for (p, x) in params.iter().zip(results) {
        let (dim, checks) = x?;
        max_dim = max_dim.max(dim);
        if bad.is_none() {
            if let Some(c) = checks.iter().find(|c| !c.passed) {
                bad = Some(format!("{} {}: {}", describe(p), c.name, c.detail));
            }
        }
    }
    r.push(match bad {
        None => Check::pass("hopf_axioms", format!("{} instances, largest dimension {max_dim}", params.len())),
        Some(w) => Check::fail("hopf_axioms", "an axiom fails", w),
    });
    r.certify("instances", params.len());
    if let Some(p) = params.first() {
        for (fixture, axiom) in [(Fixture::MisSignedAntipodeX, "antipode"), (Fixture::TrivialSkewX, "relations"), (Fixture::CounitOneX, "counit")] {
            let h = HopfAlgebra::build_with(p, fixture, false)?;
            let failed: Vec<String> = h.verify_hopf(VerifyMode::Full)?.into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
            r.push(Check::from_bool(format!("negative_control {fixture:?}"), !failed.is_empty(), format!("expected a {axiom} failure; failing: {failed:?}")));
        }
    }
    Ok(finish(r, start))
}

/// The standard-pair closure sweep against the congruences, with genuineness.
pub fn closure_report(m: u32, n: u32) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("subalgebra closure sweep m={m} n={n}"));
    let rows = closure_sweep(m, n)?;
    let disagree: Vec<_> = rows.iter().filter(|x| x.direct != x.predicted).collect();
    let closed = rows.iter().filter(|x| x.direct).count();
    r.push(match disagree.first() {
        None => Check::pass("closure_matches_congruences", format!("{} tuples, {closed} closed", rows.len())),
        Some(x) => Check::fail(
            "closure_matches_congruences",
            format!("{} of {} tuples disagree", disagree.len(), rows.len()),
            format!("σ={} l1={} l2={} abc={}{}{} direct={} predicted={}", x.sigma, x.l1, x.l2, x.a, x.b, x.c, x.direct, x.predicted),
        ),
    });
    let genuine_ok = rows.iter().filter(|x| x.direct).all(|x| x.genuine == Some((x.b, x.c) != (0, 0)));
    r.push(Check::from_bool("genuine_iff_bc_nonzero", genuine_ok, "closed instances, (b,c) = (0,0) exactly when the associator is a coboundary"));
    r.certify("rows", &rows);
    Ok(finish(r, start))
}

/// `ω_{0,b,c}` on `ℤ₂ × ℤ₂` is a coboundary iff `(b, c) = (0, 0)`.
pub fn genuineness_check() -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new("genuineness on Z2 x Z2");
    for (b, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let cob = omega_0bc_is_coboundary(2, 2, b, c)?;
        r.push(Check::from_bool(format!("omega_0{b}{c}"), cob == ((b, c) == (0, 0)), if cob { "coboundary" } else { "not a coboundary" }));
    }
    Ok(finish(r, start))
}

#[derive(Serialize)]
struct DecompositionRow {
    m: u32,
    n: u32,
    pairs: usize,
    automorphisms: usize,
}

/// Standard decomposition of every generating pair of `ℤ_m × ℤ_n`, `m | n`,
/// `mn ≤ max_order`, re-verified, with the witness found in a brute-force
/// enumeration of `Aut(G)`.
pub fn decomposition_check(max_order: u32) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("standard decomposition mn <= {max_order}"));
    let mut groups = Vec::new();
    for m in 1..=max_order {
        for n in (m..=max_order).step_by(m as usize) {
            if m * n <= max_order {
                groups.push((m, n));
            }
        }
    }
    let results: Vec<Result<(DecompositionRow, Option<String>)>> = pmap(&groups, |&(m, n)| {
        let g = AbelianGroup::zm_zn(m, n)?;
        let auts = aut_enumerate(&g, max_order as usize)?;
        let pairs = generating_pairs(&g);
        let mut bad = None;
        for (x, h) in &pairs {
            let outcome = standard_decompose(&g, x, h).and_then(|d| {
                d.verify(&g, x, h)?;
                if !auts.iter().any(|s| s.images == d.witness.images) {
                    return Err(crate::Error::Inconsistent("witness is not among the enumerated automorphisms".into()));
                }
                Ok(())
            });
            if let (None, Err(e)) = (&bad, outcome) {
                bad = Some(format!("Z{m}xZ{n} g={x} h={h}: {e}"));
            }
        }
        Ok((DecompositionRow { m, n, pairs: pairs.len(), automorphisms: auts.len() }, bad))
    });
    let mut rows = Vec::new();
    let mut bad = None;
    for x in results {
        let (row, b) = x?;
        rows.push(row);
        if bad.is_none() {
            bad = b;
        }
    }
    let total: usize = rows.iter().map(|x| x.pairs).sum();
    r.push(match bad {
        None => Check::pass("standard_decomposition", format!("{total} generating pairs on {} groups", rows.len())),
        Some(w) => Check::fail("standard_decomposition", "decomposition failed", w),
    });
    r.certify("groups", rows);
    Ok(finish(r, start))
}

fn quiver_verdict(alg: &IdemAlgebra, inst: Option<&TwistedInstance>) -> Result<std::result::Result<(), String>> {
    let (sub, vm) = match inst {
        Some(i) => (Some(&i.sub), i.vertex_map()?),
        None => (None, VertexMap::characters(&alg.chars)),
    };
    let q = gabriel_quiver(alg, sub, &vm)?;
    let cover = covering_quiver(&vm.group, &degree_one_weights(alg, sub, &vm))?;
    if find_isomorphism(&q, &cover).is_none() {
        return Ok(Err("Gabriel quiver is not isomorphic to the covering quiver".into()));
    }
    match rep_type_number(&q) {
        Ok(2) => Ok(Ok(())),
        Ok(k) => Ok(Err(format!("representation type number {k}"))),
        Err(e) => Ok(Err(e.to_string())),
    }
}

/// Gabriel quivers of every `H` with `m, n ∈ sizes` and of every closed
/// `A(H,J)` among them are covering quivers with representation type number 2.
pub fn quiver_check(sizes: &[u32]) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("quivers m,n in {sizes:?}"));
    let params = enumerate_params(sizes);
    let results: Vec<Result<Option<String>>> = pmap(&params, |p| {
        let alg = IdemAlgebra::new(Arc::new(HopfAlgebra::build(p)?))?;
        Ok(quiver_verdict(&alg, None)?.err().map(|e| format!("{}: {e}", describe(p))))
    });
    let bad = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().next();
    r.push(match bad {
        None => Check::pass("hopf_quivers", format!("{} instances", params.len())),
        Some(w) => Check::fail("hopf_quivers", "quiver check failed", w),
    });

    // closed standard-pair subalgebras
    let mut specs = Vec::new();
    for &m in sizes {
        let Some(mm) = crate::quasihopf::exact_sqrt(m) else { continue };
        if m % 2 != 0 {
            continue;
        }
        for (sigma, l1, l2, abc) in standard_pair_tuples(m, m)? {
            if standard_pair_congruences(mm, mm, sigma, l1, l2, abc).iter().all(|c| c.passed) {
                specs.push(standard_pair_spec(m, m, sigma, l1, l2, abc)?);
            }
        }
    }
    let standard = specs.len();
    // closed subalgebras through the general decomposition
    for p in &params {
        let Ok((spec0, d)) = general_spec(p, (0, 0, 0), (0, 0, 0)) else { continue };
        let (q1, q2) = (&spec0.parts[0], &spec0.parts[1]);
        for a1 in 0..q1.mm1 {
            for b1 in 0..q1.mm1.min(q1.mm2) {
                for c1 in 0..q1.mm2 {
                    for a2 in 0..q2.mm1 {
                        for b2 in 0..q2.mm1.min(q2.mm2) {
                            for c2 in 0..q2.mm2 {
                                let (abc1, abc2) = ((a1, b1, c1), (a2, b2, c2));
                                if general_congruences(&d, p.l1, p.l2, abc1, abc2, Pairing::AsStated).iter().all(|c| c.passed) {
                                    specs.push(general_spec(p, abc1, abc2)?.0);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let results: Vec<Result<Option<String>>> = pmap(&specs, |spec| {
        let inst = TwistedInstance::build(spec)?;
        let label = format!("{} parts {:?}", describe(&spec.params), spec.parts.iter().map(|p| (p.a, p.b, p.c)).collect::<Vec<_>>());
        if !inst.direct_closure()?.closed {
            return Ok(Some(format!("{label}: not closed")));
        }
        Ok(quiver_verdict(&inst.structure.alg, Some(&inst))?.err().map(|e| format!("{label}: {e}")))
    });
    let bad = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().next();
    r.push(match bad {
        None => Check::pass("subalgebra_quivers", format!("{} closed subalgebras ({standard} standard-pair, {} general)", specs.len(), specs.len() - standard)),
        Some(w) => Check::fail("subalgebra_quivers", "quiver check failed", w),
    });
    Ok(finish(r, start))
}

/// `X² = 0`, `Y² = 0`, `(XY)^l + (−q₂⁻¹)^l(YX)^l = 0` and the defining
/// relations by rewriting, on every `H` of the sweep.
pub fn relation_check(sizes: &[u32]) -> Result<Report> {
    let start = Instant::now();
    let mut r = Report::new(format!("distinguished relations m,n in {sizes:?}"));
    let params = enumerate_params(sizes);
    let results: Vec<Result<Option<String>>> = pmap(&params, |p| {
        let h = HopfAlgebra::build(p)?;
        Ok(h.distinguished_relations()?.into_iter().find(|c| !c.passed).map(|c| format!("{}: {} {}", describe(p), c.name, c.detail)))
    });
    let bad = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().next();
    r.push(match bad {
        None => Check::pass("distinguished_relations", format!("{} instances", params.len())),
        Some(w) => Check::fail("distinguished_relations", "a relation fails", w),
    });
    Ok(finish(r, start))
}
