use std::sync::Arc;

use proptest::prelude::*;
use qhopf::cyclo::FieldExt;
use qhopf::groupalg::{associator_phi, DiagonalTensor, TwistPart};
use qhopf::hopf::{HopfAlgebra, HopfParams, Mono};
use qhopf::linalg::Subspace;
use qhopf::quasihopf::*;

fn h(m: u32, n: u32, l1: u32, l2: u32, g: &[u32], hh: &[u32]) -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::build(&HopfParams::new(m, n, l1, l2, g, hh)).unwrap())
}

fn passed(checks: &[qhopf::report::Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[test]
fn idempotent_basis_round_trips_products() {
    let hopf = h(4, 4, 1, 2, &[1, 1], &[0, 1]);
    let alg = IdemAlgebra::new(hopf.clone()).unwrap();
    let basis = hopf.basis();
    let mut rng = 0u64;
    for _ in 0..60 {
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = hopf.mono(basis[(rng >> 33) as usize % basis.len()]);
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let b = hopf.mono(basis[(rng >> 33) as usize % basis.len()]);
        let ia = alg.from_element(&a);
        assert_eq!(alg.to_element(&ia).unwrap(), a);
        let prod = alg.mul(&ia, &alg.from_element(&b)).unwrap();
        assert_eq!(alg.to_element(&prod).unwrap(), hopf.mul(&a, &b));
        assert_eq!(alg.to_element(&alg.antipode(&ia).unwrap()).unwrap(), hopf.antipode(&a));
        assert_eq!(alg.counit(&ia), hopf.counit(&a));
        assert_eq!(alg.delta(&ia).unwrap(), alg.from_tensor2(&hopf.delta(&a)));
    }
}

#[test]
fn twist_and_inverse_twist_restore_structure() {
    let hopf = h(4, 4, 1, 2, &[1, 1], &[0, 1]);
    let base = QuasiHopfStructure::from_hopf(hopf.clone()).unwrap();
    let spec = standard_pair_spec(4, 4, 1, 1, 2, (1, 1, 1)).unwrap();
    let j = qhopf::groupalg::twist_from_parts(&base.alg.chars, &spec.parts).unwrap();
    let there = base.twist(&j).unwrap();
    assert!(!there.phi.is_one());
    let back = there.twist(&j.inv()).unwrap();
    assert!(back.j.is_one() && back.phi.is_one() && back.alpha.is_one() && back.beta.is_one());
    let x = base.alg.from_element(&hopf.x().unwrap());
    assert_eq!(back.delta(&x).unwrap(), base.delta(&x).unwrap());
}

#[test]
fn hopf_algebra_is_a_quasi_hopf_algebra_with_trivial_associator() {
    let hopf = h(2, 2, 1, 1, &[1, 0], &[0, 1]);
    let st = QuasiHopfStructure::from_hopf(hopf.clone()).unwrap();
    let els: Vec<_> = [("x", hopf.x().unwrap()), ("y", hopf.y().unwrap()), ("g", hopf.mono(Mono::new(0, hopf.g_index())))]
        .into_iter()
        .map(|(n, e)| (n.to_string(), st.alg.from_element(&e)))
        .collect();
    let checks = st.verify(&els, &st.antipode_data()).unwrap();
    assert!(passed(&checks), "{checks:?}");
}

#[test]
fn group_algebra_with_associator_is_quasi_hopf() {
    for (a, b, c) in [(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)] {
        let (chars, phi) = associator_phi(2, 2, a, b, c).unwrap();
        let group = chars.group.clone();
        let params = HopfParams::new(4, 4, 1, 1, &[1, 0], &[0, 1]);
        assert_eq!(params.group().unwrap(), group);
        let hopf = Arc::new(HopfAlgebra::group_algebra(&params).unwrap());
        let st = QuasiHopfStructure::from_hopf(hopf.clone()).unwrap();
        let phi = phi.with_modulus(st.phi.modulus).unwrap();
        // α = 1 and β(ψ) = Φ(ψ,−ψ,ψ)⁻¹ solve the antipode identities in kG
        let beta = DiagonalTensor::from_fn(&group, phi.modulus, 1, |k| -(phi.get(&[k[0], group.neg_idx(k[0]), k[0]]) as i64));
        let st = st.with_associator(phi);
        let data = AntipodeData { gauge: DiagonalTensor::one(&group, st.phi.modulus, 1), alpha: DiagonalTensor::one(&group, st.phi.modulus, 1), beta };
        let els: Vec<_> = (0..2).map(|i| (format!("g{i}"), st.alg.from_element(&hopf.group_element(&group.generator(i))))).collect();
        let checks = st.verify(&els, &data).unwrap();
        assert!(passed(&checks), "{a}{b}{c}: {checks:?}");
    }
}

#[test]
fn twisted_hopf_algebra_satisfies_all_axioms() {
    let spec = standard_pair_spec(4, 4, 1, 1, 2, (1, 1, 1)).unwrap();
    let inst = TwistedInstance::build(&spec).unwrap();
    let st = &inst.structure;
    for data in [st.antipode_data(), st.gauged_antipode_data().unwrap()] {
        let checks = st.verify(&inst.generators, &data).unwrap();
        assert!(passed(&checks), "{checks:?}");
    }
}

#[test]
fn pentagon_violating_associator_is_rejected() {
    let spec = standard_pair_spec(4, 4, 1, 1, 2, (0, 1, 1)).unwrap();
    let inst = TwistedInstance::build(&spec).unwrap();
    let st = &inst.structure;
    let mut bad = st.phi.clone();
    let k = bad.index(&[1, 1, 1]);
    bad.exps[k] = (bad.exps[k] + 1) % bad.modulus;
    let broken = st.with_associator(bad);
    let checks = broken.verify(&inst.generators, &broken.gauged_antipode_data().unwrap()).unwrap();
    let pent = checks.iter().find(|c| c.name == "pentagon").unwrap();
    assert!(!pent.passed);
    assert!(pent.witness.is_some());
}

/// Span of all products of generators of length ≤ the nilpotency bound, computed
/// in the monomial basis.
fn span_dimension(hopf: &HopfAlgebra, gens: &[qhopf::hopf::AlgebraElement]) -> usize {
    let basis = hopf.basis();
    let pos = |m: &Mono| basis.iter().position(|b| b == m).unwrap();
    let vec_of = |e: &qhopf::hopf::AlgebraElement| {
        let mut v = vec![hopf.field.zero(); basis.len()];
        for (m, c) in &e.terms {
            v[pos(m)] = c.clone();
        }
        v
    };
    let mut sp = Subspace::new(&hopf.field, basis.len());
    let mut frontier = vec![hopf.one()];
    sp.insert(&vec_of(&hopf.one())).unwrap();
    while !frontier.is_empty() {
        let mut next = vec![];
        for u in &frontier {
            for g in gens {
                let p = hopf.mul(u, g);
                if sp.insert(&vec_of(&p)).unwrap() {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    sp.dim()
}

#[test]
fn subalgebra_dimension_matches_span_oracle() {
    for (m, n, sigma, l1, l2) in [(4, 4, 1, 1, 2), (4, 4, 0, 2, 4), (4, 4, 2, 4, 1)] {
        let spec = standard_pair_spec(m, n, sigma, l1, l2, (0, 1, 1)).unwrap();
        let inst = TwistedInstance::build(&spec).unwrap();
        let hopf = inst.structure.alg.hopf.clone();
        let mut gens = vec![hopf.x().unwrap(), hopf.y().unwrap()];
        for k in &spec.grouplikes {
            gens.push(hopf.group_element(k));
        }
        let oracle = span_dimension(&hopf, &gens);
        assert_eq!(inst.sub.dim(), oracle);
        assert_eq!(inst.sub.dim() * 4, hopf.dimension());
    }
}

#[test]
fn closure_examples() {
    let (d, _, inst) = check_closure(4, 4, 1, 1, 2, (0, 1, 1)).unwrap();
    assert!(d.closed && d.twist_coboundary_matches);
    assert!(passed(&inst.verify_restricted().unwrap()));
    let (d, cong, _) = check_closure(4, 4, 1, 1, 2, (1, 1, 1)).unwrap();
    assert!(!d.closed);
    assert!(!cong[0].passed);
    assert!(d.memberships.iter().any(|c| !c.passed && c.witness.is_some()));
}

#[test]
fn closure_sweep_agrees_with_congruences() {
    let rows = closure_sweep(4, 4).unwrap();
    assert_eq!(rows.len(), 288);
    assert!(rows.iter().all(|r| r.direct == r.predicted));
    let closed: Vec<_> = rows.iter().filter(|r| r.direct).collect();
    assert!(!closed.is_empty());
    for r in &closed {
        assert_eq!(r.genuine, Some((r.b, r.c) != (0, 0)));
    }
}

#[test]
fn genuineness_of_square_group_associators() {
    for (b, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(omega_0bc_is_coboundary(2, 2, b, c).unwrap(), (b, c) == (0, 0));
    }
}

#[test]
fn classify_examples() {
    let c = classify(4, 4, 1, 1, 2, None).unwrap();
    assert_eq!((c.case, c.dim), (Case::Hopf, 256));
    let c = classify(4, 4, 1, 1, 2, Some((0, 1, 1))).unwrap();
    assert_eq!(c.case, Case::Subalgebra);
    assert!(c.genuine);
    let c = classify(4, 4, 1, 1, 2, Some((1, 1, 1))).unwrap();
    assert_eq!(c.case, Case::NotClosed);
    let c = classify(4, 4, 1, 4, 4, Some((0, 0, 0))).unwrap();
    assert_eq!(c.case, Case::Subalgebra);
    assert!(!c.genuine);
}

/// `Δ_J(X)` term by term against the expansion with coarse remainders
/// `y' = y mod 𝕞`.
#[test]
fn twisted_coproduct_of_x_matches_expansion() {
    let (m, n) = (4u32, 4u32);
    let mm = 2u32;
    for (sigma, l1, l2, (a, b, c)) in [(1, 1, 2, (0, 1, 1)), (1, 1, 2, (1, 1, 1)), (2, 2, 1, (1, 0, 1)), (0, 4, 4, (1, 1, 0))] {
        let spec = standard_pair_spec(m, n, sigma, l1, l2, (a, b, c)).unwrap();
        let inst = TwistedInstance::build(&spec).unwrap();
        let alg = &inst.structure.alg;
        let hopf = &alg.hopf;
        let group = alg.group();
        let f = &alg.field;
        let (h1, h2) = (group.index(&group.generator(0)), group.index(&group.generator(1)));
        let coords = |chi: usize| (alg.chars.local_log(chi, h1, m) as i64, alg.chars.local_log(chi, h2, n) as i64);
        let x = alg.from_element(&hopf.distinguished_elements().unwrap().0);
        assert_eq!(x.terms.len(), 1);
        let (wx, fx) = x.terms.iter().next().map(|(w, f)| (w[0], f.clone())).unwrap();
        let ord = group.order();
        let rem = |y: i64| y.rem_euclid(mm as i64);
        let (m_, n_, a, b, s, l2) = (m as i64, n as i64, a as i64, b as i64, sigma as i64, l2 as i64);
        let mut t1 = vec![f.zero(); ord * ord];
        let mut t2 = vec![f.zero(); ord * ord];
        for chi in 0..ord {
            let (x1, x2) = coords(chi);
            for psi in 0..ord {
                let (y1, y2) = coords(psi);
                let e1 = f.root_of_unity(m, -a * (y1 - rem(y1)) - m_ * y1 / 2).unwrap();
                let e2 = f.root_of_unity(n, -m_ * s * y2 / 2 - l2 * y2).unwrap();
                t1[chi * ord + psi] = &(&fx[chi] * &e1) * &e2;
                let y1 = (y1 - 1).rem_euclid(m_);
                let jump = rem(y1) + 1 - rem(y1 + 1);
                t2[chi * ord + psi] = &fx[psi] * &f.root_of_unity(m, -(a * x1 + b * x2) * jump).unwrap();
            }
        }
        let mut expected = IdemTensor::zero(2);
        expected.terms.insert(vec![wx, 0], t1);
        expected.terms.insert(vec![0, wx], t2);
        let _ = n_;
        assert_eq!(inst.structure.delta(&x).unwrap(), expected, "σ={sigma} l1={l1} abc={a}{b}{c}");
    }
}

#[test]
fn general_decomposition_builds_closed_instance() {
    let params = HopfParams::new(4, 4, 1, 4, &[1, 0], &[0, 1]);
    let (spec, d) = general_spec(&params, (0, 0, 0), (0, 0, 0)).unwrap();
    let inst = TwistedInstance::build(&spec).unwrap();
    let direct = inst.direct_closure().unwrap();
    let coarse = [d.m1, d.m2, d.n1, d.n2].iter().map(|&x| exact_sqrt(x).unwrap()).product::<u32>() as usize;
    assert_eq!(direct.dim_a * coarse, direct.dim_h);
    assert!(direct.twist_coboundary_matches);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn twisted_structure_is_quasi_hopf(sigma in 0u32..4, l1 in prop::sample::select(vec![1u32, 2, 4]), l2 in prop::sample::select(vec![1u32, 2, 4]), a in 0u32..2, b in 0u32..2, c in 0u32..2) {
        let spec = standard_pair_spec(4, 4, sigma, l1, l2, (a, b, c)).unwrap();
        let inst = TwistedInstance::build(&spec).unwrap();
        let st = &inst.structure;
        prop_assert!(passed(&st.verify(&inst.generators, &st.antipode_data()).unwrap()));
        prop_assert!(qhopf::groupalg::pentagon_failure(&st.phi).unwrap().is_none());
    }

    #[test]
    fn twist_parts_are_valid(a in 0u32..2, b in 0u32..2, c in 0u32..2) {
        let spec = standard_pair_spec(4, 4, 1, 1, 2, (a, b, c)).unwrap();
        let part: &TwistPart = &spec.parts[0];
        prop_assert!(part.validate(&spec.params.group().unwrap()).is_ok());
    }
}

#[test]
fn general_congruences_match_direct_closure_on_sample() {
    let params = qhopf::hopf::enumerate_params(&[4]);
    for p in params.iter().step_by(97) {
        let (spec0, d) = general_spec(p, (0, 0, 0), (0, 0, 0)).unwrap();
        let hopf = Arc::new(HopfAlgebra::build(p).unwrap());
        let (q1, q2) = (&spec0.parts[0], &spec0.parts[1]);
        for a1 in 0..q1.mm1 {
            for b1 in 0..q1.mm1.min(q1.mm2) {
                for c1 in 0..q1.mm2 {
                    for a2 in 0..q2.mm1 {
                        for b2 in 0..q2.mm1.min(q2.mm2) {
                            for c2 in 0..q2.mm2 {
                                let (abc1, abc2) = ((a1, b1, c1), (a2, b2, c2));
                                let (spec, _) = general_spec(p, abc1, abc2).unwrap();
                                let inst = TwistedInstance::build_on(&spec, hopf.clone()).unwrap();
                                let direct = inst.direct_closure().unwrap();
                                let predicted = general_congruences(&d, p.l1, p.l2, abc1, abc2, Pairing::AsStated).iter().all(|c| c.passed);
                                assert_eq!(direct.closed, predicted, "{p:?} {abc1:?} {abc2:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}
