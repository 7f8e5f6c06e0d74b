use qhopf::abgroup::AbelianGroup;
use qhopf::cohomology::{Cochain, CocycleParams};
use qhopf::cyclo::{CycloField, FieldExt};
use qhopf::groupalg::*;
use qhopf::Rat;

fn z(n: u32) -> AbelianGroup {
    AbelianGroup::cyclic(n)
}

#[test]
fn idempotents_are_orthogonal_and_complete() {
    let g = z(4);
    let f = CycloField::new(4);
    let gen = g.generator(0);
    let es: Vec<_> = (0..4).map(|i| idempotent(&g, &f, 4, i, &gen).unwrap()).collect();
    let mut sum = TensorElement::zero(&g, &f, 1);
    for (i, ei) in es.iter().enumerate() {
        sum = sum.add(ei).unwrap();
        for (j, ej) in es.iter().enumerate() {
            let prod = ei.mul(ej).unwrap();
            if i == j {
                assert_eq!(&prod, ei);
            } else {
                assert!(prod.terms.is_empty());
            }
        }
        // g·1_i = ζ_4^i 1_i
        let g_elem = TensorElement::element(&g, &f, &gen);
        assert_eq!(g_elem.mul(ei).unwrap(), ei.scale(&f.zeta(i as i64)));
    }
    assert_eq!(sum, TensorElement::one(&g, &f, 1));
    assert!(idempotent(&g, &f, 2, 0, &gen).is_err());
}

#[test]
fn coarse_idempotents_sum_identity() {
    let g = z(4);
    let f = CycloField::new(4);
    let gen = g.generator(0);
    assert!(verify_sum_identity(&g, &f, &gen).unwrap());
    let lhs = idempotent(&g, &f, 4, 0, &gen).unwrap().add(&idempotent(&g, &f, 4, 2, &gen).unwrap()).unwrap();
    assert_eq!(lhs, coarse_idempotent(&g, &f, 2, 0, &gen).unwrap());
    let lhs = idempotent(&g, &f, 4, 1, &gen).unwrap().add(&idempotent(&g, &f, 4, 3, &gen).unwrap()).unwrap();
    assert_eq!(lhs, coarse_idempotent(&g, &f, 2, 1, &gen).unwrap());
    let g9 = z(9);
    let f9 = CycloField::new(9);
    assert!(verify_sum_identity(&g9, &f9, &g9.generator(0)).unwrap());
    // 𝕝 = 1: the trivial group's only coarse idempotent is 1
    let g1 = z(1);
    let f1 = CycloField::new(1);
    assert_eq!(coarse_idempotent(&g1, &f1, 1, 0, &g1.identity()).unwrap(), TensorElement::one(&g1, &f1, 1));
    assert!(coarse_idempotent(&z(8), &CycloField::new(8), 2, 0, &z(8).generator(0)).is_err());
}

#[test]
fn basis_change_round_trips() {
    let g = AbelianGroup::new(vec![2, 4]).unwrap();
    let f = CycloField::new(8);
    let chars = CharacterTable::new(&g);
    let mut t = TensorElement::zero(&g, &f, 2);
    for (k, (a, b)) in [(1, 3), (5, 0), (7, 7), (2, 6)].into_iter().enumerate() {
        t.add_term(vec![a, b], &f.zeta(k as i64 + 1).scale(&Rat::frac(k as i64 - 2, 3)));
    }
    let vals = t.to_idempotent_values(&chars);
    let back = TensorElement::from_idempotent_values(&g, &f, 2, &vals, &chars).unwrap();
    assert_eq!(back, t);
}

#[test]
fn diagonal_products_are_pointwise() {
    let (chars, j) = twist_j(2, 2, 1, 0, 1).unwrap();
    let f = CycloField::new(4);
    let a = j.to_group_basis(&f, &chars).unwrap();
    let b = j.inv().mul(&j).unwrap();
    assert!(b.is_one());
    let prod = a.mul(&a).unwrap().to_diagonal(&chars).unwrap();
    assert_eq!(prod, j.mul(&j).unwrap());
    // convolution inverse agrees with negated exponents
    let inv = a.invert(&chars).unwrap();
    assert_eq!(inv.to_diagonal(&chars).unwrap(), j.inv());
    assert_eq!(a.mul(&inv).unwrap(), TensorElement::one(&chars.group, &f, 2));
}

#[test]
fn delta_of_one_is_one() {
    let g = z(4);
    let f = CycloField::new(4);
    let one = TensorElement::one(&g, &f, 2);
    assert_eq!(one.delta_slot(0).unwrap(), TensorElement::one(&g, &f, 3));
    let d = DiagonalTensor::one(&g, 4, 2);
    assert!(d.delta_slot(0).unwrap().is_one());
}

#[test]
fn twists_are_normalized() {
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let (_, j) = twist_j(2, 2, a, b, c).unwrap();
                assert!(is_normalized_twist(&j).unwrap());
                let (_, phi) = associator_phi(2, 2, a, b, c).unwrap();
                assert!(associator_counit_holds(&phi).unwrap());
            }
        }
    }
}

#[test]
fn associator_value_at_a_sample_triple() {
    let (chars, phi) = associator_phi(2, 2, 1, 0, 1).unwrap();
    let f = CycloField::new(4);
    // the character with coarse coordinates (1, 0) in every slot
    let chi = chars.group.index(&chars.group.element(&[1, 0]).unwrap());
    assert_eq!(phi.value(&f, &[chi, chi, chi]).unwrap(), f.from_int(-1));
}

#[test]
fn associator_counit_in_group_basis() {
    let f = CycloField::new(4);
    for (a, b, c) in [(1, 1, 1), (0, 1, 0), (1, 0, 1)] {
        let (chars, phi) = associator_phi(2, 2, a, b, c).unwrap();
        let t = phi.to_group_basis(&f, &chars).unwrap();
        assert_eq!(t.epsilon_slot(1).unwrap(), TensorElement::one(&chars.group, &f, 2));
    }
}

#[test]
fn twist_coboundary_matches_associator() {
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let (_, j) = twist_j(2, 2, a, b, c).unwrap();
                let (_, phi) = associator_phi(2, 2, a, b, c).unwrap();
                assert_eq!(twist_coboundary(&j).unwrap(), phi, "({a},{b},{c})");
            }
        }
    }
    for (b, c) in [(0, 1), (0, 2), (0, 0)] {
        for a in 0..2 {
            let (_, j) = twist_j(2, 3, a, b, c).unwrap();
            let (_, phi) = associator_phi(2, 3, a, b, c).unwrap();
            assert_eq!(twist_coboundary(&j).unwrap(), phi, "mixed ({a},{b},{c})");
        }
    }
}

#[test]
fn cyclic_twist_coboundary_by_direct_evaluation() {
    // J = Σ ζ_4^{x·y} 1_x ⊗ 1_y on Z_4 is a bicharacter, so d(J) is trivial;
    // the floor twist ζ_4^{x(y − y mod 2)} gives the carry associator instead.
    let g = z(4);
    let chars = CharacterTable::new(&g);
    let bichar = DiagonalTensor::from_fn(&g, 4, 2, |k| (k[0] * k[1]) as i64);
    assert!(twist_coboundary(&bichar).unwrap().is_one());
    let floor = DiagonalTensor::from_fn(&g, 4, 2, |k| (k[0] * (k[1] - k[1] % 2)) as i64);
    let d = twist_coboundary(&floor).unwrap();
    for x in 0..4usize {
        for y in 0..4usize {
            for w in 0..4usize {
                // independent scalar evaluation of the four factors
                let j = |p: usize, q: usize| (p * (q - q % 2)) as i64;
                let e = j(y, w) + j(x, (y + w) % 4) - j((x + y) % 4, w) - j(x, y);
                assert_eq!(d.get(&[x, y, w]) as i64, e.rem_euclid(4));
            }
        }
    }
    let _ = chars;
}

#[test]
fn pentagon_holds_for_all_parameters() {
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let (_, phi) = associator_phi(2, 2, a, b, c).unwrap();
                assert_eq!(pentagon_failure(&phi).unwrap(), None);
            }
        }
    }
}

#[test]
fn pentagon_negative_control() {
    let g = z(2);
    let bad = DiagonalTensor::from_fn(&g, 2, 3, |k| (k[0] * k[1]) as i64);
    assert!(pentagon_failure(&bad).unwrap().is_some());
}

#[test]
fn associator_restricts_to_representative_cocycle() {
    // Φ_{a,b,c} evaluated on coarse coordinates equals ω with a = (a, c), a_12 = b
    let (chars, phi) = associator_phi(2, 2, 1, 1, 0).unwrap();
    let small = AbelianGroup::new(vec![2, 2]).unwrap();
    let w = Cochain::of_params(&CocycleParams { a: vec![1, 0], aij: vec![1], arst: vec![] }, &small).unwrap();
    let g = &chars.group;
    for x in small.elements() {
        for y in small.elements() {
            for v in small.elements() {
                let lift = |e: &qhopf::GroupElement| g.index(&g.element(&[e.exp[0] as i64, e.exp[1] as i64]).unwrap());
                let lhs = phi.get(&[lift(&x), lift(&y), lift(&v)]);
                let rhs = w.exp_at(&[small.index(&x), small.index(&y), small.index(&v)]);
                assert_eq!(lhs, rhs * 2);
            }
        }
    }
}

#[test]
fn out_of_range_parameters_are_refused() {
    assert!(twist_j(2, 2, 2, 0, 0).is_err());
    assert!(associator_phi(2, 3, 0, 1, 0).is_err());
    assert!(associator_phi(2, 3, 1, 0, 2).is_ok());
    assert!(associator_phi(2, 3, 0, 0, 3).is_err());
    assert!(associator_phi(2, 4, 0, 2, 0).is_err());
}
