use proptest::prelude::*;
use qhopf::abgroup::*;

fn el(v: &[u32]) -> GroupElement {
    GroupElement::new(v.to_vec())
}

fn brute_order(g: &AbelianGroup, x: &GroupElement) -> u32 {
    let mut cur = x.clone();
    let mut t = 1;
    while cur != g.identity() {
        cur = g.add(&cur, x);
        t += 1;
    }
    t
}

#[test]
fn element_orders() {
    let g = AbelianGroup::zm_zn(2, 4).unwrap();
    assert_eq!(g.element_order(&g.identity()), 1);
    assert_eq!(g.element_order(&el(&[1, 0])), 2);
    assert_eq!(g.element_order(&el(&[1, 2])), brute_order(&g, &el(&[1, 2])));
    for x in g.elements() {
        assert_eq!(g.element_order(&x), brute_order(&g, &x));
    }
}

#[test]
fn generating_pair_detection() {
    let g = AbelianGroup::zm_zn(2, 4).unwrap();
    assert!(g.is_generating_pair(&el(&[1, 0]), &el(&[0, 1])));
    assert!(!g.is_generating_pair(&el(&[0, 2]), &el(&[0, 1])));
    assert!(g.is_generating_pair(&el(&[1, 1]), &el(&[0, 1])));
}

#[test]
fn automorphism_counts() {
    let v4 = AbelianGroup::zm_zn(2, 2).unwrap();
    assert_eq!(aut_enumerate(&v4, DEFAULT_AUT_BOUND).unwrap().len(), 6);
    let g = AbelianGroup::zm_zn(2, 4).unwrap();
    assert_eq!(aut_enumerate(&g, DEFAULT_AUT_BOUND).unwrap().len(), 8);
    assert_eq!(aut_enumerate(&AbelianGroup::cyclic(9), DEFAULT_AUT_BOUND).unwrap().len(), 6);
    let big = AbelianGroup::zm_zn(16, 32).unwrap();
    assert!(matches!(aut_enumerate(&big, DEFAULT_AUT_BOUND), Err(qhopf::Error::Budget(_))));
}

#[test]
fn automorphism_algebra() {
    let g = AbelianGroup::zm_zn(4, 4).unwrap();
    let auts = aut_enumerate(&g, DEFAULT_AUT_BOUND).unwrap();
    let id = GroupAutomorphism::identity(&g);
    for s in auts.iter().step_by(13) {
        assert_eq!(s.compose(&s.inverse()), id);
        for x in g.elements() {
            assert_eq!(id.apply(&x), x);
        }
    }
}

#[test]
fn normalize_examples() {
    let g = AbelianGroup::zm_zn(2, 4).unwrap();
    let (a, s) = normalize_prime_pair(&g, &el(&[1, 0]), &el(&[0, 1])).unwrap();
    assert_eq!(a, 0);
    assert_eq!(s, GroupAutomorphism::identity(&g));
    let (a, _) = normalize_prime_pair(&g, &el(&[1, 2]), &el(&[0, 1])).unwrap();
    assert_eq!(a, 2);
    let (a, _) = normalize_prime_pair(&g, &el(&[1, 1]), &el(&[0, 1])).unwrap();
    assert_eq!(a, 1);
    assert!(normalize_prime_pair(&g, &el(&[0, 2]), &el(&[0, 1])).is_err());
}

/// Brute force over `Aut × a`: the valid exponents `a` for which some
/// automorphism sends `(e1, e2)` to `(g h^{-a}, h)`.
fn valid_exponents(g: &AbelianGroup, x: &GroupElement, h: &GroupElement) -> Vec<u32> {
    let auts = aut_enumerate(g, DEFAULT_AUT_BOUND).unwrap();
    let pj = g.factors()[1];
    (0..pj)
        .filter(|&a| auts.iter().any(|s| s.images[1] == *h && g.add(&s.images[0], &g.pow(h, a as i64)) == *x))
        .collect()
}

#[test]
fn normalize_agrees_with_automorphism_search() {
    for (i, j) in [(2u32, 4u32), (3, 9), (4, 8), (2, 8)] {
        let g = AbelianGroup::zm_zn(i, j).unwrap();
        for (x, h) in generating_pairs(&g) {
            if g.element_order(&x) > g.element_order(&h) {
                continue;
            }
            let (a, s) = normalize_prime_pair(&g, &x, &h).unwrap();
            let valid = valid_exponents(&g, &x, &h);
            assert!(valid.contains(&a), "{x} {h}: {a} not in {valid:?}");
            assert_eq!(s.images[1], h);
        }
    }
}

#[test]
fn decompose_examples() {
    let g = AbelianGroup::zm_zn(2, 4).unwrap();
    let d = standard_decompose(&g, &g.generator(0), &g.generator(1)).unwrap();
    assert_eq!((d.m1, d.n2, d.a, d.b), (1, 4, 0, 0));
    // g of order 4 carries the 2-part: m1 = 2, m2 = 4
    let d = standard_decompose(&g, &el(&[0, 1]), &el(&[1, 0])).unwrap();
    assert_eq!((d.m1, d.m2, d.n1, d.n2), (2, 4, 1, 1));
    d.verify(&g, &el(&[0, 1]), &el(&[1, 0])).unwrap();
    let g44 = AbelianGroup::zm_zn(4, 4).unwrap();
    let d = standard_decompose(&g44, &el(&[1, 1]), &el(&[1, 2])).unwrap();
    d.verify(&g44, &el(&[1, 1]), &el(&[1, 2])).unwrap();
    assert!(standard_decompose(&g, &el(&[0, 2]), &el(&[0, 1])).is_err());
}

#[test]
fn decomposition_is_exhaustively_valid_up_to_order_64() {
    for m in 1..=8u32 {
        for n in (m..=64).step_by(m as usize) {
            if m * n > 64 || n % m != 0 {
                continue;
            }
            let g = AbelianGroup::zm_zn(m, n).unwrap();
            for (x, h) in generating_pairs(&g) {
                let d = standard_decompose(&g, &x, &h).unwrap();
                d.verify(&g, &x, &h).unwrap();
            }
        }
    }
}

proptest! {
    #[test]
    fn index_is_a_bijection(m in 1u32..6, k in 1u32..4, i in 0usize..1000) {
        let g = AbelianGroup::zm_zn(m, m * k).unwrap();
        let i = i % g.order();
        prop_assert_eq!(g.index(&g.from_index(i)), i);
    }

    #[test]
    fn pow_matches_repeated_addition(m in 1u32..6, k in 1u32..4, i in 0usize..1000, e in 0i64..20) {
        let g = AbelianGroup::zm_zn(m, m * k).unwrap();
        let x = g.from_index(i % g.order());
        let mut acc = g.identity();
        for _ in 0..e {
            acc = g.add(&acc, &x);
        }
        prop_assert_eq!(g.pow(&x, e), acc);
    }
}
