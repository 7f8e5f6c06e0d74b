use std::sync::Arc;

use proptest::prelude::*;
use qhopf::abgroup::AbelianGroup;
use qhopf::hopf::{HopfAlgebra, HopfParams};
use qhopf::quasihopf::{standard_pair_spec, IdemAlgebra, TwistedInstance};
use qhopf::quiver::*;

fn idem(m: u32, n: u32, l1: u32, l2: u32, g: &[u32], h: &[u32]) -> IdemAlgebra {
    IdemAlgebra::new(Arc::new(HopfAlgebra::build(&HopfParams::new(m, n, l1, l2, g, h)).unwrap())).unwrap()
}

#[test]
fn covering_quiver_small_cases() {
    let z2 = AbelianGroup::cyclic(2);
    let q = covering_quiver(&z2, &[z2.generator(0)]).unwrap();
    assert_eq!((q.num_vertices(), q.arrows.len()), (2, 2));
    assert_eq!(q.adjacency(), vec![vec![0, 1], vec![1, 0]]);
    let k = AbelianGroup::new(vec![2, 2]).unwrap();
    let q = covering_quiver(&k, &[k.generator(0), k.generator(1)]).unwrap();
    assert_eq!((q.num_vertices(), q.arrows.len()), (4, 8));
    assert_eq!(rep_type_number(&q).unwrap(), 2);
    let q = covering_quiver(&k, &[]).unwrap();
    assert_eq!((q.num_vertices(), q.arrows.len()), (4, 0));
    assert!(covering_quiver(&k, &[z2.generator(0)]).is_err());
}

#[test]
fn group_algebra_has_no_arrows() {
    let p = HopfParams::new(2, 2, 1, 1, &[1, 0], &[0, 1]);
    let alg = IdemAlgebra::new(Arc::new(HopfAlgebra::group_algebra(&p).unwrap())).unwrap();
    let q = gabriel_quiver(&alg, None, &VertexMap::characters(&alg.chars)).unwrap();
    assert_eq!((q.num_vertices(), q.arrows.len()), (4, 0));
    assert_eq!(rep_type_number(&q).unwrap(), 0);
}

#[test]
fn smallest_hopf_algebra_quiver() {
    let alg = idem(2, 2, 1, 1, &[1, 0], &[0, 1]);
    let vm = VertexMap::characters(&alg.chars);
    let q = gabriel_quiver(&alg, None, &vm).unwrap();
    assert_eq!(q.num_vertices(), 4);
    assert!(q.out_degrees().iter().all(|&d| d == 2));
    let cover = covering_quiver(&vm.group, &degree_one_weights(&alg, None, &vm)).unwrap();
    assert!(find_isomorphism(&q, &cover).is_some());
    assert_eq!(rep_type_number(&q).unwrap(), 2);
    let dot = export_dot(&q);
    assert_eq!(dot, export_dot(&gabriel_quiver(&alg, None, &vm).unwrap()));
    assert_eq!(dot, include_str!("golden/h2211.dot"));
    assert_eq!(dot.matches("->").count(), 8);
}

#[test]
fn empty_quiver_exports_header_only() {
    let q = Quiver { vertices: vec![], arrows: vec![] };
    assert_eq!(export_dot(&q), "digraph quiver {\n}\n");
}

#[test]
fn isomorphism_search_distinguishes_quivers() {
    let g = AbelianGroup::cyclic(4);
    let a = covering_quiver(&g, &[g.generator(0)]).unwrap();
    let b = covering_quiver(&g, &[g.pow(&g.generator(0), 3)]).unwrap();
    let c = covering_quiver(&g, &[g.pow(&g.generator(0), 2)]).unwrap();
    let map = find_isomorphism(&a, &b).unwrap();
    for arr in &a.arrows {
        assert!(b.arrows.iter().any(|x| x.source == map[arr.source] && x.target == map[arr.target]));
    }
    // a 4-cycle is not two 2-cycles
    assert!(find_isomorphism(&a, &c).is_none());
}

#[test]
fn twisted_subalgebra_quiver_is_covering_of_the_coarse_dual() {
    let spec = standard_pair_spec(4, 4, 1, 1, 2, (0, 1, 1)).unwrap();
    let inst = TwistedInstance::build(&spec).unwrap();
    let alg = &inst.structure.alg;
    let vm = inst.vertex_map().unwrap();
    let q = gabriel_quiver(alg, Some(&inst.sub), &vm).unwrap();
    assert_eq!(q.num_vertices(), 4);
    let cover = covering_quiver(&vm.group, &degree_one_weights(alg, Some(&inst.sub), &vm)).unwrap();
    assert!(find_isomorphism(&q, &cover).is_some());
    assert_eq!(rep_type_number(&q).unwrap(), 2);
}

#[test]
fn hopf_quivers_at_order_sixteen() {
    for p in qhopf::hopf::enumerate_params(&[4]).iter().step_by(41) {
        let alg = IdemAlgebra::new(Arc::new(HopfAlgebra::build(p).unwrap())).unwrap();
        let vm = VertexMap::characters(&alg.chars);
        let q = gabriel_quiver(&alg, None, &vm).unwrap();
        let cover = covering_quiver(&vm.group, &degree_one_weights(&alg, None, &vm)).unwrap();
        assert!(find_isomorphism(&q, &cover).is_some(), "{p:?}");
        assert_eq!(rep_type_number(&q).unwrap(), 2);
    }
}

proptest! {
    #[test]
    fn covering_quiver_counts(f1 in 1u32..5, f2 in 1u32..5, ws in prop::collection::vec((0u32..4, 0u32..4), 0..4)) {
        let g = AbelianGroup::new(vec![f1, f2]).unwrap();
        let weights: Vec<_> = ws.iter().map(|&(a, b)| g.element(&[a as i64, b as i64]).unwrap()).collect();
        let q = covering_quiver(&g, &weights).unwrap();
        prop_assert_eq!(q.arrows.len(), g.order() * weights.len());
        prop_assert_eq!(rep_type_number(&q).unwrap(), weights.len());
        let shuffled: Vec<_> = weights.iter().rev().cloned().collect();
        prop_assert!(find_isomorphism(&q, &covering_quiver(&g, &shuffled).unwrap()).is_some());
    }
}
