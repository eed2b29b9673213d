use fanfree::constructions::{gen_grid, gen_quad_extremal, gen_straight_extremal};
use fanfree::crossings::compute_crossings;
use fanfree::decompose::{audit, face_bound, global_bound_twice, maximal_plane_subgraph, trace_faces};
use fanfree::random::{random_drawing, random_fan_free_drawing, rng, RandomSpec};
use fanfree::Drawing;
use proptest::prelude::*;

#[test]
fn quad_extremal_eight() {
    let d: Drawing = gen_quad_extremal(8).unwrap().into();
    let r = audit(&d, 2).unwrap();
    assert_eq!((r.plane.len(), r.excluded.len()), (18, 6));
    assert_eq!(r.arrows.len(), 12);
    for f in &r.faces {
        assert_eq!((f.complexity, f.chains, f.arrows, f.bound), (3, 1, 1, 1));
    }
    assert_eq!(2 * r.edges as i64, global_bound_twice(8, 2));
}

#[test]
fn straight_extremal_audits() {
    for n in 6..=20 {
        let d: Drawing = gen_straight_extremal(n).unwrap().into();
        let r = audit(&d, 2).unwrap();
        assert!(r.is_clean(), "n = {n}");
        assert_eq!(r.arrows.len(), 2 * r.excluded.len());
    }
}

#[test]
fn grid_audits_at_its_own_k() {
    for k in 3..=5 {
        let d: Drawing = gen_grid(6, k).unwrap().into();
        let r = audit(&d, k).unwrap();
        assert!(r.fan_free && r.is_clean(), "k = {k}");
    }
}

#[test]
fn crossing_free_drawings_keep_every_edge() {
    let d = gen_straight_extremal(9).unwrap();
    let rel = compute_crossings(&d).unwrap();
    let h = maximal_plane_subgraph(d.graph(), &rel);
    let skeleton = d.restrict(&h);
    let r = audit(&skeleton.into(), 2).unwrap();
    assert!(r.excluded.is_empty());
    assert!(r.faces.iter().all(|f| f.arrows == 0));
}

#[test]
fn triangle_bound_is_tight_only_for_triangles() {
    assert_eq!(face_bound(3, 1, 2), 1);
    for m in 3..20 {
        for p in 1..5 {
            if (m, p) != (3, 1) {
                assert!(face_bound(m, p, 2) > 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_fan_free_drawings_pass(seed in any::<u64>(), n in 3usize..=12, k in 2usize..=4) {
        let d: Drawing = random_fan_free_drawing(&mut rng(seed), &RandomSpec::new(n, usize::MAX), k).into();
        let r = audit(&d, k).unwrap();
        prop_assert!(r.fan_free);
        prop_assert!(r.is_clean(), "{:?}", r.falsifications);
        prop_assert_eq!(r.complexity_sum, 2 * r.plane.len());
        prop_assert_eq!(r.arrows.len(), 2 * r.excluded.len());
    }

    #[test]
    fn plane_subgraph_is_maximal(seed in any::<u64>(), n in 3usize..=12) {
        let d = random_drawing(&mut rng(seed), &RandomSpec::new(n, 20));
        let rel = compute_crossings(&d).unwrap();
        let h = maximal_plane_subgraph(d.graph(), &rel);
        for &a in &h {
            for &b in &h {
                prop_assert!(!rel.contains(a, b));
            }
        }
        for e in (0..d.graph().edge_count()).filter(|e| !h.contains(e)) {
            prop_assert!(h.iter().any(|&f| rel.contains(e, f)));
        }
    }

    #[test]
    fn identities_hold_for_any_drawing(seed in any::<u64>(), n in 3usize..=12) {
        // the identities are about H alone, so fans elsewhere do not matter
        let d = random_drawing(&mut rng(seed), &RandomSpec::new(n, 20));
        let r = audit(&d.clone().into(), 2).unwrap();
        prop_assert!(r.complexity_sum_ok && r.chain_sum_ok && r.euler_ok);
        let t = trace_faces(&d, &r.plane).unwrap();
        prop_assert_eq!(t.faces.iter().filter(|f| f.bounded == Some(false)).count(), 1);
        for a in &r.arrows {
            prop_assert!(t.faces[a.face].walks.iter().any(|w| w.vertices.contains(&a.start)));
        }
    }
}
