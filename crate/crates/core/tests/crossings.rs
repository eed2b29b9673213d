use fanfree::crossings::{compute_crossings, find_k_fans};
use fanfree::random::{random_drawing, rng, RandomSpec};
use fanfree::repro::naive_k_fans;
use fanfree::{Graph, Point, StraightLineDrawing};
use num_rational::BigRational;
use proptest::prelude::*;

fn drawing(seed: u64, n: usize) -> StraightLineDrawing {
    random_drawing(&mut rng(seed), &RandomSpec::new(n, 20))
}

/// Applies `(x, y) -> (a x + b y + e, c x + d y + f)`.
fn affine(d: &StraightLineDrawing, m: [i64; 6]) -> StraightLineDrawing {
    let r = |v: i64| BigRational::from_integer(v.into());
    let pts = d
        .coords()
        .iter()
        .map(|p| {
            Point::new(
                &p.x * r(m[0]) + &p.y * r(m[1]) + r(m[4]),
                &p.x * r(m[2]) + &p.y * r(m[3]) + r(m[5]),
            )
        })
        .collect();
    StraightLineDrawing::new(d.graph().clone(), pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fans_match_naive_enumeration(seed in any::<u64>(), n in 3usize..=12, k in 2usize..=4) {
        let d = drawing(seed, n);
        let rel = compute_crossings(&d).unwrap();
        prop_assert_eq!(find_k_fans(d.graph(), &rel, k).unwrap(), naive_k_fans(&d, k));
    }

    #[test]
    fn adjacent_edges_never_cross(seed in any::<u64>(), n in 3usize..=12) {
        let d = drawing(seed, n);
        let rel = compute_crossings(&d).unwrap();
        for (e, f) in rel.pairs() {
            prop_assert!(e < f);
            prop_assert!(!d.graph().is_adjacent_pair(e, f));
        }
    }

    #[test]
    fn crossings_survive_orientation_preserving_maps(
        seed in any::<u64>(),
        n in 3usize..=10,
        m in prop::array::uniform6(-7i64..=7),
    ) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] > 0);
        let d = drawing(seed, n);
        let moved = affine(&d, m);
        prop_assert_eq!(compute_crossings(&d).unwrap(), compute_crossings(&moved).unwrap());
    }

    #[test]
    fn canonicalisation_is_idempotent(pairs in prop::collection::btree_set((0usize..9, 0usize..9), 0..20)) {
        let edges: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        let mut seen = std::collections::BTreeSet::new();
        let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| seen.insert((a.min(b), a.max(b)))).collect();
        let g = Graph::new(9, edges).unwrap();
        let again = Graph::new(9, g.edges().iter().copied()).unwrap();
        prop_assert_eq!(g, again);
    }
}

#[test]
fn oracle_equivalence_on_500_seeded_drawings() {
    let mut r = rng(2024);
    let mut witnesses = 0;
    for i in 0..500 {
        let d = random_drawing(&mut r, &RandomSpec::new(4 + i % 9, 20));
        let rel = compute_crossings(&d).unwrap();
        for k in 2..=4 {
            let fast = find_k_fans(d.graph(), &rel, k).unwrap();
            assert_eq!(fast, naive_k_fans(&d, k), "drawing {i}, k = {k}");
            witnesses += fast.len();
        }
    }
    assert!(witnesses > 0);
}
