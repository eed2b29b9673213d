use fanfree::bounds::{check_against_bounds, upper_bound, Subject, Verdict};
use fanfree::constructions::{
    gen_grid, gen_kq_subdivision, gen_quad_extremal, gen_straight_extremal, gen_tri_plus_dual, generate, Family,
    GeneratorSpec,
};
use fanfree::crossings::{compute_crossings, is_k_fan_free, validate_simplicity};
use fanfree::{validate_graph, Drawing, Graph};

#[test]
fn quad_extremal_sweep() {
    for n in std::iter::once(8).chain(10..=40) {
        let d = gen_quad_extremal(n).unwrap();
        let g = d.graph();
        assert_eq!(g.edge_count(), 4 * n - 8);
        assert_eq!(d.crossings().len(), n - 2);
        assert!(validate_graph(n, g.edges()).is_ok());
        let skeleton = g.edge_subgraph(&(0..2 * n - 4).collect::<Vec<_>>());
        assert!(skeleton.two_coloring().is_some(), "n = {n}");
        let d: Drawing = d.into();
        assert!(is_k_fan_free(&d, 2).unwrap());
        let report = check_against_bounds(Subject::Drawing(&d), 2, false).unwrap();
        assert_eq!(report.verdict, Verdict::Extremal, "n = {n}");
    }
}

#[test]
fn straight_extremal_sweep() {
    for n in 6..=40 {
        let d = gen_straight_extremal(n).unwrap();
        assert_eq!(d.graph().edge_count(), 4 * n - 9);
        assert!(validate_simplicity(&d).ok);
        let d: Drawing = d.into();
        assert!(is_k_fan_free(&d, 2).unwrap());
        assert_eq!(d.graph().edge_count() as i64, upper_bound(n, 2, true).unwrap());
    }
    let k6 = gen_straight_extremal(6).unwrap();
    let complete = Graph::new(6, (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b)))).unwrap();
    let mut edges = k6.graph().edges().to_vec();
    edges.sort_unstable();
    assert_eq!(edges, complete.edges());
}

#[test]
fn grid_and_subdivision_counts() {
    for k in 3..=5 {
        let d = gen_grid(10, k).unwrap();
        let (n, e) = (d.graph().n(), d.graph().edge_count());
        let lower = (k as f64 - 1.0) * (n as f64 - 8.0 * ((n * k) as f64).sqrt());
        assert!(e as f64 >= lower && e <= 3 * (k - 1) * (n - 2));
        assert!(is_k_fan_free(&d.into(), k).unwrap());
    }
    for q in 3..=8 {
        let d = gen_kq_subdivision(q).unwrap();
        assert_eq!(d.graph().n(), q + q * (q - 1));
        assert_eq!(d.graph().edge_count(), 3 * q * (q - 1) / 2);
        if q == 3 {
            assert!(compute_crossings(&d).unwrap().is_empty());
        }
        assert!(is_k_fan_free(&d.into(), 2).unwrap());
    }
}

#[test]
fn tri_plus_dual_stays_below_six_n() {
    for (rows, cols) in [(3, 3), (4, 5), (6, 6)] {
        let d = gen_tri_plus_dual(rows, cols).unwrap();
        let n = d.graph().n();
        assert!(d.graph().edge_count() <= 6 * n - 12);
        assert!(is_k_fan_free(&d.into(), 4).unwrap());
    }
}

#[test]
fn generators_are_deterministic() {
    for family in Family::ALL {
        let mut spec = GeneratorSpec::new(family);
        spec.n = Some(10);
        spec.k = Some(3);
        spec.q = Some(4);
        spec.side = Some(5);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(
            fanfree::io::drawing_to_string(&a, ""),
            fanfree::io::drawing_to_string(&b, "")
        );
        let k = family.fan_k(3);
        assert!(is_k_fan_free(&a, k).unwrap(), "{family}");
    }
}

#[test]
fn complete_graph_on_seven_cannot_be_fan_free() {
    let k7 = Graph::new(7, (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b)))).unwrap();
    let r = check_against_bounds(Subject::Graph(&k7), 2, false).unwrap();
    assert_eq!(r.verdict, Verdict::CannotBeFanFree);
}
