use super::*;

fn star(m: usize, arrows: &[(usize, usize, usize)]) -> StarConfig {
    StarConfig::new(m, arrows.iter().map(|&(s, e, k)| Arrow::new(s, e, k)).collect()).unwrap()
}

#[test]
fn refined_cycle_orders_exits_by_slot() {
    use CyclePoint::*;
    assert_eq!(star(3, &[]).refined_cycle(), vec![Vertex(1), Vertex(2), Vertex(3)]);
    assert_eq!(
        star(3, &[(1, 2, 0)]).refined_cycle(),
        vec![Vertex(1), Vertex(2), Exit(0), Vertex(3)]
    );
    assert_eq!(
        star(4, &[(1, 2, 0), (2, 3, 0)]).refined_cycle(),
        vec![Vertex(1), Vertex(2), Exit(0), Vertex(3), Exit(1), Vertex(4)]
    );
    assert_eq!(
        star(5, &[(1, 3, 1), (2, 3, 0)]).refined_cycle(),
        vec![Vertex(1), Vertex(2), Vertex(3), Exit(1), Exit(0), Vertex(4), Vertex(5)]
    );
}

#[test]
fn invalid_configurations_are_rejected() {
    assert_eq!(StarConfig::new(2, vec![]), Err(StarError::TooSmall(2)));
    assert!(matches!(
        StarConfig::new(4, vec![Arrow::new(1, 4, 0)]),
        Err(StarError::IncidentExit { .. })
    ));
    assert!(matches!(
        StarConfig::new(4, vec![Arrow::new(1, 1, 0)]),
        Err(StarError::IncidentExit { .. })
    ));
    assert!(matches!(
        StarConfig::new(4, vec![Arrow::new(1, 2, 1)]),
        Err(StarError::BadSlots { edge: 2, .. })
    ));
    assert!(matches!(
        StarConfig::new(4, vec![Arrow::new(5, 2, 0)]),
        Err(StarError::OutOfRange { .. })
    ));
}

#[test]
fn crossing_examples() {
    let s = star(3, &[(1, 2, 0), (2, 3, 0)]);
    assert!(s.arrows_cross(0, 1).unwrap());
    let s = star(5, &[(1, 3, 0), (1, 4, 0)]);
    assert!(!s.arrows_cross(0, 1).unwrap());
    let s = star(6, &[(1, 3, 0), (4, 6, 0)]);
    assert!(!s.arrows_cross(0, 1).unwrap());
    // same exit edge: order on the edge decides
    let s = star(5, &[(1, 3, 1), (2, 3, 0)]);
    assert!(!s.arrows_cross(0, 1).unwrap());
    let s = star(5, &[(1, 3, 0), (2, 3, 1)]);
    assert!(s.arrows_cross(0, 1).unwrap());
    assert_eq!(s.arrows_cross(0, 7), Err(StarError::NoSuchArrow(7)));
}

#[test]
fn fan_examples() {
    assert!(star(3, &[(1, 2, 0)]).is_fan_free(2).is_ok());
    let fan = star(3, &[(1, 2, 0), (2, 3, 0)]).is_fan_free(2).unwrap_err();
    assert_eq!(fan.members.len(), 2);
    let three = star(3, &[(1, 2, 0), (2, 3, 0), (3, 1, 0)]);
    assert!(three.is_fan_free(3).is_ok());
    assert!(three.is_fan_free(2).is_err());
    let doubled = star(4, &[(1, 2, 0), (1, 2, 1)]);
    assert_eq!(
        doubled.is_fan_free(2),
        Err(StarFan {
            crosser: StarObject::Edge(2),
            apex: 1,
            members: vec![StarObject::Arrow(0), StarObject::Arrow(1)],
        })
    );
    assert!(doubled.is_fan_free(3).is_ok());
}

#[test]
fn length_and_witness() {
    let s = star(5, &[(1, 2, 0), (3, 4, 0), (1, 3, 0)]);
    assert_eq!(s.arrow_length(0), Ok(1));
    assert_eq!(s.short_arrow_witness(0), Ok(2));
    assert_eq!(s.short_arrow_witness(1), Ok(4));
    assert_eq!(s.short_arrow_witness(2), Err(StarError::LongArrow(2)));
    assert_eq!(star(7, &[(1, 3, 0)]).arrow_length(0), Ok(2));
    for exit in [2, 3] {
        assert_eq!(star(4, &[(1, exit, 0)]).arrow_length(0), Ok(1));
    }
    // the short side can be the far one
    let s = star(5, &[(1, 4, 0)]);
    assert_eq!(s.short_arrow_witness(0), Ok(5));
}

#[test]
fn classification_examples() {
    let full = star(3, &[(1, 2, 0), (2, 3, 0), (3, 1, 0)]);
    assert_eq!(full.classify_vertices().counts(), (3, 0, 0));

    // v1 -> e2 passes over v2 only; v3 then has a_{2,3} = 0 on its left
    let s = star(3, &[(1, 2, 0), (2, 3, 0)]);
    let c = s.classify_vertices();
    assert_eq!(c.counts(), (2, 0, 1));
    assert_eq!(c.tags[2], VertexTag::Void);

    let s = star(4, &[(1, 3, 0)]);
    assert_eq!(s.classify_vertices().counts(), (1, 3, 0));
    assert_eq!(s.classify_vertices().tags[1], VertexTag::LeftLight);

    let empty = star(5, &[]);
    assert_eq!(empty.classify_vertices().counts(), (0, 5, 0));

    // run v2..v4 flanked by short arrows over both ends
    let s = star(5, &[(1, 2, 0), (5, 3, 0)]);
    let c = s.classify_vertices();
    assert_eq!(
        c.tags,
        vec![
            VertexTag::Heavy,
            VertexTag::RightLight,
            VertexTag::RightLight,
            VertexTag::Void,
            VertexTag::Heavy
        ]
    );
    assert_eq!(c.counts(), (2, 2, 1));
}

#[test]
fn rotate_and_reflect_preserve_crossings() {
    let s = star(6, &[(1, 3, 0), (2, 3, 1), (4, 6, 0), (5, 2, 0)]);
    for t in [s.rotate(2), s.reflect(), s.reflect().reflect()] {
        for a in 0..s.len() {
            for b in 0..s.len() {
                if a != b {
                    assert_eq!(s.arrows_cross(a, b), t.arrows_cross(a, b));
                }
            }
        }
    }
    assert_eq!(s.reflect().reflect(), s);
    assert_eq!(s.rotate(6), s);
    assert_eq!(s.canonical_form(), s.rotate(3).reflect().canonical_form());
}

#[test]
fn without_reranks_slots() {
    let s = star(5, &[(1, 3, 0), (2, 3, 1), (5, 3, 2)]);
    let t = s.without(1);
    assert_eq!(t.arrows(), &[Arrow::new(1, 3, 0), Arrow::new(5, 3, 1)]);
}

#[test]
fn json_round_trip() {
    let s = star(4, &[(1, 2, 0), (3, 4, 0)]);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, r#"{"m":4,"arrows":[[1,2,0],[3,4,0]]}"#);
    let back: StarConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
    assert!(serde_json::from_str::<StarConfig>(r#"{"m":4,"arrows":[[1,4,0]]}"#).is_err());
}

#[test]
fn small_maxima() {
    let opts = SearchOptions::default();
    let three = max_arrows(3, 2, SearchFilter::All, opts).unwrap();
    assert_eq!(three.maximum, Some(1));
    let four = max_arrows(4, 2, SearchFilter::All, opts).unwrap();
    assert_eq!(four.maximum, Some(2));
    for w in four.witnesses.iter().chain(&three.witnesses) {
        assert!(w.is_fan_free(2).is_ok());
    }
    let tri = max_arrows(
        3,
        3,
        SearchFilter::Class {
            heavy: 3,
            light: 0,
            void: 0,
        },
        opts,
    )
    .unwrap();
    assert_eq!(tri.maximum, Some(3));
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let opts = SearchOptions {
        budget: 1,
        ..SearchOptions::default()
    };
    assert_eq!(
        max_arrows(5, 2, SearchFilter::All, opts),
        Err(SearchError::Inconclusive { budget: 1 })
    );
}

#[test]
fn bound_b_examples() {
    assert_eq!(bound_b(3, 0, 0, 3), Ok(3));
    assert_eq!(bound_b(2, 2, 0, 3), Ok(5));
    assert_eq!(bound_b(2, 0, 1, 3), Ok(2));
    assert_eq!(bound_b(4, 0, 0, 4), Ok(13));
    assert!(bound_b(1, 2, 0, 3).is_err());
    assert!(bound_b(3, 0, 0, 2).is_err());
}
