mod common;

use common::*;
use qpkit::polygon::*;
use qpkit::PolygonError;

#[test]
fn floriated_constructions() {
    let tri = build_floriated(&FloriatedSpec::new(3, &[])).unwrap();
    assert_eq!((tri.n(), tri.arrows().len(), tri.potential().len()), (3, 3, 1));

    let spec = FloriatedSpec::new(4, &[(1, 3), (2, 3)]);
    let qp = build_floriated(&spec).unwrap();
    // each triangle petal adds one vertex; petals of size 4 add two each
    assert_eq!(qp.n(), 6);
    assert_eq!(build_floriated(&FloriatedSpec::new(4, &[(1, 4), (2, 4)])).unwrap().n(), 8);
    assert_eq!(chordless_cycles(&qp.underlying_quiver().unwrap()).len(), 3);
    assert_eq!(qp.potential().len(), 3);
    assert!(spec.type_d_candidate());
    assert!(!FloriatedSpec::new(4, &[(1, 3), (2, 4)]).type_d_candidate());
}

#[test]
fn floriated_validation() {
    assert_eq!(FloriatedSpec::new(4, &[(5, 3)]).validate(), Err(PolygonError::InvalidPosition(5)));
    assert_eq!(FloriatedSpec::new(4, &[(2, 3), (2, 3)]).validate(), Err(PolygonError::InvalidPosition(2)));
    assert_eq!(FloriatedSpec::new(4, &[(1, 2)]).validate(), Err(PolygonError::PetalTooSmall(2)));
}

#[test]
fn glued_cycles_counts_and_invariants() {
    let two_tri = PolygonTreeSpec::new(&[3, 3], &[(0, 0)]);
    let qp = build_polygon_tree(&two_tri).unwrap();
    assert_eq!((qp.n(), qp.arrows().len()), (4, 5));

    let two_sq = PolygonTreeSpec::new(&[4, 4], &[(0, 2)]);
    assert_eq!(build_polygon_tree(&two_sq).unwrap().n(), 6);
    assert_eq!(d_invariant(&two_sq).unwrap(), (8, 1, 0));

    assert_eq!(d_invariant(&PolygonTreeSpec::single(5)).unwrap(), (5, 0, 0));
    let adjacent_petals = FloriatedSpec::new(4, &[(1, 3), (2, 3)]).to_tree_spec().unwrap();
    assert_eq!(d_invariant(&adjacent_petals).unwrap(), (10, 2, 1));
}

#[test]
fn gluing_errors() {
    assert_eq!(
        build_polygon_tree(&PolygonTreeSpec::new(&[3, 3, 3], &[(0, 1), (0, 1)])).unwrap_err(),
        PolygonError::GluedArrowReuse { host: 0, arrow: 1 }
    );
    // a child's own arrow 0 is already glued to its host
    assert_eq!(
        build_polygon_tree(&PolygonTreeSpec::new(&[3, 3, 3], &[(0, 1), (1, 0)])).unwrap_err(),
        PolygonError::GluedArrowReuse { host: 1, arrow: 0 }
    );
    assert_eq!(
        build_polygon_tree(&PolygonTreeSpec::new(&[3, 3], &[(1, 1)])).unwrap_err(),
        PolygonError::NonTreeGluing(1)
    );
}

#[test]
fn strip_of_four_triangles_is_built_and_rejected() {
    let strip = strip_of_four_triangles();
    let dec = decompose(&strip).unwrap();
    assert_eq!(dec.spec.components, vec![3, 3, 3, 3]);
    assert!(!is_simple(&dec.spec));
    let w = simple_witness(&dec.spec, Figure5Reading::Chain).unwrap();
    assert_eq!(w.len(), 4);
    // rebuilding the recovered spec gives the same quiver up to isomorphism
    let rebuilt = build_polygon_tree(&dec.spec).unwrap().underlying_quiver().unwrap();
    assert!(qpkit::canon::is_isomorphic(&rebuilt, &strip));
}

#[test]
fn stars_and_small_trees_are_simple() {
    for s in corpus().into_iter().filter(|s| s.n_components() <= 3) {
        assert!(is_simple(&s), "{s:?}");
    }
    // a hexagon has at most three pairwise non-adjacent arrows
    let spread = PolygonTreeSpec::new(&[6, 3, 3, 3], &[(0, 0), (0, 2), (0, 4)]);
    assert!(is_simple(&spread));
    let crowded = PolygonTreeSpec::new(&[6, 3, 3, 3, 3], &[(0, 0), (0, 1), (0, 3), (0, 4)]);
    assert!(is_simple(&crowded));
}

#[test]
fn cyclic_orientation() {
    assert!(!is_cyclically_oriented(&q1(4, &[(1, 2), (3, 2), (3, 4), (1, 4)])));
    assert!(is_cyclically_oriented(&q1(4, &[(1, 2), (1, 3), (3, 4)])));
    assert!(primitive_potential(&q1(3, &[(1, 2), (2, 3)])).unwrap().is_empty());
    assert!(matches!(
        primitive_potential(&q1(4, &[(1, 2), (3, 2), (3, 4), (1, 4)])),
        Err(PolygonError::NotCyclicallyOriented(_))
    ));
    let w = primitive_potential(&q1(3, &[(1, 2), (2, 3), (3, 1)])).unwrap();
    assert_eq!(w.len(), 1);
}

#[test]
fn built_trees_have_one_chordless_cycle_per_component() {
    for s in corpus().into_iter().step_by(13) {
        let q = build_polygon_tree(&s).unwrap().underlying_quiver().unwrap();
        assert!(is_cyclically_oriented(&q));
        let mut sizes: Vec<usize> = chordless_cycles(&q).iter().map(|c| c.len()).collect();
        let mut want = s.components.clone();
        sizes.sort_unstable();
        want.sort_unstable();
        assert_eq!(sizes, want, "{s:?}");
    }
}

#[test]
fn decomposition_rejects_non_trees() {
    assert_eq!(decompose(&q1(3, &[(1, 2), (2, 3), (3, 1)])).unwrap().spec, PolygonTreeSpec::single(3));
    // two 4-cycles through the path 1 -> 2 -> 3
    let q = q1(5, &[(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (5, 1)]);
    assert!(matches!(decompose(&q), Err(PolygonError::NotPolygonTree(_))));
    assert!(matches!(decompose(&q1(3, &[(1, 2), (2, 3)])), Err(PolygonError::NotPolygonTree(_))));
}

#[test]
fn canonical_cluster_tilted_shapes() {
    assert_eq!(build_canonical_ct(2, 2, 2).unwrap().qp.n(), 5);
    assert_eq!(build_canonical_ct(2, 3, 3).unwrap().qp.n(), 7);
    assert_eq!(build_canonical_ct(3, 3, 3).unwrap_err(), PolygonError::UnsupportedWeight(3));
    let ct = build_canonical_ct(2, 3, 4).unwrap();
    // the first relation is the sum of the three arm paths
    assert_eq!(ct.relations[0].len(), 3);
}

#[test]
fn d_q_is_bounded_by_the_glued_slots() {
    for s in corpus() {
        let (_, n, dq) = d_invariant(&s).unwrap();
        assert!(dq <= 2 * n, "{s:?}");
        let positions = s.glue_positions();
        let all_far = positions.iter().enumerate().all(|(c, g)| {
            let mut p: Vec<usize> = g.iter().map(|x| x.1).collect();
            p.sort_unstable();
            let m = s.components[c];
            p.len() < 2 || (0..p.len()).all(|j| {
                let d = if j + 1 < p.len() { p[j + 1] - p[j] } else { p[0] + m - p[p.len() - 1] };
                d > 1
            })
        });
        if all_far {
            assert_eq!(dq, 0, "{s:?}");
        }
    }
}
