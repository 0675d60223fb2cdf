mod common;

use common::*;
use qpkit::jacobian::*;
use qpkit::polygon::{build_floriated, build_polygon_tree, FloriatedSpec, PolygonTreeSpec};
use qpkit::qp::{qp_mutate, Potential, Qp};

#[test]
fn glued_triangles_are_finite_and_cycles_vanish() {
    let qp = build_polygon_tree(&PolygonTreeSpec::new(&[3, 3], &[(0, 0)])).unwrap();
    let r = jacobian_basis_default(&qp).unwrap();
    assert!(r.saturated);
    assert!(is_schurian(&r).unwrap());
    assert!(socle_condition(&r).unwrap());
    // every chordless cycle, read from any vertex, is zero
    for cycle in qp.potential().terms().map(|(c, _)| c.clone()) {
        for s in 0..cycle.len() {
            let rot: Vec<String> = cycle[s..].iter().chain(&cycle[..s]).cloned().collect();
            let src = qp.arrow(&rot[0]).unwrap().src;
            assert!(r.is_zero_path(src, &rot));
        }
    }
}

#[test]
fn acyclic_quiver_satisfies_the_socle_condition() {
    let a3 = Qp::from_quiver(&q1(3, &[(1, 2), (2, 3)]), Potential::new()).unwrap();
    let r = jacobian_basis_default(&a3).unwrap();
    assert_eq!(r.dimension(), 6);
    assert!(socle_condition(&r).unwrap());
}

#[test]
fn petal_vertex_next_to_the_host_supports_negative_mutation() {
    let qp = build_floriated(&FloriatedSpec::new(4, &[(1, 5)])).unwrap();
    let r = jacobian_basis_default(&qp).unwrap();
    let k = qp.vertex_index("v1_3").unwrap();
    assert!(negative_mutation_defined(&r, k).unwrap());
    assert!(no_cycle_at(&r, k).unwrap());
}

#[test]
fn definedness_without_paths_is_vacuous() {
    // 1 -> 2: vertex 2 has no nonzero path to another vertex
    let a2 = Qp::from_quiver(&q1(2, &[(1, 2)]), Potential::new()).unwrap();
    let r = jacobian_basis_default(&a2).unwrap();
    assert!(negative_mutation_defined(&r, 1).unwrap());
    assert!(!positive_mutation_defined(&r, 1).unwrap());
}

#[test]
fn positive_is_negative_on_the_opposite_algebra() {
    let mut count = 0;
    for s in corpus().into_iter().filter(|s| s.vertex_count() <= 8).step_by(5).take(25) {
        let qp = build_polygon_tree(&s).unwrap();
        // also a mutated neighbour, whose potential is no longer primitive
        let other = qp_mutate(&qp, &qp.vertices()[1].clone()).unwrap();
        for x in [qp, other] {
            let r = jacobian_basis_default(&x).unwrap();
            let ro = jacobian_basis_default(&x.opposite()).unwrap();
            for k in 0..x.n() {
                assert_eq!(
                    positive_mutation_defined(&r, k).unwrap(),
                    negative_mutation_defined(&ro, k).unwrap(),
                    "{} at {k}",
                    x.to_json()
                );
            }
            count += 1;
        }
    }
    assert_eq!(count, 50);
}

#[test]
fn arrow_count_condition() {
    let qp = build_floriated(&FloriatedSpec::new(4, &[(1, 3)])).unwrap();
    let q = qp.underlying_quiver().unwrap();
    assert!(vanishing_arrowcount(&q, "v1_3").unwrap());
    // v0_1 is a source of the shared arrow, and receives one arrow from each cycle
    assert!(!vanishing_arrowcount(&q, "v0_1").unwrap());
    let a3 = q1(3, &[(1, 2), (2, 3)]);
    assert!(vanishing_arrowcount(&a3, "1").unwrap());
    assert!(vanishing_arrowcount(&a3, "9").is_err());
}

#[test]
fn report_lists_basis_by_degree_then_name() {
    let qp = build_polygon_tree(&PolygonTreeSpec::single(4)).unwrap();
    let r = jacobian_basis_default(&qp).unwrap();
    let keys: Vec<(usize, Vec<String>)> = r.basis.iter().map(|b| (b.len(), b.arrows.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // 4 trivial paths, 4 arrows, 4 paths of length 2
    assert_eq!(r.dimension(), 12);
}

#[test]
fn starting_degree_does_not_change_the_report() {
    let qp = build_polygon_tree(&PolygonTreeSpec::new(&[5, 4, 3], &[(0, 1), (1, 2)])).unwrap();
    let base = jacobian_basis_default(&qp).unwrap();
    for start in [2, 5, 9, qp.default_degree()] {
        let r = jacobian_basis_from(&qp, qp.default_degree(), start).unwrap();
        assert_eq!(r.dimension(), base.dimension());
        assert_eq!(r.cartan, base.cartan);
        assert_eq!(r.truncation, base.truncation);
        assert_eq!(r.saturated, base.saturated);
    }
}
