mod common;

use common::strip_of_four_triangles;
use qpkit::jacobian::{jacobian_basis_default, negative_mutation_defined, no_cycle_at, positive_mutation_defined};
use qpkit::polygon::{build_polygon_tree, decompose, enumerate_specs, is_simple, FloriatedSpec, PolygonTreeSpec};
use qpkit::qp::RawQp;
use qpkit::singularity::*;
use qpkit::{qp_mutate, Qp, SingularityError};

#[test]
fn descriptor_examples() {
    for m in 3..9 {
        let d = singularity_invariant(&PolygonTreeSpec::single(m)).unwrap();
        assert_eq!(d.d, m as i64);
        assert_eq!(d.nakayama, format!("N_{m}"));
        assert_eq!(d.orbit_params, (m as i64 - 2, m as i64));
    }
    assert_eq!(singularity_invariant(&PolygonTreeSpec::new(&[4, 4], &[(0, 0)])).unwrap().d, 5);
    let strip = decompose(&strip_of_four_triangles()).unwrap().spec;
    assert!(matches!(singularity_invariant(&strip), Err(SingularityError::NotSimple(_))));
    assert!(matches!(nakayama_model(1), Err(SingularityError::DTooSmall(1))));
}

#[test]
fn surgery_patterns_are_checked() {
    let acyclic = Qp::from_quiver(&common::q1(3, &[(1, 2), (2, 3)]), Default::default()).unwrap();
    let at = Attachment { from: vec!["3".into()], to: vec!["1".into()] };
    // 3 -> z -> 1 closes the 4-cycle 1 2 3 z
    assert!(one_point_extend(&acyclic, "z", &at, AttachPattern::CloseCycle).is_ok());
    // a single arrow into a path closes nothing
    let far = Attachment { from: vec!["1".into()], to: vec![] };
    assert!(matches!(
        one_point_extend(&acyclic, "z", &far, AttachPattern::CloseCycle),
        Err(SingularityError::PatternMismatch(_))
    ));
    // the middle of a path has two arrows but lies on no cycle
    assert!(matches!(drop_vertex(&acyclic, "2"), Err(SingularityError::PatternMismatch(_))));
    assert_eq!(drop_vertex(&acyclic, "3").unwrap().n(), 2);
}

#[test]
fn reduction_shapes() {
    let t = replay_reduction(&FloriatedSpec::new(3, &[(1, 4)])).unwrap();
    assert_eq!(t.terminal_cycle, 4);
    let terminal = Qp::from_raw(&t.terminal).unwrap();
    assert_eq!(terminal.n(), 5, "a 4-cycle with a tail of one vertex");
    let t = replay_reduction(&FloriatedSpec::new(4, &[(1, 3), (2, 3)])).unwrap();
    assert_eq!((t.terminal_cycle, Qp::from_raw(&t.terminal).unwrap().n()), (6, 6));
    let t = replay_reduction(&FloriatedSpec::new(6, &[])).unwrap();
    assert!(t.steps.is_empty());
    assert_eq!(t.terminal_cycle, 6);
}

fn qp(raw: &RawQp) -> Qp {
    Qp::from_raw(raw).unwrap()
}

/// Recomputes every stored certificate from the snapshots alone.
fn recheck(trace: &ReplayTrace) {
    for (i, step) in trace.steps.iter().enumerate() {
        let (before, after) = (qp(&step.before), qp(&step.after));
        if i + 1 < trace.steps.len() {
            assert_eq!(step.after, trace.steps[i + 1].before, "snapshots chain up");
        }
        match (&step.op, &step.certificate) {
            (StepOp::QpMutation { vertex }, Some(Certificate::Derived(f))) => {
                let again = qp_mutate(&before, vertex).unwrap();
                assert_eq!(again.to_raw(), step.after);
                let ra = jacobian_basis_default(&before).unwrap();
                let rb = jacobian_basis_default(&after).unwrap();
                let (ka, kb) = (before.vertex_index(vertex).unwrap(), after.vertex_index(vertex).unwrap());
                assert_eq!((ra.dimension(), rb.dimension()), (f.a_dim, f.b_dim));
                assert_eq!(negative_mutation_defined(&ra, ka).unwrap(), f.a_negative);
                assert_eq!(positive_mutation_defined(&ra, ka).unwrap(), f.a_positive);
                assert_eq!(negative_mutation_defined(&rb, kb).unwrap(), f.b_negative);
                assert_eq!(positive_mutation_defined(&rb, kb).unwrap(), f.b_positive);
                assert!(no_cycle_at(&ra, ka).unwrap() && no_cycle_at(&rb, kb).unwrap());
                assert!(f.satisfied());
            }
            (StepOp::QpMutation { .. }, c) => panic!("mutation step {i} has certificate {c:?}"),
            (_, Some(Certificate::SingularityPreserving { reference })) => assert!(!reference.is_empty()),
            (op, c) => panic!("step {i} {op:?} has certificate {c:?}"),
        }
    }
}

#[test]
fn certificates_survive_a_recheck() {
    for spec in [
        PolygonTreeSpec::new(&[4, 4], &[(0, 0)]),
        PolygonTreeSpec::new(&[5, 4], &[(0, 0)]),
        PolygonTreeSpec::new(&[4, 5, 3], &[(0, 0), (1, 2)]),
        PolygonTreeSpec::new(&[5, 4, 4], &[(0, 0), (0, 1)]),
    ] {
        let t = replay_theorem_chain(&spec).unwrap();
        assert_eq!(Some(t.terminal_cycle as i64), t.expected_d);
        recheck(&t);
    }
}

#[test]
fn every_case_occurs_and_rechecks() {
    let mut seen = [false; 4];
    for spec in enumerate_specs(4, &[3, 4, 5]) {
        if seen == [true; 4] {
            break;
        }
        if !is_simple(&spec) || singularity_invariant(&spec).is_err() {
            continue;
        }
        let t = replay_theorem_chain(&spec).unwrap();
        let fresh: Vec<u8> = t.stages.iter().map(|s| s.case).filter(|&c| !seen[c as usize - 1]).collect();
        if !fresh.is_empty() {
            recheck(&t);
            for c in fresh {
                seen[c as usize - 1] = true;
            }
        }
    }
    assert_eq!(seen, [true; 4], "cases 1..4 all reached");
}

#[test]
fn terminal_length_ignores_leaf_order() {
    // listing the vertices in another order yields another spec of the same tree,
    // with other components first and other tie breaks between equal leaves
    let mut relisted = 0;
    for spec in enumerate_specs(3, &[3, 4]) {
        let Ok(desc) = singularity_invariant(&spec) else { continue };
        let q = build_polygon_tree(&spec).unwrap().underlying_quiver().unwrap();
        let n = q.n();
        for shift in 1..n {
            let order: Vec<usize> = (0..n).map(|i| (i * (n - 1) + shift) % n).collect();
            let other = decompose(&q.permuted(&order)).unwrap().spec;
            if other != spec {
                relisted += 1;
            }
            let t = replay_theorem_chain(&other).unwrap();
            assert_eq!(t.terminal_cycle as i64, desc.d, "{spec:?} as {other:?}");
        }
    }
    assert!(relisted > 0);
}

#[test]
fn canonical_drop_lands_on_two_cycles() {
    for p2 in 2..=4 {
        for p3 in p2..=4 {
            let r = canonical_drop(2, p2, p3).unwrap();
            assert_eq!(r.d, (p2 + p3) as i64 - 1);
            let f = r.floriated.expect("two cycles sharing one arrow");
            let mut sizes = vec![f.m0, f.petals[0].size];
            sizes.sort_unstable();
            assert_eq!(sizes, vec![p2 + 1, p3 + 1]);
        }
    }
}

#[test]
fn trace_json_round_trips() {
    let t = replay_theorem_chain(&PolygonTreeSpec::new(&[4, 5], &[(0, 1)])).unwrap();
    let back: ReplayTrace = serde_json::from_str(&t.to_json_pretty()).unwrap();
    assert_eq!(back, t);
}
