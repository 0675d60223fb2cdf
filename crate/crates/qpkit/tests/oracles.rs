mod common;

use common::*;
use qpkit::canon::{canonical_form, code_of};
use qpkit::jacobian::jacobian_basis_default;
use qpkit::mclass::{explore_class, ClassStatus};
use qpkit::qp::qp_mutate;
use qpkit::singularity::nakayama_model;
use qpkit::Quiver;

#[test]
fn jacobian_matches_dense_oracle_on_small_corpus_and_neighbours() {
    let mut checked = 0;
    for qp in corpus_qps_up_to(5) {
        let mut family = vec![qp.clone()];
        for v in qp.vertices() {
            family.push(qp_mutate(&qp, v).expect("polygon trees mutate"));
        }
        for x in family {
            let r = jacobian_basis_default(&x).expect("basis");
            assert!(r.saturated, "{}", x.to_json());
            let (dim, cartan) = dense_jacobian(&x, x.default_degree());
            assert_eq!(r.dimension(), dim, "{}", x.to_json());
            assert_eq!(r.cartan, cartan, "{}", x.to_json());
            checked += 1;
        }
    }
    assert!(checked > 20, "only {checked} QPs");
}

#[test]
fn class_sizes_match_naive_bfs() {
    let cases = [
        q1(3, &[(1, 2), (2, 3)]),
        q1(3, &[(1, 2), (2, 3), (3, 1)]),
        q1(4, &[(1, 2), (2, 3), (3, 4)]),
        q1(4, &[(1, 2), (1, 3), (1, 4)]),
        q1(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]),
        q1(5, &[(1, 2), (1, 3), (1, 4), (4, 5)]),
    ];
    for seed in cases {
        let naive = naive_class(&seed).expect("finite");
        let report = explore_class(&seed, 10_000).expect("explore");
        match report.status {
            ClassStatus::Finite { size, codes } => {
                assert_eq!(size, naive.len(), "{}", seed.to_json());
                // every member found by the library is a naive member too
                for c in codes {
                    let member = qpkit::canon::quiver_from_code(&c);
                    assert!(naive.contains(&naive_code(member.matrix())));
                }
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn infinite_verdicts_agree_with_naive_bfs() {
    let k3_tail = Quiver::from_arrows(vec!["1".into(), "2".into(), "3".into()], &[(0, 1, 3), (1, 2, 1)]).unwrap();
    let path5_cycle = q1(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3), (1, 4)]);
    for seed in [k3_tail, path5_cycle] {
        let naive = naive_class(&seed);
        let lib = explore_class(&seed, 50_000).expect("explore");
        assert_eq!(naive.is_none(), matches!(lib.status, ClassStatus::Infinite { .. }), "{}", seed.to_json());
    }
}

#[test]
fn nakayama_agrees_with_uniserial_listing() {
    for d in 3..=30 {
        let r = nakayama_model(d).unwrap();
        let (stable, period) = nakayama_oracle(d);
        assert_eq!(r.stable_count, stable);
        assert_eq!(r.tau_period, period);
        assert_eq!(r.tau_orbits, d - 2);
    }
}

#[test]
fn oriented_four_cycle_code_is_permutation_invariant() {
    let base = q1(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
    let want = canonical_form(&base).unwrap().code;
    let mut count = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).any(|i| (0..i).any(|j| p[i] == p[j])) {
                        continue;
                    }
                    let relabeled = base.permuted(&p);
                    assert_eq!(canonical_form(&relabeled).unwrap().code, want);
                    assert_eq!(naive_code(relabeled.matrix()), naive_code(base.matrix()));
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 24);
}

#[test]
fn canonical_codes_separate_exactly_like_naive_codes() {
    // every orientation of the 4-vertex "diamond with a tail" graph
    let edges = [(0, 1), (1, 2), (2, 0), (2, 3)];
    let mut quivers = Vec::new();
    for mask in 0..16u32 {
        let arrows: Vec<(usize, usize, u32)> =
            edges.iter().enumerate().map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a, 1) } else { (a, b, 1) }).collect();
        quivers.push(Quiver::from_arrows((0..4).map(|i| i.to_string()).collect(), &arrows).unwrap());
    }
    for x in &quivers {
        for y in &quivers {
            assert_eq!(code_of(x) == code_of(y), naive_code(x.matrix()) == naive_code(y.matrix()));
        }
    }
}
