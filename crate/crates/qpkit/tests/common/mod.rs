//! Independent reference computations shared by the integration tests.
//!
//! None of these reuse the library's elimination, canonical forms or BFS; they
//! are deliberately naive so that agreement means something.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use qpkit::polygon::{build_polygon_tree, enumerate_specs, PolygonTreeSpec};
use qpkit::{Qp, Quiver};

/// Dimension and Cartan matrix (`[target][source]`) of the quotient of all
/// paths of length `<= d` by the span of `u * dW/da * v`, truncated at `d`,
/// by dense Gaussian elimination block by block.
pub fn dense_jacobian(qp: &Qp, d: usize) -> (usize, Vec<Vec<usize>>) {
    let n = qp.n();
    let arrows = qp.arrows();
    let by_name: HashMap<&str, usize> = arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();

    // every path as (src, tgt, arrow indices)
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|v| (v, v, Vec::new())).collect();
    let mut frontier = paths.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for (s, t, p) in &frontier {
            for (i, a) in arrows.iter().enumerate() {
                if a.src == *t {
                    let mut q = p.clone();
                    q.push(i);
                    next.push((*s, a.tgt, q));
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }

    // cyclic derivatives, computed here from the potential terms directly
    let mut derivs: Vec<(usize, usize, Vec<(Vec<usize>, BigRational)>)> = Vec::new();
    for (ai, a) in arrows.iter().enumerate() {
        let mut acc: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for (cycle, x) in qp.potential().terms() {
            let ids: Vec<usize> = cycle.iter().map(|s| by_name[s.as_str()]).collect();
            for pos in 0..ids.len() {
                if ids[pos] == ai {
                    let rest: Vec<usize> = ids[pos + 1..].iter().chain(ids[..pos].iter()).copied().collect();
                    *acc.entry(rest).or_insert_with(BigRational::zero) += x.clone();
                }
            }
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if !terms.is_empty() {
            derivs.push((a.tgt, a.src, terms));
        }
    }

    let mut cartan = vec![vec![0usize; n]; n];
    let mut dim = 0;
    for i in 0..n {
        for j in 0..n {
            let cols: Vec<&Vec<usize>> = paths.iter().filter(|(s, t, _)| *s == i && *t == j).map(|x| &x.2).collect();
            let col_of: HashMap<&Vec<usize>, usize> = cols.iter().enumerate().map(|(k, p)| (*p, k)).collect();
            let mut rows: Vec<Vec<BigRational>> = Vec::new();
            for (rs, re, terms) in &derivs {
                for (us, ut, u) in &paths {
                    if *us != i || ut != rs {
                        continue;
                    }
                    for (vs, vt, v) in &paths {
                        if vs != re || *vt != j {
                            continue;
                        }
                        let mut row = vec![BigRational::zero(); cols.len()];
                        let mut any = false;
                        for (p, x) in terms {
                            let full: Vec<usize> = u.iter().chain(p).chain(v).copied().collect();
                            if let Some(&c) = col_of.get(&full) {
                                row[c] += x.clone();
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
            let r = rank(rows, cols.len());
            cartan[j][i] = cols.len() - r;
            dim += cols.len() - r;
        }
    }
    (dim, cartan)
}

fn rank(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Matrix mutation written out from the definition.
pub fn naive_mutate(b: &[Vec<i32>], k: usize) -> Vec<Vec<i32>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// Lexicographically least relabeled matrix over all `n!` orderings.
pub fn naive_code(b: &[Vec<i32>]) -> Vec<i32> {
    let n = b.len();
    let mut best: Option<Vec<i32>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let code: Vec<i32> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| b[p[i]][p[j]]).collect();
        if best.as_ref().is_none_or(|x| code < *x) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Size of the mutation class by plain BFS with `n!` isomorphism tests, or
/// `None` once a weight above 2 shows up (only meaningful for `n >= 3`).
pub fn naive_class(q: &Quiver) -> Option<BTreeSet<Vec<i32>>> {
    let n = q.n();
    let start = q.matrix().to_vec();
    let mut seen = BTreeSet::from([naive_code(&start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for k in 0..n {
            let m = naive_mutate(&b, k);
            if m.iter().flatten().any(|x| x.abs() > 2) {
                return None;
            }
            if seen.insert(naive_code(&m)) {
                queue.push_back(m);
            }
        }
    }
    Some(seen)
}

/// Indecomposables of the cyclic Nakayama algebra with `d` vertices and
/// Loewy length `d - 1`, by listing uniserials, with the translate taken as
/// the rotation of the composition series by one vertex.
pub fn nakayama_oracle(d: usize) -> (usize, usize) {
    let loewy = d - 1;
    let mut stable = BTreeSet::new();
    for start in 0..d {
        for len in 1..loewy {
            stable.insert((start, len));
        }
    }
    let tau = |(s, l): (usize, usize)| ((s + 1) % d, l);
    let mut period = 1;
    let first = *stable.iter().next().expect("d >= 3");
    let mut x = tau(first);
    while x != first {
        x = tau(x);
        period += 1;
    }
    (stable.len(), period)
}

pub fn q(labels: &[&str], arrows: &[(usize, usize, u32)]) -> Quiver {
    Quiver::from_arrows(labels.iter().map(|s| s.to_string()).collect(), arrows).expect("valid quiver")
}

/// The 1-based quiver with arrows `i -> j` of weight 1.
pub fn q1(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(usize, usize, u32)> = arrows.iter().map(|&(i, j)| (i - 1, j - 1, 1)).collect();
    Quiver::from_arrows(labels, &arrows).expect("valid quiver")
}

/// The six-vertex strip of four triangles drawn in the example of a
/// non-simple polygon tree.
pub fn strip_of_four_triangles() -> Quiver {
    // a b c d e f, triangles abc, bcd, cde, def
    q(
        &["a", "b", "c", "d", "e", "f"],
        &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1), (3, 1, 1), (3, 4, 1), (4, 2, 1), (4, 5, 1), (5, 3, 1)],
    )
}

/// Specs of the corpus: up to four components of sizes 3, 4 and 5.
pub fn corpus() -> Vec<PolygonTreeSpec> {
    enumerate_specs(4, &[3, 4, 5])
}

pub fn corpus_qps_up_to(max_vertices: usize) -> Vec<Qp> {
    corpus()
        .into_iter()
        .filter(|s| s.vertex_count() <= max_vertices)
        .map(|s| build_polygon_tree(&s).expect("corpus spec builds"))
        .collect()
}
