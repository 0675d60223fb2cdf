//! Canonical forms for isomorphism testing of small quivers.
//!
//! Colour refinement splits vertices by weighted in/out neighbourhoods, then
//! the search individualizes vertices of the first non-trivial cell and keeps
//! the lexicographically smallest upper-triangle code over every leaf. Since
//! refinement never looks at labels, the code is a class function; vertices
//! with identical neighbourhoods ("twins") are tried only once.

use crate::error::QuiverError;
use crate::quiver::Quiver;

/// Default vertex bound for [`canonical_form`].
pub const CANON_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalQuiver {
    /// Vertex count followed by the upper triangle of the permuted matrix.
    pub code: Vec<i8>,
    /// `witness[pos]` is the vertex index placed at position `pos`.
    pub witness: Vec<usize>,
}

impl CanonicalQuiver {
    pub fn hex(&self) -> String {
        code_hex(&self.code)
    }
}

pub fn code_hex(code: &[i8]) -> String {
    hex::encode(code.iter().map(|&x| x as u8).collect::<Vec<u8>>())
}

pub fn code_from_hex(s: &str) -> Option<Vec<i8>> {
    hex::decode(s).ok().map(|v| v.into_iter().map(|x| x as i8).collect())
}

/// Rebuilds a quiver (labels `0..n`) from a canonical code.
pub fn quiver_from_code(code: &[i8]) -> Quiver {
    let n = code[0] as usize;
    let mut b = vec![vec![0i32; n]; n];
    let mut it = code[1..].iter();
    for i in 0..n {
        for j in i + 1..n {
            let w = i32::from(*it.next().expect("code too short"));
            b[i][j] = w;
            b[j][i] = -w;
        }
    }
    Quiver::from_matrix((0..n).map(|i| i.to_string()).collect(), b).expect("code encodes a skew matrix")
}

pub fn canonical_form(q: &Quiver) -> Result<CanonicalQuiver, QuiverError> {
    canonical_form_bounded(q, CANON_BOUND)
}

pub fn canonical_form_bounded(q: &Quiver, bound: usize) -> Result<CanonicalQuiver, QuiverError> {
    let n = q.n();
    if n > bound {
        return Err(QuiverError::TooLarge { n, bound });
    }
    if n > 127 {
        return Err(QuiverError::TooLarge { n, bound: 127 });
    }
    let m = q.matrix();
    if m.iter().flatten().any(|w| w.unsigned_abs() > 127) {
        return Err(QuiverError::Malformed("arrow weight exceeds code range".into()));
    }
    let colours = refine(m, vec![0; n]);
    let mut best: Option<(Vec<i8>, Vec<usize>)> = None;
    search(m, colours, &mut best);
    let (code, witness) = best.unwrap_or_else(|| (vec![0], Vec::new()));
    Ok(CanonicalQuiver { code, witness })
}

/// Equal codes, computed without the bound check for internal callers.
pub fn code_of(q: &Quiver) -> Vec<i8> {
    canonical_form_bounded(q, usize::MAX).expect("weights fit the code range").code
}

pub fn is_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    a.n() == b.n() && code_of(a) == code_of(b)
}

fn rank(sigs: &[Vec<i64>]) -> Vec<u32> {
    let mut sorted: Vec<&Vec<i64>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(&s).expect("present") as u32).collect()
}

fn refine(m: &[Vec<i32>], mut colours: Vec<u32>) -> Vec<u32> {
    let n = colours.len();
    let mut classes = count_classes(&colours);
    loop {
        let sigs: Vec<Vec<i64>> = (0..n)
            .map(|v| {
                let mut nb: Vec<i64> = (0..n)
                    .filter(|&u| m[v][u] != 0)
                    .map(|u| i64::from(colours[u]) * 512 + i64::from(m[v][u]) + 256)
                    .collect();
                nb.sort_unstable();
                let mut s = Vec::with_capacity(nb.len() + 1);
                s.push(i64::from(colours[v]));
                s.extend(nb);
                s
            })
            .collect();
        let next = rank(&sigs);
        let c = count_classes(&next);
        colours = next;
        if c == classes {
            return colours;
        }
        classes = c;
    }
}

fn count_classes(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn twins(m: &[Vec<i32>], a: usize, b: usize) -> bool {
    m[a][b] == 0 && (0..m.len()).all(|x| x == a || x == b || m[a][x] == m[b][x])
}

fn search(m: &[Vec<i32>], colours: Vec<u32>, best: &mut Option<(Vec<i8>, Vec<usize>)>) {
    let n = colours.len();
    // first colour class with more than one member
    let mut counts = vec![0usize; n];
    for &c in &colours {
        counts[c as usize] += 1;
    }
    let target = (0..n).find(|&c| counts[c] > 1);
    match target {
        None => {
            let mut order = vec![0usize; n];
            for (v, &c) in colours.iter().enumerate() {
                order[c as usize] = v;
            }
            let code = encode(m, &order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
        }
        Some(cell) => {
            let members: Vec<usize> = (0..n).filter(|&v| colours[v] as usize == cell).collect();
            let mut tried: Vec<usize> = Vec::new();
            for &v in &members {
                if tried.iter().any(|&t| twins(m, t, v)) {
                    continue;
                }
                tried.push(v);
                let sigs: Vec<Vec<i64>> = (0..n)
                    .map(|u| {
                        let bump = i64::from(colours[u] as usize == cell && u != v);
                        vec![i64::from(colours[u]) * 2 + bump]
                    })
                    .collect();
                let c = refine(m, rank(&sigs));
                search(m, c, best);
            }
        }
    }
}

fn encode(m: &[Vec<i32>], order: &[usize]) -> Vec<i8> {
    let n = order.len();
    let mut code = Vec::with_capacity(1 + n * (n - 1) / 2);
    code.push(n as i8);
    for i in 0..n {
        for j in i + 1..n {
            code.push(m[order[i]][order[j]] as i8);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::quiver_1based;

    #[test]
    fn relabeled_paths_agree_and_orientations_differ() {
        let a = quiver_1based(3, &[(1, 2, 1), (2, 3, 1)]);
        let b = quiver_1based(3, &[(3, 2, 1), (2, 1, 1)]);
        let c = quiver_1based(3, &[(1, 2, 1), (3, 2, 1)]);
        assert_eq!(canonical_form(&a).unwrap().code, canonical_form(&b).unwrap().code);
        assert_ne!(canonical_form(&a).unwrap().code, canonical_form(&c).unwrap().code);
    }

    #[test]
    fn code_round_trips_to_an_isomorphic_quiver() {
        let q = quiver_1based(4, &[(1, 2, 1), (2, 3, 2), (3, 1, 1), (3, 4, 1)]);
        let c = canonical_form(&q).unwrap();
        let back = quiver_from_code(&c.code);
        assert_eq!(code_of(&back), c.code);
        assert_eq!(q.permuted(&c.witness).matrix(), back.matrix());
    }

    #[test]
    fn isolated_vertices_do_not_explode() {
        let q = Quiver::from_arrows((0..12).map(|i| i.to_string()).collect(), &[]).unwrap();
        assert_eq!(canonical_form(&q).unwrap().code.len(), 1 + 66);
    }

    #[test]
    fn bound_is_enforced() {
        let q = Quiver::from_arrows((0..13).map(|i| i.to_string()).collect(), &[]).unwrap();
        assert!(matches!(canonical_form(&q), Err(QuiverError::TooLarge { .. })));
    }
}
