//! Weighted quivers stored as skew-symmetric integer matrices.
//!
//! `b[i][j] = w > 0` means `w` arrows `i -> j`; the mirror entry holds `-w`.
//! Loops and oriented 2-cycles cannot be expressed in this format, which is
//! the point: validation rejects them before a matrix is ever built.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

/// A finite quiver without loops or oriented 2-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    labels: Vec<String>,
    b: Vec<Vec<i32>>,
}

/// Wire format for quivers, shared by the CLI, the HTTP service and the demo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<RawArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub src: String,
    pub tgt: String,
    #[serde(default = "one")]
    pub w: i64,
}

fn one() -> i64 {
    1
}

impl RawArrow {
    fn describe(&self) -> String {
        format!("{} -> {} (w={})", self.src, self.tgt, self.w)
    }
}

impl Quiver {
    /// Checks a raw vertex/arrow list and builds the matrix form.
    pub fn validate(raw: &RawQuiver) -> Result<Quiver, QuiverError> {
        let mut index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let n = raw.vertices.len();
        let mut b = vec![vec![0i32; n]; n];
        for a in &raw.arrows {
            let (Some(&s), Some(&t)) = (index.get(&a.src), index.get(&a.tgt)) else {
                return Err(QuiverError::DanglingEndpoint(a.describe()));
            };
            if a.w < 1 {
                return Err(QuiverError::NonPositiveWeight(a.describe()));
            }
            if s == t {
                return Err(QuiverError::LoopArrow(a.describe()));
            }
            if b[s][t] != 0 {
                return Err(QuiverError::TwoCycle(a.describe()));
            }
            let w = i32::try_from(a.w).map_err(|_| QuiverError::NonPositiveWeight(a.describe()))?;
            b[s][t] = w;
            b[t][s] = -w;
        }
        Ok(Quiver { labels: raw.vertices.clone(), b })
    }

    /// Builds a quiver from labels and `(src, tgt, weight)` triples over label indices.
    /// Parallel records between the same ordered pair are added up.
    pub fn from_arrows(labels: Vec<String>, arrows: &[(usize, usize, u32)]) -> Result<Quiver, QuiverError> {
        let mut raw = RawQuiver { vertices: labels, arrows: Vec::new() };
        let mut acc: Vec<((usize, usize), i64)> = Vec::new();
        for &(s, t, w) in arrows {
            match acc.iter_mut().find(|(k, _)| *k == (s, t)) {
                Some(e) => e.1 += i64::from(w),
                None => acc.push(((s, t), i64::from(w))),
            }
        }
        let n = raw.vertices.len();
        for ((s, t), w) in acc {
            let name = |i: usize| raw.vertices.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
            if s >= n || t >= n {
                return Err(QuiverError::DanglingEndpoint(format!("{} -> {}", name(s), name(t))));
            }
            raw.arrows.push(RawArrow { src: name(s), tgt: name(t), w });
        }
        Quiver::validate(&raw)
    }

    /// Builds directly from a skew-symmetric matrix.
    pub fn from_matrix(labels: Vec<String>, b: Vec<Vec<i32>>) -> Result<Quiver, QuiverError> {
        let n = labels.len();
        if b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(QuiverError::Malformed("matrix shape does not match vertex count".into()));
        }
        for i in 0..n {
            if b[i][i] != 0 {
                return Err(QuiverError::LoopArrow(format!("{} -> {}", labels[i], labels[i])));
            }
            for j in 0..n {
                if b[i][j] != -b[j][i] {
                    return Err(QuiverError::Malformed(format!(
                        "matrix is not skew-symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Quiver { labels, b })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &str) -> Result<usize, QuiverError> {
        self.labels
            .iter()
            .position(|l| l == v)
            .ok_or_else(|| QuiverError::UnknownVertex(v.to_string()))
    }

    /// Signed weight: positive for arrows `i -> j`, negative for `j -> i`.
    pub fn b(&self, i: usize, j: usize) -> i32 {
        self.b[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.b
    }

    /// All arrows as `(src, tgt, weight)`, in row-major order.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for (i, row) in self.b.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if w > 0 {
                    out.push((i, j, w as u32));
                }
            }
        }
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.b.iter().flatten().map(|w| w.unsigned_abs()).max().unwrap_or(0)
    }

    /// Total weight of arrows ending at `k`.
    pub fn in_weight(&self, k: usize) -> u32 {
        (0..self.n()).filter(|&i| self.b[i][k] > 0).map(|i| self.b[i][k] as u32).sum()
    }

    pub fn out_weight(&self, k: usize) -> u32 {
        (0..self.n()).filter(|&j| self.b[k][j] > 0).map(|j| self.b[k][j] as u32).sum()
    }

    /// Undirected neighbours of `k`.
    pub fn neighbours(&self, k: usize) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.b[k][j] != 0).collect()
    }

    /// Fomin-Zelevinsky mutation at the vertex labelled `k`.
    pub fn fz_mutate(&self, k: &str) -> Result<Quiver, QuiverError> {
        Ok(self.mutate_at(self.index_of(k)?))
    }

    /// Matrix mutation at index `k`: for each pair `i -> k -> j` with weights `r`, `s`
    /// the signed weight from `j` to `i` becomes `t - r*s`, and the row and column of
    /// `k` flip sign.
    pub fn mutate_at(&self, k: usize) -> Quiver {
        let n = self.n();
        let mut b = self.b.clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let r = self.b[i][k];
            if r <= 0 {
                continue;
            }
            for j in 0..n {
                if j == k || j == i {
                    continue;
                }
                let s = self.b[k][j];
                if s <= 0 {
                    continue;
                }
                // i -> k -> j adds r*s arrows i -> j, equivalently t(j,i) - r*s.
                b[j][i] -= r * s;
                b[i][j] += r * s;
            }
        }
        for x in 0..n {
            b[k][x] = -self.b[k][x];
            b[x][k] = -self.b[x][k];
        }
        Quiver { labels: self.labels.clone(), b }
    }

    /// Mutation along a sequence of vertex labels, left to right.
    pub fn mutate_seq<S: AsRef<str>>(&self, seq: &[S]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for k in seq {
            q = q.fz_mutate(k.as_ref())?;
        }
        Ok(q)
    }

    /// The opposite quiver.
    pub fn opposite(&self) -> Quiver {
        let n = self.n();
        let b = (0..n).map(|i| (0..n).map(|j| self.b[j][i]).collect()).collect();
        Quiver { labels: self.labels.clone(), b }
    }

    /// Full subquiver on the given vertex indices, in that order.
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let b = keep.iter().map(|&i| keep.iter().map(|&j| self.b[i][j]).collect()).collect();
        Quiver { labels, b }
    }

    /// Same arrows with vertices reordered: new vertex `p` is old vertex `order[p]`.
    pub fn permuted(&self, order: &[usize]) -> Quiver {
        self.induced(order)
    }

    pub fn relabeled(&self, labels: Vec<String>) -> Result<Quiver, QuiverError> {
        if labels.len() != self.n() {
            return Err(QuiverError::Malformed("label count mismatch".into()));
        }
        Quiver::from_matrix(labels, self.b.clone())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.labels.clone(),
            arrows: self
                .arrows()
                .into_iter()
                .map(|(s, t, w)| RawArrow {
                    src: self.labels[s].clone(),
                    tgt: self.labels[t].clone(),
                    w: i64::from(w),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("quiver serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Quiver, QuiverError> {
        let raw: RawQuiver = serde_json::from_str(s).map_err(|e| QuiverError::Malformed(e.to_string()))?;
        Quiver::validate(&raw)
    }

    /// Graphviz rendering; arrows of weight above one carry their weight as a label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Q {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  \"{}\";", escape(l));
        }
        for (s, t, w) in self.arrows() {
            if w == 1 {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(&self.labels[s]), escape(&self.labels[t]));
            } else {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    escape(&self.labels[s]),
                    escape(&self.labels[t]),
                    w
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Convenience constructor used heavily in tests: labels `"1".."n"`, arrows over 1-based labels.
pub fn quiver_1based(n: usize, arrows: &[(usize, usize, u32)]) -> Quiver {
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<_> = arrows.iter().map(|&(s, t, w)| (s - 1, t - 1, w)).collect();
    Quiver::from_arrows(labels, &arrows).expect("test quiver must be valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(vs: &[&str], arrows: &[(&str, &str, i64)]) -> RawQuiver {
        RawQuiver {
            vertices: vs.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(s, t, w)| RawArrow { src: s.into(), tgt: t.into(), w })
                .collect(),
        }
    }

    #[test]
    fn validation_errors_name_the_arrow() {
        assert!(Quiver::validate(&raw(&["1", "2", "3"], &[("1", "2", 1), ("2", "3", 1), ("3", "1", 1)])).is_ok());
        match Quiver::validate(&raw(&["1"], &[("1", "1", 1)])) {
            Err(QuiverError::LoopArrow(a)) => assert!(a.contains("1 -> 1")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Quiver::validate(&raw(&["1", "2"], &[("1", "2", 1), ("2", "1", 1)])),
            Err(QuiverError::TwoCycle(_))
        ));
        assert!(matches!(
            Quiver::validate(&raw(&["1", "2"], &[("1", "2", 0)])),
            Err(QuiverError::NonPositiveWeight(_))
        ));
        assert!(matches!(
            Quiver::validate(&raw(&["1"], &[("1", "9", 1)])),
            Err(QuiverError::DanglingEndpoint(_))
        ));
    }

    #[test]
    fn sink_reflection_and_triangle() {
        let a2 = quiver_1based(2, &[(1, 2, 1)]);
        assert_eq!(a2.fz_mutate("2").unwrap(), quiver_1based(2, &[(2, 1, 1)]));

        let tri = quiver_1based(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]);
        let once = tri.fz_mutate("1").unwrap();
        assert_eq!(once, quiver_1based(3, &[(2, 1, 1), (1, 3, 1)]));
        assert_eq!(once.fz_mutate("1").unwrap(), tri);
    }

    #[test]
    fn dot_labels_double_arrows() {
        let q = quiver_1based(2, &[(1, 2, 2)]);
        assert!(q.to_dot().contains("[label=\"2\"]"));
    }
}
