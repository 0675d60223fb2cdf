//! Floriated and polygon-tree quivers.
//!
//! Component `c` of a polygon tree is an oriented cycle `v_1 -> v_2 -> ... ->
//! v_m -> v_1`; its local arrow `j` (0-based) runs from `v_{j+1}` to `v_{j+2}`.
//! Component `c >= 1` is glued to an earlier host by identifying its own arrow
//! 0 with a host arrow that is not glued yet. Fresh vertices are named
//! `v{c}_{j}` and fresh arrows `a{c}_{j}`; identified items keep the host name.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::PolygonError;
use crate::qp::{Coeff, Potential, Qp, QpArrow};
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gluing {
    pub host: usize,
    pub arrow: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolygonTreeSpec {
    pub components: Vec<usize>,
    /// `gluings[i - 1]` attaches component `i`.
    #[serde(default)]
    pub gluings: Vec<Gluing>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Petal {
    /// 1-based position on the central cycle; the petal shares `v_p -> v_{p+1}`.
    pub position: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FloriatedSpec {
    pub m0: usize,
    #[serde(default)]
    pub petals: Vec<Petal>,
}

impl FloriatedSpec {
    pub fn new(m0: usize, petals: &[(usize, usize)]) -> Self {
        FloriatedSpec {
            m0,
            petals: petals.iter().map(|&(position, size)| Petal { position, size }).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), PolygonError> {
        if self.m0 < 3 {
            return Err(PolygonError::ComponentTooSmall(self.m0));
        }
        let mut last = 0;
        for p in &self.petals {
            if p.position == 0 || p.position > self.m0 || p.position <= last {
                return Err(PolygonError::InvalidPosition(p.position));
            }
            if p.size < 3 {
                return Err(PolygonError::PetalTooSmall(p.size));
            }
            last = p.position;
        }
        Ok(())
    }

    pub fn to_tree_spec(&self) -> Result<PolygonTreeSpec, PolygonError> {
        self.validate()?;
        let mut components = vec![self.m0];
        let mut gluings = Vec::new();
        for p in &self.petals {
            components.push(p.size);
            gluings.push(Gluing { host: 0, arrow: p.position - 1 });
        }
        Ok(PolygonTreeSpec { components, gluings })
    }

    /// All petals are triangles: the shape of cluster-tilted algebras of type D.
    pub fn type_d_candidate(&self) -> bool {
        self.petals.iter().all(|p| p.size == 3)
    }
}

/// A built polygon tree with its component layout.
#[derive(Clone, Debug)]
pub struct PolygonTree {
    pub spec: PolygonTreeSpec,
    pub qp: Qp,
    /// Vertex indices of each component in local order `v_1, ..., v_m`.
    pub cycles: Vec<Vec<usize>>,
    /// Arrow names of each component, local arrow `j` at position `j`.
    pub cycle_arrows: Vec<Vec<String>>,
}

impl PolygonTreeSpec {
    pub fn new(components: &[usize], gluings: &[(usize, usize)]) -> Self {
        PolygonTreeSpec {
            components: components.to_vec(),
            gluings: gluings.iter().map(|&(host, arrow)| Gluing { host, arrow }).collect(),
        }
    }

    pub fn single(m: usize) -> Self {
        PolygonTreeSpec { components: vec![m], gluings: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), PolygonError> {
        if self.components.is_empty() {
            return Err(PolygonError::NotPolygonTree("no components".into()));
        }
        if let Some(&m) = self.components.iter().find(|&&m| m < 3) {
            return Err(PolygonError::ComponentTooSmall(m));
        }
        if self.gluings.len() + 1 != self.components.len() {
            return Err(PolygonError::GluingCount { expected: self.components.len() - 1, got: self.gluings.len() });
        }
        let mut used: BTreeSet<(usize, usize)> = (1..self.components.len()).map(|i| (i, 0)).collect();
        for (k, g) in self.gluings.iter().enumerate() {
            let child = k + 1;
            if g.host >= child {
                return Err(PolygonError::NonTreeGluing(child));
            }
            if g.arrow >= self.components[g.host] {
                return Err(PolygonError::InvalidPosition(g.arrow));
            }
            if !used.insert((g.host, g.arrow)) {
                return Err(PolygonError::GluedArrowReuse { host: g.host, arrow: g.arrow });
            }
        }
        Ok(())
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Glued arrow positions on each component, keyed by the neighbouring component.
    pub fn glue_positions(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.components.len()];
        for (k, g) in self.gluings.iter().enumerate() {
            let child = k + 1;
            out[g.host].push((child, g.arrow));
            out[child].push((g.host, 0));
        }
        out
    }

    pub fn neighbours(&self, c: usize) -> Vec<usize> {
        self.glue_positions()[c].iter().map(|&(n, _)| n).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().sum::<usize>() - 2 * self.gluings.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.components.iter().sum::<usize>() - self.gluings.len()
    }
}

/// Every spec with `1..=max_components` components of the given sizes, in a
/// fixed order. Isomorphic quivers appear several times on purpose.
/// Every floriated spec with `3 <= m0 <= max_m0`, at most `max_petals`
/// petals at increasing positions, and petal sizes taken from `sizes`.
pub fn enumerate_floriated(max_m0: usize, max_petals: usize, sizes: &[usize]) -> Vec<FloriatedSpec> {
    fn rec(m0: usize, from: usize, left: usize, sizes: &[usize], cur: &mut Vec<Petal>, out: &mut Vec<FloriatedSpec>) {
        out.push(FloriatedSpec { m0, petals: cur.clone() });
        if left == 0 {
            return;
        }
        for position in from..=m0 {
            for &size in sizes {
                cur.push(Petal { position, size });
                rec(m0, position + 1, left - 1, sizes, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for m0 in 3..=max_m0 {
        rec(m0, 1, max_petals, sizes, &mut Vec::new(), &mut out);
    }
    out
}

pub fn enumerate_specs(max_components: usize, sizes: &[usize]) -> Vec<PolygonTreeSpec> {
    fn rec(comps: &[usize], glue: &mut Vec<Gluing>, used: &mut BTreeSet<(usize, usize)>, out: &mut Vec<PolygonTreeSpec>) {
        let i = glue.len() + 1;
        if i == comps.len() {
            out.push(PolygonTreeSpec { components: comps.to_vec(), gluings: glue.clone() });
            return;
        }
        for host in 0..i {
            for arrow in 0..comps[host] {
                if used.contains(&(host, arrow)) || (host > 0 && arrow == 0) {
                    continue;
                }
                used.insert((host, arrow));
                glue.push(Gluing { host, arrow });
                rec(comps, glue, used, out);
                glue.pop();
                used.remove(&(host, arrow));
            }
        }
    }
    let mut out = Vec::new();
    for k in 1..=max_components {
        let mut comps = vec![sizes[0]; k];
        let mut idx = vec![0usize; k];
        loop {
            for (c, &i) in comps.iter_mut().zip(&idx) {
                *c = sizes[i];
            }
            rec(&comps, &mut Vec::new(), &mut BTreeSet::new(), &mut out);
            // odometer over size choices
            let mut j = k;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < sizes.len() {
                    break;
                }
                idx[j] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    out
}

/// Builds the glued quiver with its primitive potential (all coefficients 1).
pub fn build_polygon_tree(spec: &PolygonTreeSpec) -> Result<Qp, PolygonError> {
    Ok(build_layout(spec)?.qp)
}

pub fn build_layout(spec: &PolygonTreeSpec) -> Result<PolygonTree, PolygonError> {
    spec.validate()?;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<QpArrow> = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut cycle_arrows: Vec<Vec<String>> = Vec::new();
    for (c, &m) in spec.components.iter().enumerate() {
        let (mut vs, mut names) = (Vec::with_capacity(m), Vec::with_capacity(m));
        let first_new = if c == 0 {
            1
        } else {
            let g = spec.gluings[c - 1];
            let host = &cycles[g.host];
            let hm = host.len();
            vs.push(host[g.arrow]);
            vs.push(host[(g.arrow + 1) % hm]);
            names.push(cycle_arrows[g.host][g.arrow].clone());
            3
        };
        for j in first_new..=m {
            if c == 0 || j >= 3 {
                vs.push(vertices.len());
                vertices.push(format!("v{c}_{j}"));
            }
        }
        let first_arrow = if c == 0 { 0 } else { 1 };
        for j in first_arrow..m {
            let name = format!("a{c}_{j}");
            arrows.push(QpArrow { name: name.clone(), src: vs[j], tgt: vs[(j + 1) % m] });
            names.push(name);
        }
        cycles.push(vs);
        cycle_arrows.push(names);
    }
    let potential = Potential::from_terms(cycle_arrows.iter().map(|c| (c.clone(), Coeff::one())));
    let qp = Qp::new(vertices, arrows, potential)?;
    Ok(PolygonTree { spec: spec.clone(), qp, cycles, cycle_arrows })
}

pub fn build_floriated(spec: &FloriatedSpec) -> Result<Qp, PolygonError> {
    build_polygon_tree(&spec.to_tree_spec()?)
}

/// `(m, N, d_Q)`: total cycle length, number of gluings, and the number of
/// consecutive glued-arrow distances equal to 1 summed over all components.
pub fn d_invariant(spec: &PolygonTreeSpec) -> Result<(usize, usize, usize), PolygonError> {
    spec.validate()?;
    let m = spec.components.iter().sum();
    let n = spec.gluings.len();
    let mut dq = 0;
    for (c, glued) in spec.glue_positions().iter().enumerate() {
        dq += neighbourhood_d(spec.components[c], glued.iter().map(|&(_, p)| p).collect());
    }
    Ok((m, n, dq))
}

/// `d` of a floriated neighbourhood with central size `m0` and glued positions.
pub fn neighbourhood_d(m0: usize, mut pos: Vec<usize>) -> usize {
    pos.sort_unstable();
    let n = pos.len();
    if n < 2 {
        // a single petal has d_1 = m0 >= 3
        return 0;
    }
    let mut count = 0;
    for j in 0..n {
        let d = if j + 1 < n { pos[j + 1] - pos[j] } else { pos[0] + m0 - pos[n - 1] };
        if d == 1 {
            count += 1;
        }
    }
    count
}

/// How the left form of the banned configurations is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure5Reading {
    /// Both banned forms are chains `X1 - X2 - X3 - X4` whose consecutive glued
    /// arrows are adjacent on `X2` and on `X3`; the left form is the case where
    /// the three glued arrows share a vertex. This is the reading that makes
    /// the strip of four triangles non-simple.
    #[default]
    Chain,
    /// Alternative reading: chains as above whose glued arrows do not share a
    /// common vertex, plus one component carrying three neighbours on
    /// pairwise adjacent arrows.
    Star,
}

fn adjacent(m: usize, i: usize, j: usize) -> bool {
    let d = (i + m - j) % m;
    d == 1 || d == m - 1
}

/// A banned configuration, as four component indices, if one embeds.
pub fn simple_witness(spec: &PolygonTreeSpec, reading: Figure5Reading) -> Option<Vec<usize>> {
    let glued = spec.glue_positions();
    let pos = |c: usize, nb: usize| glued[c].iter().find(|&&(x, _)| x == nb).map(|&(_, p)| p).expect("neighbour");
    let ms = &spec.components;
    let layout = match reading {
        Figure5Reading::Star => build_layout(spec).ok(),
        Figure5Reading::Chain => None,
    };
    if reading == Figure5Reading::Star && layout.is_none() {
        return None;
    }
    for x2 in 0..ms.len() {
        for &(x1, _) in &glued[x2] {
            for &(x3, _) in &glued[x2] {
                if x3 == x1 || !adjacent(ms[x2], pos(x2, x1), pos(x2, x3)) {
                    continue;
                }
                for &(x4, _) in &glued[x3] {
                    if x4 == x2 || !adjacent(ms[x3], pos(x3, x2), pos(x3, x4)) {
                        continue;
                    }
                    match reading {
                        Figure5Reading::Chain => return Some(vec![x1, x2, x3, x4]),
                        Figure5Reading::Star => {
                            let arrow = |c: usize, p: usize| {
                                let cyc = &layout.as_ref().expect("layout").cycles[c];
                                (cyc[p], cyc[(p + 1) % cyc.len()])
                            };
                            let g12 = arrow(x2, pos(x2, x1));
                            let g23 = arrow(x2, pos(x2, x3));
                            let g34 = arrow(x3, pos(x3, x4));
                            let common = [g12.0, g12.1]
                                .into_iter()
                                .any(|v| (g23.0 == v || g23.1 == v) && (g34.0 == v || g34.1 == v));
                            if !common {
                                return Some(vec![x1, x2, x3, x4]);
                            }
                        }
                    }
                }
            }
        }
    }
    if reading == Figure5Reading::Star {
        for x in 0..ms.len() {
            let g = &glued[x];
            for a in 0..g.len() {
                for b in a + 1..g.len() {
                    for c in b + 1..g.len() {
                        let (pa, pb, pc) = (g[a].1, g[b].1, g[c].1);
                        if adjacent(ms[x], pa, pb) && adjacent(ms[x], pb, pc) && adjacent(ms[x], pa, pc) {
                            return Some(vec![x, g[a].0, g[b].0, g[c].0]);
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_simple(spec: &PolygonTreeSpec) -> bool {
    simple_witness(spec, Figure5Reading::Chain).is_none()
}

pub fn is_simple_with(spec: &PolygonTreeSpec, reading: Figure5Reading) -> bool {
    simple_witness(spec, reading).is_none()
}

fn adjacency(q: &Quiver) -> Vec<Vec<bool>> {
    let n = q.n();
    (0..n).map(|i| (0..n).map(|j| q.b(i, j) != 0).collect()).collect()
}

/// Every chordless cycle of the underlying simple graph, oriented or not,
/// as a vertex sequence starting at its smallest vertex.
pub fn chordless_cycles(q: &Quiver) -> Vec<Vec<usize>> {
    let adj = adjacency(q);
    let n = q.n();
    let mut out = Vec::new();
    for s in 0..n {
        let mut path = vec![s];
        extend(&adj, s, &mut path, &mut out);
    }
    out
}

fn extend(adj: &[Vec<bool>], s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *path.last().expect("nonempty");
    for x in 0..adj.len() {
        if x <= s || !adj[last][x] || path.contains(&x) {
            continue;
        }
        // x may touch only its predecessor, plus s when it closes the cycle
        let k = path.len();
        if k >= 2 && path[1..k - 1].iter().any(|&p| adj[p][x]) {
            continue;
        }
        if k >= 2 && adj[s][x] {
            if path[1] < x {
                let mut c = path.clone();
                c.push(x);
                out.push(c);
            }
            continue;
        }
        path.push(x);
        extend(adj, s, path, out);
        path.pop();
    }
}

/// Orients a chordless cycle along its arrows, or returns `None` when unoriented.
pub fn orient(q: &Quiver, c: &[usize]) -> Option<Vec<usize>> {
    let l = c.len();
    if (0..l).all(|i| q.b(c[i], c[(i + 1) % l]) > 0) {
        return Some(c.to_vec());
    }
    if (0..l).all(|i| q.b(c[(i + 1) % l], c[i]) > 0) {
        let mut r = c.to_vec();
        r.reverse();
        return Some(r);
    }
    None
}

pub fn is_cyclically_oriented(q: &Quiver) -> bool {
    chordless_cycles(q).iter().all(|c| orient(q, c).is_some())
}

/// Sum of all oriented chordless cycles with coefficient 1, using the arrow
/// names of [`Qp::from_quiver`].
pub fn primitive_potential(q: &Quiver) -> Result<Potential, PolygonError> {
    let mut w = Potential::new();
    for c in chordless_cycles(q) {
        let o = orient(q, &c).ok_or_else(|| PolygonError::NotCyclicallyOriented(labels(q, &c)))?;
        let l = o.len();
        let names: Vec<String> = (0..l)
            .map(|i| {
                let (s, t) = (o[i], o[(i + 1) % l]);
                let base = format!("{}>{}", q.label(s), q.label(t));
                if q.b(s, t) == 1 {
                    base
                } else {
                    format!("{base}#1")
                }
            })
            .collect();
        w.add_term(&names, Coeff::one());
    }
    Ok(w)
}

/// The quiver with its primitive potential.
pub fn primitive_qp(q: &Quiver) -> Result<Qp, PolygonError> {
    Ok(Qp::from_quiver(q, primitive_potential(q)?)?)
}

fn labels(q: &Quiver, c: &[usize]) -> String {
    c.iter().map(|&i| q.label(i)).collect::<Vec<_>>().join(" ")
}

/// Result of recognizing a quiver as a polygon tree.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub spec: PolygonTreeSpec,
    /// Vertex indices (of the input quiver) of each component in local order.
    pub cycles: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Shared arrow `(src, tgt)` between two glued components.
    pub fn glued_arrow(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (child, host) = if a > b { (a, b) } else { (b, a) };
        let g = self.spec.gluings.get(child.checked_sub(1)?)?;
        if g.host != host {
            return None;
        }
        let c = &self.cycles[child];
        Some((c[0], c[1]))
    }
}

fn cycle_arrows(c: &[usize]) -> Vec<(usize, usize)> {
    let l = c.len();
    (0..l).map(|i| (c[i], c[(i + 1) % l])).collect()
}

/// Recovers gluing data from a raw quiver.
pub fn decompose(q: &Quiver) -> Result<Decomposition, PolygonError> {
    if q.max_weight() > 1 {
        return Err(PolygonError::NotPolygonTree("an arrow has weight above 1".into()));
    }
    let mut cycles = Vec::new();
    for c in chordless_cycles(q) {
        match orient(q, &c) {
            Some(o) => cycles.push(o),
            None => return Err(PolygonError::NotPolygonTree(format!("unoriented chordless cycle {}", labels(q, &c)))),
        }
    }
    if cycles.is_empty() {
        return Err(PolygonError::NotPolygonTree("no cycles".into()));
    }
    let sets: Vec<BTreeSet<(usize, usize)>> = cycles.iter().map(|c| cycle_arrows(c).into_iter().collect()).collect();
    let covered: BTreeSet<(usize, usize)> = sets.iter().flatten().copied().collect();
    if let Some((s, t, _)) = q.arrows().into_iter().find(|&(s, t, _)| !covered.contains(&(s, t))) {
        return Err(PolygonError::NotPolygonTree(format!(
            "arrow {} -> {} lies on no chordless cycle",
            q.label(s),
            q.label(t)
        )));
    }
    let k = cycles.len();
    let mut edges: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); k];
    let mut edge_count = 0;
    for i in 0..k {
        for j in i + 1..k {
            let shared: Vec<_> = sets[i].intersection(&sets[j]).copied().collect();
            if shared.len() > 1 {
                return Err(PolygonError::NotPolygonTree(format!(
                    "cycles {} and {} share {} arrows",
                    labels(q, &cycles[i]),
                    labels(q, &cycles[j]),
                    shared.len()
                )));
            }
            if let Some(&a) = shared.first() {
                edges[i].push((j, a));
                edges[j].push((i, a));
                edge_count += 1;
            }
        }
    }
    if edge_count + 1 != k {
        return Err(PolygonError::NotPolygonTree("cycle intersection graph is not a tree".into()));
    }
    let total: usize = cycles.iter().map(|c| c.len()).sum();
    if q.n() != total - 2 * (k - 1) {
        return Err(PolygonError::NotPolygonTree("cycles meet outside their glued arrows".into()));
    }
    // root: the cycle with the smallest sorted vertex set
    let root = (0..k)
        .min_by_key(|&i| {
            let mut s = cycles[i].clone();
            s.sort_unstable();
            s
        })
        .expect("nonempty");
    let rotate_to = |c: &[usize], v: usize| -> Vec<usize> {
        let p = c.iter().position(|&x| x == v).expect("vertex on cycle");
        c[p..].iter().chain(c[..p].iter()).copied().collect()
    };
    let root_start = *cycles[root].iter().min().expect("nonempty");
    let mut order: Vec<usize> = vec![root];
    let mut local: Vec<Vec<usize>> = vec![rotate_to(&cycles[root], root_start)];
    let mut gluings = Vec::new();
    let mut seen = vec![false; k];
    seen[root] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(pi) = queue.pop_front() {
        let parent = order[pi];
        let plocal = local[pi].clone();
        let pm = plocal.len();
        let mut kids: Vec<(usize, usize, (usize, usize))> = Vec::new();
        for &(child, a) in &edges[parent] {
            if seen[child] {
                continue;
            }
            let pos = (0..pm).find(|&j| (plocal[j], plocal[(j + 1) % pm]) == a).expect("shared arrow on parent");
            kids.push((pos, child, a));
        }
        kids.sort_unstable();
        for (pos, child, a) in kids {
            seen[child] = true;
            order.push(child);
            local.push(rotate_to(&cycles[child], a.0));
            gluings.push(Gluing { host: pi, arrow: pos });
            queue.push_back(order.len() - 1);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(PolygonError::NotPolygonTree("cycle intersection graph is disconnected".into()));
    }
    let spec = PolygonTreeSpec { components: local.iter().map(|c| c.len()).collect(), gluings };
    spec.validate()?;
    Ok(Decomposition { spec, cycles: local })
}

/// Cluster-tilted algebra of a canonical algebra with weights `(2, p2, p3)`.
#[derive(Clone, Debug)]
pub struct CanonicalCt {
    pub weights: (usize, usize, usize),
    pub qp: Qp,
    /// The middle vertex of the short arm.
    pub c1: String,
    /// Relations as sums of paths (arrow names, first arrow first).
    pub relations: Vec<Vec<(Coeff, Vec<String>)>>,
}

/// Source `s`, sink `t` of the three arms, the short arm `s -> c1 -> t`, arms of
/// `p2` and `p3` arrows, and the connecting arrow `eta: t -> s`.
pub fn build_canonical_ct(p1: usize, p2: usize, p3: usize) -> Result<CanonicalCt, PolygonError> {
    if p1 != 2 {
        return Err(PolygonError::UnsupportedWeight(p1));
    }
    if p2 < 2 || p3 < 2 {
        return Err(PolygonError::InvalidPosition(p2.min(p3)));
    }
    let mut vertices = vec!["s".to_string(), "t".to_string(), "c1".to_string()];
    let mut arrows = vec![
        QpArrow { name: "beta".into(), src: 0, tgt: 2 },
        QpArrow { name: "alpha".into(), src: 2, tgt: 1 },
        QpArrow { name: "eta".into(), src: 1, tgt: 0 },
    ];
    let mut arm_paths: Vec<Vec<String>> = vec![vec!["beta".into(), "alpha".into()]];
    for (arm, p) in [(2usize, p2), (3usize, p3)] {
        let mut prev = 0usize;
        let mut names = Vec::new();
        for j in 1..=p {
            let next = if j == p {
                1
            } else {
                vertices.push(format!("x{arm}_{j}"));
                vertices.len() - 1
            };
            arrows.push(QpArrow { name: format!("a{arm}_{j}"), src: prev, tgt: next });
            names.push(format!("a{arm}_{j}"));
            prev = next;
        }
        arm_paths.push(names);
    }
    let mut relations = vec![arm_paths.iter().map(|p| (Coeff::one(), p.clone())).collect::<Vec<_>>()];
    for arm in &arm_paths {
        // the cycle arm + eta; every path of length |arm| through eta is a relation
        let mut cyc = arm.clone();
        cyc.push("eta".into());
        let l = cyc.len();
        let eta_at = l - 1;
        for start in 0..l {
            let path: Vec<String> = (0..l - 1).map(|i| cyc[(start + i) % l].clone()).collect();
            if (0..l - 1).any(|i| (start + i) % l == eta_at) {
                relations.push(vec![(Coeff::one(), path)]);
            }
        }
    }
    let qp = Qp::new(vertices, arrows, Potential::new())?;
    Ok(CanonicalCt { weights: (p1, p2, p3), qp, c1: "c1".into(), relations })
}

impl CanonicalCt {
    /// The quiver left after removing `c1` and its two arrows.
    pub fn drop_c1(&self) -> Result<Quiver, PolygonError> {
        let i = self.qp.vertex_index(&self.c1)?;
        Ok(self.qp.delete_vertices(&[i]).underlying_quiver()?)
    }
}

/// Vertex indices of a [`Qp`] by label.
pub fn index_map(qp: &Qp) -> HashMap<String, usize> {
    qp.vertices().iter().enumerate().map(|(i, v)| (v.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glued_triangles_counts() {
        let qp = build_polygon_tree(&PolygonTreeSpec::new(&[3, 3], &[(0, 0)])).unwrap();
        assert_eq!(qp.n(), 4);
        assert_eq!(qp.arrows().len(), 5);
        let q = qp.underlying_quiver().unwrap();
        assert_eq!(chordless_cycles(&q).len(), 2);
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_invariant(&PolygonTreeSpec::single(7)).unwrap(), (7, 0, 0));
        let f = FloriatedSpec::new(4, &[(1, 3), (2, 3)]).to_tree_spec().unwrap();
        assert_eq!(d_invariant(&f).unwrap(), (10, 2, 1));
        assert_eq!(d_invariant(&PolygonTreeSpec::new(&[4, 4], &[(0, 0)])).unwrap(), (8, 1, 0));
    }

    #[test]
    fn reuse_is_rejected() {
        let s = PolygonTreeSpec::new(&[3, 3, 3], &[(0, 0), (0, 0)]);
        assert!(matches!(s.validate(), Err(PolygonError::GluedArrowReuse { .. })));
        let s = PolygonTreeSpec::new(&[3, 3, 3], &[(0, 0), (1, 0)]);
        assert!(matches!(s.validate(), Err(PolygonError::GluedArrowReuse { .. })));
    }

    #[test]
    fn canonical_sizes() {
        assert_eq!(build_canonical_ct(2, 2, 2).unwrap().qp.n(), 5);
        assert_eq!(build_canonical_ct(2, 3, 3).unwrap().qp.n(), 7);
        assert!(matches!(build_canonical_ct(3, 3, 3), Err(PolygonError::UnsupportedWeight(3))));
    }
}
