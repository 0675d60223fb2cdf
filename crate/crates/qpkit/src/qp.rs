//! Quivers with potentials over the rationals.
//!
//! Paths are stored left to right: `[a1, a2, ..., al]` means `a1` first, so
//! `tgt(a_i) = src(a_{i+1})`. Arrows are referred to by name; names are the
//! stable identifiers used for ordering and for the JSON format.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QpError, QuiverError};
use crate::quiver::Quiver;

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_coeff(s: &str) -> Result<Coeff, QpError> {
    let s = s.trim();
    let bad = || QpError::BadCoefficient(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QpArrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Smallest rotation of a cyclic word under lexicographic order on names.
pub fn min_rotation(cycle: &[String]) -> Vec<String> {
    let l = cycle.len();
    let mut best: Option<Vec<String>> = None;
    for s in 0..l {
        let rot: Vec<String> = cycle[s..].iter().chain(cycle[..s].iter()).cloned().collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

/// A finite sum of cyclic paths with nonzero rational coefficients, each cycle
/// kept in its minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potential {
    terms: BTreeMap<Vec<String>, Coeff>,
}

impl Potential {
    pub fn new() -> Self {
        Potential::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<String>, Coeff)>>(it: I) -> Self {
        let mut w = Potential::new();
        for (c, x) in it {
            w.add_term(&c, x);
        }
        w
    }

    /// Adds `x * cycle`, merging cyclically equivalent terms.
    pub fn add_term(&mut self, cycle: &[String], x: Coeff) {
        if x.is_zero() {
            return;
        }
        let key = min_rotation(cycle);
        let slot = self.terms.entry(key.clone()).or_insert_with(Coeff::zero);
        *slot += x;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, cycle: &[String]) -> Option<&Coeff> {
        self.terms.get(&min_rotation(cycle))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-normalizes every key; a no-op on values built through `add_term`.
    pub fn normalized(&self) -> Potential {
        Potential::from_terms(self.terms.iter().map(|(c, x)| (c.clone(), x.clone())))
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|c| c.len()).max().unwrap_or(0)
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !x.is_one() {
                write!(f, "({x})")?;
            }
            write!(f, "{}", c.join("·"))?;
        }
        Ok(())
    }
}

/// Linear combination of paths, truncated at `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPoly {
    pub terms: BTreeMap<Vec<String>, Coeff>,
    pub max_degree: usize,
}

impl PathPoly {
    pub fn zero(max_degree: usize) -> Self {
        PathPoly { terms: BTreeMap::new(), max_degree }
    }

    pub fn add(&mut self, path: Vec<String>, x: Coeff) {
        if x.is_zero() || path.len() > self.max_degree {
            return;
        }
        let slot = self.terms.entry(path.clone()).or_insert_with(Coeff::zero);
        *slot += x;
        if slot.is_zero() {
            self.terms.remove(&path);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Multi-quiver with named arrows plus a potential. Oriented 2-cycles are
/// allowed here because premutation produces them; mutation results are
/// checked for 2-acyclicity separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    vertices: Vec<String>,
    arrows: Vec<QpArrow>,
    potential: Potential,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQp {
    pub vertices: Vec<String>,
    pub arrows: Vec<RawQpArrow>,
    #[serde(default)]
    pub potential: Vec<RawTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQpArrow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub src: String,
    pub tgt: String,
    #[serde(default = "one")]
    pub w: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTerm {
    pub coeff: String,
    pub cycle: Vec<String>,
}

impl Qp {
    /// Validates vertex and arrow names and checks every potential term is a cycle.
    pub fn new(vertices: Vec<String>, arrows: Vec<QpArrow>, potential: Potential) -> Result<Qp, QpError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()).into());
            }
        }
        let mut names = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= vertices.len() || a.tgt >= vertices.len() {
                return Err(QuiverError::DanglingEndpoint(a.name.clone()).into());
            }
            if a.src == a.tgt {
                return Err(QuiverError::LoopArrow(a.name.clone()).into());
            }
            if names.insert(a.name.clone(), i).is_some() {
                return Err(QpError::DuplicateArrow(a.name.clone()));
            }
        }
        for (c, _) in potential.terms() {
            if c.len() < 2 {
                return Err(QpError::NotACycle(c.join(" ")));
            }
            let idx: Vec<usize> = c
                .iter()
                .map(|n| names.get(n).copied().ok_or_else(|| QpError::UnknownArrow(n.clone())))
                .collect::<Result<_, _>>()?;
            for p in 0..idx.len() {
                let q = (p + 1) % idx.len();
                if arrows[idx[p]].tgt != arrows[idx[q]].src {
                    return Err(QpError::NotACycle(c.join(" ")));
                }
            }
        }
        Ok(Qp { vertices, arrows, potential })
    }

    /// Names arrows `src>tgt`, with `#k` suffixes for parallel arrows.
    pub fn from_quiver(q: &Quiver, potential: Potential) -> Result<Qp, QpError> {
        let mut arrows = Vec::new();
        for (s, t, w) in q.arrows() {
            for k in 0..w {
                let base = format!("{}>{}", q.label(s), q.label(t));
                let name = if w == 1 { base } else { format!("{base}#{}", k + 1) };
                arrows.push(QpArrow { name, src: s, tgt: t });
            }
        }
        Qp::new(q.labels().to_vec(), arrows, potential)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[QpArrow] {
        &self.arrows
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize, QpError> {
        self.vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| QuiverError::UnknownVertex(v.to_string()).into())
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, QpError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| QpError::UnknownArrow(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<&QpArrow, QpError> {
        Ok(&self.arrows[self.arrow_index(name)?])
    }

    pub fn with_potential(&self, potential: Potential) -> Result<Qp, QpError> {
        Qp::new(self.vertices.clone(), self.arrows.clone(), potential)
    }

    /// First oriented 2-cycle, if any, as a readable pair of arrow names.
    pub fn find_two_cycle(&self) -> Option<String> {
        for a in &self.arrows {
            if let Some(b) = self.arrows.iter().find(|b| b.src == a.tgt && b.tgt == a.src) {
                return Some(format!("{} / {}", a.name, b.name));
            }
        }
        None
    }

    pub fn is_two_acyclic(&self) -> bool {
        self.find_two_cycle().is_none()
    }

    /// Weighted quiver obtained by counting parallel arrows.
    pub fn underlying_quiver(&self) -> Result<Quiver, QuiverError> {
        let arrows: Vec<(usize, usize, u32)> = self.arrows.iter().map(|a| (a.src, a.tgt, 1)).collect();
        Quiver::from_arrows(self.vertices.clone(), &arrows)
    }

    /// Reverses every arrow and every potential term.
    pub fn opposite(&self) -> Qp {
        let arrows = self
            .arrows
            .iter()
            .map(|a| QpArrow { name: a.name.clone(), src: a.tgt, tgt: a.src })
            .collect();
        let potential = Potential::from_terms(self.potential.terms().map(|(c, x)| {
            let mut r = c.clone();
            r.reverse();
            (r, x.clone())
        }));
        Qp { vertices: self.vertices.clone(), arrows, potential }
    }

    /// Deletes vertices together with their arrows and every potential term through them.
    pub fn delete_vertices(&self, drop: &[usize]) -> Qp {
        let keep: Vec<usize> = (0..self.n()).filter(|i| !drop.contains(i)).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut gone = BTreeSet::new();
        let mut arrows = Vec::new();
        for a in &self.arrows {
            match (remap.get(&a.src), remap.get(&a.tgt)) {
                (Some(&s), Some(&t)) => arrows.push(QpArrow { name: a.name.clone(), src: s, tgt: t }),
                _ => {
                    gone.insert(a.name.clone());
                }
            }
        }
        let potential = Potential::from_terms(
            self.potential
                .terms()
                .filter(|(c, _)| !c.iter().any(|n| gone.contains(n)))
                .map(|(c, x)| (c.clone(), x.clone())),
        );
        Qp {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            arrows,
            potential,
        }
    }

    /// Adds a vertex and arrows (by name, src, tgt labels); potential untouched.
    pub fn add_vertex(&self, label: &str, new_arrows: &[(String, String, String)]) -> Result<Qp, QpError> {
        let mut vertices = self.vertices.clone();
        vertices.push(label.to_string());
        let mut arrows = self.arrows.clone();
        for (name, s, t) in new_arrows {
            let src = vertices
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| QuiverError::UnknownVertex(s.clone()))?;
            let tgt = vertices
                .iter()
                .position(|v| v == t)
                .ok_or_else(|| QuiverError::UnknownVertex(t.clone()))?;
            arrows.push(QpArrow { name: name.clone(), src, tgt });
        }
        Qp::new(vertices, arrows, self.potential.clone())
    }

    pub fn to_raw(&self) -> RawQp {
        RawQp {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawQpArrow {
                    name: Some(a.name.clone()),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                    w: 1,
                })
                .collect(),
            potential: self
                .potential
                .terms()
                .map(|(c, x)| RawTerm { coeff: x.to_string(), cycle: c.clone() })
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawQp) -> Result<Qp, QpError> {
        let index: HashMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut arrows = Vec::new();
        for a in &raw.arrows {
            let s = *index.get(a.src.as_str()).ok_or_else(|| QuiverError::DanglingEndpoint(a.src.clone()))?;
            let t = *index.get(a.tgt.as_str()).ok_or_else(|| QuiverError::DanglingEndpoint(a.tgt.clone()))?;
            if a.w < 1 {
                return Err(QuiverError::NonPositiveWeight(format!("{} -> {}", a.src, a.tgt)).into());
            }
            let base = a.name.clone().unwrap_or_else(|| format!("{}>{}", a.src, a.tgt));
            for k in 0..a.w {
                let name = if a.w == 1 { base.clone() } else { format!("{base}#{}", k + 1) };
                arrows.push(QpArrow { name, src: s, tgt: t });
            }
        }
        let mut potential = Potential::new();
        for t in &raw.potential {
            potential.add_term(&t.cycle, parse_coeff(&t.coeff)?);
        }
        Qp::new(raw.vertices.clone(), arrows, potential)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("QP serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("QP serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Qp, QpError> {
        let raw: RawQp = serde_json::from_str(s).map_err(|e| QpError::Malformed(e.to_string()))?;
        Qp::from_raw(&raw)
    }

    /// Default truncation degree: number of arrows plus two.
    pub fn default_degree(&self) -> usize {
        self.arrows.len() + 2
    }
}

/// `∂_a W`: for each occurrence of `a` in a term, the rotated remainder
/// starting right after `a`.
pub fn cyclic_derivative(qp: &Qp, a: &str, max_degree: usize) -> Result<PathPoly, QpError> {
    qp.arrow_index(a)?;
    Ok(derivative(qp.potential(), a, max_degree))
}

pub(crate) fn derivative(w: &Potential, a: &str, max_degree: usize) -> PathPoly {
    let mut out = PathPoly::zero(max_degree);
    for (c, x) in w.terms() {
        let l = c.len();
        for i in 0..l {
            if c[i] == a {
                let rest: Vec<String> = (1..l).map(|s| c[(i + s) % l].clone()).collect();
                out.add(rest, x.clone());
            }
        }
    }
    out
}

fn star(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// Longest arrow name kept verbatim; longer composite names are replaced by fresh ones.
pub const MAX_NAME_LEN: usize = 40;

struct Namer {
    used: BTreeSet<String>,
}

impl Namer {
    fn fresh(&mut self, wanted: String) -> String {
        let mut name = wanted;
        if name.len() > MAX_NAME_LEN {
            let mut k = 1;
            while self.used.contains(&format!("x{k}")) {
                k += 1;
            }
            name = format!("x{k}");
        }
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        name
    }
}

/// Steps 1-3 of QP mutation at `k`, leaving any 2-cycles in place.
pub fn premutate(qp: &Qp, k: &str) -> Result<Qp, QpError> {
    let kk = qp.vertex_index(k)?;
    if let Some(a) = qp.arrows.iter().find(|a| a.src == kk && a.tgt == kk) {
        return Err(QpError::LoopAtVertex(format!("{k} ({})", a.name)));
    }
    for a in qp.arrows.iter().filter(|a| a.tgt == kk) {
        if let Some(b) = qp.arrows.iter().find(|b| b.src == kk && b.tgt == a.src) {
            return Err(QpError::TwoCycleAtVertex(k.to_string(), format!("{} / {}", a.name, b.name)));
        }
    }
    let incoming: Vec<usize> = (0..qp.arrows.len()).filter(|&i| qp.arrows[i].tgt == kk).collect();
    let outgoing: Vec<usize> = (0..qp.arrows.len()).filter(|&i| qp.arrows[i].src == kk).collect();

    let mut namer = Namer { used: BTreeSet::new() };
    let mut arrows = Vec::new();
    let mut renamed: HashMap<String, String> = HashMap::new();
    for a in qp.arrows.iter().filter(|a| a.src != kk && a.tgt != kk) {
        namer.used.insert(a.name.clone());
        arrows.push(a.clone());
    }
    for &i in incoming.iter().chain(outgoing.iter()) {
        let a = &qp.arrows[i];
        let name = namer.fresh(star(&a.name));
        renamed.insert(a.name.clone(), name.clone());
        arrows.push(QpArrow { name, src: a.tgt, tgt: a.src });
    }
    // [αβ] for β: j -> k and α: k -> i
    let mut composite: HashMap<(String, String), String> = HashMap::new();
    let mut w2 = Vec::new();
    for &bi in &incoming {
        for &ai in &outgoing {
            let (beta, alpha) = (&qp.arrows[bi], &qp.arrows[ai]);
            let name = namer.fresh(format!("[{}.{}]", alpha.name, beta.name));
            arrows.push(QpArrow { name: name.clone(), src: beta.src, tgt: alpha.tgt });
            composite.insert((beta.name.clone(), alpha.name.clone()), name.clone());
            w2.push(vec![renamed[&alpha.name].clone(), renamed[&beta.name].clone(), name]);
        }
    }

    let arrow_of: HashMap<&str, &QpArrow> = qp.arrows.iter().map(|a| (a.name.as_str(), a)).collect();
    let mut potential = Potential::new();
    for (c, x) in qp.potential.terms() {
        let l = c.len();
        let start = (0..l)
            .find(|&s| arrow_of[c[s].as_str()].src != kk)
            .ok_or_else(|| QpError::CycleThroughVertexInPotential(k.to_string(), c.join(" ")))?;
        let rot: Vec<&String> = (0..l).map(|s| &c[(start + s) % l]).collect();
        let mut term = Vec::with_capacity(l);
        let mut p = 0;
        while p < l {
            if arrow_of[rot[p].as_str()].tgt == kk {
                let beta = rot[p];
                let alpha = rot[p + 1];
                term.push(composite[&(beta.clone(), alpha.clone())].clone());
                p += 2;
            } else {
                term.push(rot[p].clone());
                p += 1;
            }
        }
        potential.add_term(&term, x.clone());
    }
    for t in w2 {
        potential.add_term(&t, Coeff::one());
    }
    Qp::new(qp.vertices.clone(), arrows, potential)
}

/// Substitutes arrows by path polynomials inside every term, truncating at `d`.
fn substitute(w: &Potential, sub: &HashMap<String, PathPoly>, d: usize) -> Potential {
    let mut out = Potential::new();
    for (c, x) in w.terms() {
        let mut partial: Vec<(Vec<String>, Coeff)> = vec![(Vec::new(), x.clone())];
        for a in c {
            let mut next = Vec::new();
            match sub.get(a) {
                None => {
                    for (mut p, y) in partial {
                        if p.len() < d {
                            p.push(a.clone());
                            next.push((p, y));
                        }
                    }
                }
                Some(poly) => {
                    for (p, y) in &partial {
                        for (q, z) in &poly.terms {
                            if p.len() + q.len() <= d {
                                let mut r = p.clone();
                                r.extend(q.iter().cloned());
                                next.push((r, y * z));
                            }
                        }
                    }
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (p, y) in partial {
            out.add_term(&p, y);
        }
    }
    out
}

/// Removes 2-cycle terms by the DWZ substitution `a ↦ a - (∂_b W - a)`,
/// `b ↦ b - (∂_a W - b)` until the eliminated arrows appear only in their
/// quadratic terms, then deletes those terms and arrows.
pub fn reduce(qp: &Qp, max_degree: usize) -> Result<Qp, QpError> {
    let mut w = qp.potential.clone();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut used: BTreeMap<String, String> = BTreeMap::new();
    let quadratic: Vec<(Vec<String>, Coeff)> =
        w.terms().filter(|(c, _)| c.len() == 2).map(|(c, x)| (c.clone(), x.clone())).collect();
    for (c, _) in &quadratic {
        for a in c {
            if let Some(prev) = used.insert(a.clone(), c.join(" ")) {
                return Err(QpError::NonSplittableQuadraticPart(format!(
                    "arrow {a} lies in the 2-cycles {prev} and {}",
                    c.join(" ")
                )));
            }
        }
        pairs.push((c[0].clone(), c[1].clone()));
    }
    if pairs.is_empty() {
        return Ok(qp.clone());
    }
    for (c, _) in w.terms().filter(|(c, _)| c.len() > 2) {
        for a in c {
            if used.contains_key(a) && c.iter().filter(|x| *x == a).count() > 1 {
                return Err(QpError::NonSplittableQuadraticPart(format!(
                    "arrow {a} occurs more than once in the higher term {}",
                    c.join(" ")
                )));
            }
        }
    }
    // scale the first arrow of each 2-cycle so its coefficient becomes 1
    for (c, x) in &quadratic {
        let mut scale = PathPoly::zero(1);
        scale.add(vec![c[0].clone()], x.recip());
        let sub: HashMap<String, PathPoly> = [(c[0].clone(), scale)].into_iter().collect();
        w = substitute(&w, &sub, usize::MAX);
    }

    let mut rounds = 0;
    loop {
        let mut sub = HashMap::new();
        let mut done = true;
        for (a, b) in &pairs {
            // ∂_b W = a + V, ∂_a W = b + U
            let mut v = derivative(&w, b, max_degree);
            v.add(vec![a.clone()], -Coeff::one());
            let mut u = derivative(&w, a, max_degree);
            u.add(vec![b.clone()], -Coeff::one());
            if !(u.is_zero() && v.is_zero()) {
                done = false;
            }
            let mut sa = PathPoly::zero(max_degree);
            sa.add(vec![a.clone()], Coeff::one());
            for (p, x) in &v.terms {
                sa.add(p.clone(), -x.clone());
            }
            let mut sb = PathPoly::zero(max_degree);
            sb.add(vec![b.clone()], Coeff::one());
            for (p, x) in &u.terms {
                sb.add(p.clone(), -x.clone());
            }
            sub.insert(a.clone(), sa);
            sub.insert(b.clone(), sb);
        }
        if done {
            break;
        }
        rounds += 1;
        if rounds > max_degree {
            return Err(QpError::NoConvergence(max_degree));
        }
        w = substitute(&w, &sub, max_degree);
    }
    let gone: BTreeSet<&String> = pairs.iter().flat_map(|(a, b)| [a, b]).collect();
    let potential = Potential::from_terms(
        w.terms()
            .filter(|(c, _)| !c.iter().any(|x| gone.contains(x)))
            .map(|(c, x)| (c.clone(), x.clone())),
    );
    let arrows = qp.arrows.iter().filter(|a| !gone.contains(&a.name)).cloned().collect();
    Qp::new(qp.vertices.clone(), arrows, potential)
}

/// QP mutation at `k`: premutation, reduction with the default truncation, and a
/// 2-acyclicity check on the result.
pub fn qp_mutate(qp: &Qp, k: &str) -> Result<Qp, QpError> {
    let pre = premutate(qp, k)?;
    let d = pre.default_degree().max(pre.potential().max_len());
    let out = reduce(&pre, d)?;
    if let Some(c) = out.find_two_cycle() {
        return Err(QpError::NotTwoAcyclic(c));
    }
    Ok(out)
}

pub fn qp_mutate_seq<S: AsRef<str>>(qp: &Qp, seq: &[S]) -> Result<Qp, QpError> {
    let mut cur = qp.clone();
    for k in seq {
        cur = qp_mutate(&cur, k.as_ref())?;
    }
    Ok(cur)
}

/// Convenience for tests and examples: a potential from `(coefficient, names)` pairs.
pub fn potential_of(terms: &[(i64, &[&str])]) -> Potential {
    Potential::from_terms(
        terms
            .iter()
            .map(|(x, c)| (c.iter().map(|s| s.to_string()).collect(), coeff(*x))),
    )
}

pub fn is_negative(x: &Coeff) -> bool {
    x.is_negative()
}
