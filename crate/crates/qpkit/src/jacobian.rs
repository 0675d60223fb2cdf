//! Truncated Jacobian algebras.
//!
//! The Jacobian ideal is generated by the cyclic derivatives `∂_a W`. Working
//! modulo paths of length `d + 1`, every product `u·∂_aW·v` is written down,
//! and the rows are brought to echelon form with columns ordered by (length,
//! arrow names). Pivots sit on the shortest path of each row, which is the
//! right choice for a completed path algebra: a relation `p + (longer terms)`
//! lets `p` be rewritten upward. Non-pivot paths form the basis.
//!
//! If no basis path has length `d`, every path of length `d` lies in the
//! ideal plus longer paths, hence in the closed ideal, and the quotient is
//! finite-dimensional with exactly the basis found. The truncation is raised
//! one step at a time until that happens or the requested bound is reached.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::{Ratio, Rational64};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::JacobianError;
use crate::qp::{derivative, Coeff, Qp};
use crate::quiver::Quiver;

/// Safety valve against runaway growth in wild or infinite-dimensional cases.
pub const PATH_LIMIT: usize = 400_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisPath {
    pub src: usize,
    pub tgt: usize,
    /// Arrow names, first arrow first.
    pub arrows: Vec<String>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub qp: Qp,
    pub max_degree: usize,
    pub basis: Vec<BasisPath>,
    pub saturated: bool,
    /// `cartan[j][i] = dim e_j J e_i`, the number of basis paths from `i` to `j`.
    pub cartan: Vec<Vec<usize>>,
    /// Truncation actually used for the normal forms below.
    pub truncation: usize,
    engine: Engine,
}

impl BasisReport {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis expansion of a path given by arrow names (first arrow first).
    /// Paths of length at least the truncation are zero once saturated.
    pub fn normal_form(&self, src: usize, arrows: &[String]) -> Vec<(usize, Coeff)> {
        let idx: Option<Vec<u16>> = arrows.iter().map(|a| self.engine.arrow_id.get(a).copied()).collect();
        match idx {
            Some(p) => self.engine.nf(src as u16, &p),
            None => Vec::new(),
        }
    }

    pub fn is_zero_path(&self, src: usize, arrows: &[String]) -> bool {
        self.normal_form(src, arrows).is_empty()
    }

    /// Indices of basis paths from `i` to `j`.
    pub fn basis_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&b| self.basis[b].src == i && self.basis[b].tgt == j).collect()
    }

    pub fn to_json(&self) -> Value {
        let v = self.qp.vertices();
        json!({
            "dimension": self.dimension(),
            "max_degree": self.max_degree,
            "saturated": self.saturated,
            "partial": !self.saturated,
            "schurian": self.saturated.then(|| is_schurian(self).unwrap_or(false)),
            "socle_condition": self.saturated.then(|| socle_condition(self).unwrap_or(false)),
            "vertices": v,
            "cartan": self.cartan,
            "basis": self.basis.iter().map(|b| json!({
                "src": v[b.src], "tgt": v[b.tgt], "arrows": b.arrows,
            })).collect::<Vec<_>>(),
        })
    }

    /// Human-readable summary table.
    pub fn table(&self) -> String {
        let v = self.qp.vertices();
        let mut out = format!(
            "dimension {}{}\n",
            self.dimension(),
            if self.saturated { "" } else { " (partial: not saturated)" }
        );
        let w = v.iter().map(|s| s.len()).max().unwrap_or(1).max(2);
        out.push_str(&format!("{:>w$} |", "", w = w));
        for l in v {
            out.push_str(&format!(" {:>w$}", l, w = w));
        }
        out.push('\n');
        for (j, row) in self.cartan.iter().enumerate() {
            out.push_str(&format!("{:>w$} |", v[j], w = w));
            for x in row {
                out.push_str(&format!(" {:>w$}", x, w = w));
            }
            out.push('\n');
        }
        if self.saturated {
            out.push_str(&format!(
                "schurian {}  socle condition {}\n",
                is_schurian(self).unwrap_or(false),
                socle_condition(self).unwrap_or(false)
            ));
        }
        out
    }
}

const NONE: u32 = u32::MAX;

/// Paths are columns of a trie: column `c` followed by arrow `a` is
/// `child[c][out_pos[a]]`, and the first `n` columns are the trivial paths.
#[derive(Clone, Debug)]
struct Engine {
    n: usize,
    arrow_id: HashMap<String, u16>,
    src: Vec<u16>,
    out_pos: Vec<u16>,
    end_of: Vec<u16>,
    child: Vec<Vec<u32>>,
    /// basis index of each non-pivot column
    basis_of_col: HashMap<u32, usize>,
    /// normal form of every pivot column in basis indices
    pivot_nf: HashMap<u32, Vec<(usize, Coeff)>>,
}

impl Engine {
    fn walk(&self, mut c: u32, p: &[u16]) -> Option<u32> {
        for &a in p {
            if self.src[a as usize] != self.end_of[c as usize] {
                return None;
            }
            c = self.child[c as usize][self.out_pos[a as usize] as usize];
            if c == NONE {
                return None;
            }
        }
        Some(c)
    }

    fn nf(&self, start: u16, p: &[u16]) -> Vec<(usize, Coeff)> {
        if start as usize >= self.n {
            return Vec::new();
        }
        let Some(c) = self.walk(u32::from(start), p) else {
            return Vec::new();
        };
        if let Some(&b) = self.basis_of_col.get(&c) {
            return vec![(b, Coeff::one())];
        }
        self.pivot_nf.get(&c).cloned().unwrap_or_default()
    }
}

/// Field operations for the elimination. Machine rationals report overflow
/// with `None`, and the computation is then redone over big rationals.
trait Scalar: Clone {
    fn from_coeff(c: &Coeff) -> Option<Self>;
    fn to_coeff(&self) -> Coeff;
    fn is_nil(&self) -> bool;
    fn add(&self, x: &Self) -> Option<Self>;
    fn sub_mul(&self, x: &Self, y: &Self) -> Option<Self>;
    fn mul(&self, x: &Self) -> Option<Self>;
    fn recip(&self) -> Option<Self>;
    fn neg(&self) -> Self;
}

impl Scalar for Rational64 {
    fn from_coeff(c: &Coeff) -> Option<Self> {
        Some(Rational64::new(c.numer().to_i64()?, c.denom().to_i64()?))
    }

    fn to_coeff(&self) -> Coeff {
        Coeff::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(x)
    }

    fn sub_mul(&self, x: &Self, y: &Self) -> Option<Self> {
        self.checked_sub(&x.checked_mul(y)?)
    }

    fn mul(&self, x: &Self) -> Option<Self> {
        self.checked_mul(x)
    }

    fn recip(&self) -> Option<Self> {
        Rational64::one().checked_div(self)
    }

    fn neg(&self) -> Self {
        -*self
    }
}

impl Scalar for Coeff {
    fn from_coeff(c: &Coeff) -> Option<Self> {
        Some(c.clone())
    }

    fn to_coeff(&self) -> Coeff {
        self.clone()
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }

    fn sub_mul(&self, x: &Self, y: &Self) -> Option<Self> {
        Some(self - x * y)
    }

    fn mul(&self, x: &Self) -> Option<Self> {
        Some(self * x)
    }

    fn recip(&self) -> Option<Self> {
        Some(Ratio::recip(self))
    }

    fn neg(&self) -> Self {
        -self.clone()
    }
}

enum Fail {
    Overflow,
    Jacobian(JacobianError),
}

struct Computed {
    engine: Engine,
    basis: Vec<BasisPath>,
    /// number of basis paths of each length
    per_length: Vec<usize>,
}

fn compute<F: Scalar>(qp: &Qp, d: usize) -> Result<Computed, Fail> {
    let n = qp.n();
    // arrows sorted by name so index order is name order
    let mut names: Vec<&String> = qp.arrows().iter().map(|a| &a.name).collect();
    names.sort();
    let arrow_id: HashMap<String, u16> = names.iter().enumerate().map(|(i, s)| ((*s).clone(), i as u16)).collect();
    let na = names.len();
    let mut src = vec![0u16; na];
    let mut tgt = vec![0u16; na];
    for a in qp.arrows() {
        let i = arrow_id[&a.name] as usize;
        src[i] = a.src as u16;
        tgt[i] = a.tgt as u16;
    }
    let mut out_arrows: Vec<Vec<u16>> = vec![Vec::new(); n];
    let mut out_pos = vec![0u16; na];
    for i in 0..na {
        out_pos[i] = out_arrows[src[i] as usize].len() as u16;
        out_arrows[src[i] as usize].push(i as u16);
    }

    // enumerate columns by length, lexicographically within a length
    let mut paths: Vec<Vec<u16>> = vec![Vec::new(); n];
    let mut start_of: Vec<u16> = (0..n as u16).collect();
    let mut end_of: Vec<u16> = (0..n as u16).collect();
    let mut parent: Vec<u32> = vec![NONE; n];
    let mut last: Vec<u16> = vec![0; n];
    let mut child: Vec<Vec<u32>> = (0..n).map(|v| vec![NONE; out_arrows[v].len()]).collect();
    let mut layer: Vec<u32> = (0..n as u32).collect();
    for _ in 1..=d {
        let mut next: Vec<(Vec<u16>, u32, u16)> = Vec::new();
        for &c in &layer {
            for &a in &out_arrows[end_of[c as usize] as usize] {
                let mut q = paths[c as usize].clone();
                q.push(a);
                next.push((q, c, a));
            }
        }
        next.sort_by(|x, y| x.0.cmp(&y.0));
        if paths.len() + next.len() > PATH_LIMIT {
            return Err(Fail::Jacobian(JacobianError::PathLimit(PATH_LIMIT)));
        }
        layer = Vec::with_capacity(next.len());
        for (q, c, a) in next {
            let id = paths.len() as u32;
            let e = tgt[a as usize];
            child[c as usize][out_pos[a as usize] as usize] = id;
            child.push(vec![NONE; out_arrows[e as usize].len()]);
            start_of.push(start_of[c as usize]);
            end_of.push(e);
            parent.push(c);
            last.push(a);
            paths.push(q);
            layer.push(id);
        }
    }
    let ncols = paths.len();
    let mut engine = Engine {
        n,
        arrow_id,
        src,
        out_pos,
        end_of,
        child,
        basis_of_col: HashMap::new(),
        pivot_nf: HashMap::new(),
    };

    // paths grouped by end vertex / start vertex; starting lists are prefix closed
    let mut ending: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut starting: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut pos_in_start = vec![0u32; ncols];
    for c in 0..ncols {
        ending[engine.end_of[c] as usize].push(c as u32);
        let s = start_of[c] as usize;
        pos_in_start[c] = starting[s].len() as u32;
        starting[s].push(c as u32);
    }

    let mut pivots: HashMap<u32, Vec<(u32, F)>> = HashMap::new();
    let mut res: Vec<u32> = Vec::new();
    for a in qp.arrows() {
        let r = derivative(qp.potential(), &a.name, d);
        if r.is_zero() {
            continue;
        }
        let mut terms: Vec<(Vec<u16>, F)> = Vec::new();
        for (p, x) in &r.terms {
            let ids = p.iter().map(|s| engine.arrow_id[s]).collect();
            terms.push((ids, F::from_coeff(x).ok_or(Fail::Overflow)?));
        }
        let low = terms.iter().map(|(p, _)| p.len()).min().unwrap_or(0);
        let sv = &starting[a.src];
        for &u in &ending[a.tgt] {
            let ul = paths[u as usize].len();
            if ul + low > d {
                continue;
            }
            let mut rows: Vec<Vec<(u32, F)>> = vec![Vec::new(); sv.len()];
            for (p, x) in &terms {
                let Some(w0) = engine.walk(u, p) else { continue };
                // extend u·p by every path v out of src(a), reusing the parent's column
                res.clear();
                res.resize(sv.len(), NONE);
                res[0] = w0;
                for (i, &v) in sv.iter().enumerate().skip(1) {
                    let pr = res[pos_in_start[parent[v as usize] as usize] as usize];
                    if pr != NONE {
                        let la = last[v as usize];
                        res[i] = engine.child[pr as usize][engine.out_pos[la as usize] as usize];
                    }
                }
                for (i, &c) in res.iter().enumerate() {
                    if c != NONE {
                        rows[i].push((c, x.clone()));
                    }
                }
            }
            for mut row in rows {
                if row.is_empty() {
                    continue;
                }
                row.sort_by_key(|e| e.0);
                let mut merged: Vec<(u32, F)> = Vec::with_capacity(row.len());
                for (c, x) in row {
                    match merged.last_mut() {
                        Some(lastc) if lastc.0 == c => {
                            lastc.1 = lastc.1.add(&x).ok_or(Fail::Overflow)?;
                        }
                        _ => merged.push((c, x)),
                    }
                }
                merged.retain(|e| !e.1.is_nil());
                insert_row(&mut pivots, merged)?;
            }
        }
    }

    let mut basis = Vec::new();
    let mut per_length = vec![0usize; d + 1];
    for (c, p) in paths.iter().enumerate() {
        if !pivots.contains_key(&(c as u32)) {
            engine.basis_of_col.insert(c as u32, basis.len());
            per_length[p.len()] += 1;
            basis.push(BasisPath {
                src: start_of[c] as usize,
                tgt: engine.end_of[c] as usize,
                arrows: p.iter().map(|&a| names[a as usize].clone()).collect(),
            });
        }
    }
    // back substitution, highest pivot first
    let mut order: Vec<u32> = pivots.keys().copied().collect();
    order.sort_unstable_by(|a, b| b.cmp(a));
    let mut nf: HashMap<u32, Vec<(usize, F)>> = HashMap::new();
    for p in order {
        let row = &pivots[&p];
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (c, x) in row.iter().skip(1) {
            let contributions: Vec<(usize, F)> = match engine.basis_of_col.get(c) {
                Some(&b) => vec![(b, x.clone())],
                None => nf[c].iter().map(|(b, y)| Ok((*b, x.mul(y).ok_or(Fail::Overflow)?))).collect::<Result<_, Fail>>()?,
            };
            for (b, y) in contributions {
                let slot = match acc.get(&b) {
                    Some(v) => v.add(&y.neg()).ok_or(Fail::Overflow)?,
                    None => y.neg(),
                };
                acc.insert(b, slot);
            }
        }
        nf.insert(p, acc.into_iter().filter(|(_, x)| !x.is_nil()).collect());
    }
    engine.pivot_nf =
        nf.into_iter().map(|(c, v)| (c, v.into_iter().map(|(b, x)| (b, x.to_coeff())).collect())).collect();
    Ok(Computed { engine, basis, per_length })
}

/// Reduces `row` (sorted, no zeros) against the pivots and stores what is left.
fn insert_row<F: Scalar>(pivots: &mut HashMap<u32, Vec<(u32, F)>>, mut row: Vec<(u32, F)>) -> Result<(), Fail> {
    loop {
        let Some((lead, x)) = row.first().cloned() else { return Ok(()) };
        match pivots.get(&lead) {
            Some(prow) => {
                // row - x * prow, merged by column
                let mut out = Vec::with_capacity(row.len() + prow.len());
                let (mut i, mut j) = (0, 0);
                while i < row.len() || j < prow.len() {
                    let ci = row.get(i).map_or(u32::MAX, |e| e.0);
                    let cj = prow.get(j).map_or(u32::MAX, |e| e.0);
                    if ci < cj {
                        out.push(row[i].clone());
                        i += 1;
                    } else if cj < ci {
                        let v = prow[j].1.mul(&x).ok_or(Fail::Overflow)?.neg();
                        out.push((cj, v));
                        j += 1;
                    } else {
                        let v = row[i].1.sub_mul(&x, &prow[j].1).ok_or(Fail::Overflow)?;
                        if !v.is_nil() {
                            out.push((ci, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                row = out;
            }
            None => {
                let inv = x.recip().ok_or(Fail::Overflow)?;
                let normalized = row
                    .into_iter()
                    .map(|(c, y)| Ok((c, y.mul(&inv).ok_or(Fail::Overflow)?)))
                    .collect::<Result<Vec<_>, Fail>>()?;
                pivots.insert(lead, normalized);
                return Ok(());
            }
        }
    }
}

fn compute_exact(qp: &Qp, d: usize) -> Result<Computed, JacobianError> {
    match compute::<Rational64>(qp, d) {
        Ok(c) => Ok(c),
        Err(Fail::Jacobian(e)) => Err(e),
        Err(Fail::Overflow) => match compute::<Coeff>(qp, d) {
            Ok(c) => Ok(c),
            Err(Fail::Jacobian(e)) => Err(e),
            Err(Fail::Overflow) => unreachable!("big rationals do not overflow"),
        },
    }
}

/// Basis of `J(Q,W)` modulo paths longer than `max_degree`, with saturation flag.
pub fn jacobian_basis(qp: &Qp, max_degree: usize) -> Result<BasisReport, JacobianError> {
    jacobian_basis_from(qp, max_degree, 2)
}

/// Same result as [`jacobian_basis`], with the first truncation tried set to
/// `start`. A good guess (for instance the truncation of a neighbouring QP)
/// saves the intermediate computations.
///
/// If every path of length `L` vanishes modulo the ideal plus paths longer
/// than `d >= L`, then every path of length `L` lies in the ideal plus paths
/// longer than any bound, so one computation at `d` reveals every smaller
/// certified degree and the quotient it describes is the same.
pub fn jacobian_basis_from(qp: &Qp, max_degree: usize, start: usize) -> Result<BasisReport, JacobianError> {
    if max_degree < 2 {
        return Err(JacobianError::DegreeTooSmall(max_degree));
    }
    let mut d = start.clamp(2, max_degree);
    loop {
        let c = compute_exact(qp, d)?;
        let certified_at = (2..=d).find(|&l| c.per_length[l] == 0);
        if certified_at.is_some() || d == max_degree {
            // saturated when the certificate appears strictly below the cap
            let truncation = certified_at.unwrap_or(d);
            let saturated = certified_at.is_some_and(|l| l < max_degree);
            let n = qp.n();
            let mut cartan = vec![vec![0usize; n]; n];
            for b in &c.basis {
                cartan[b.tgt][b.src] += 1;
            }
            return Ok(BasisReport {
                qp: qp.clone(),
                max_degree,
                basis: c.basis,
                saturated,
                cartan,
                truncation,
                engine: c.engine,
            });
        }
        d = (d + 2).min(max_degree);
    }
}

pub fn jacobian_basis_default(qp: &Qp) -> Result<BasisReport, JacobianError> {
    jacobian_basis(qp, qp.default_degree())
}

pub fn is_schurian(r: &BasisReport) -> Result<bool, JacobianError> {
    if !r.saturated {
        return Err(JacobianError::NotSaturated);
    }
    Ok(r.cartan.iter().flatten().all(|&x| x <= 1))
}

/// Every cyclic path of positive length vanishes, i.e. the diagonal of the
/// Cartan matrix is all ones.
///
/// An unsaturated report can still refute the condition: a cyclic basis path
/// survives modulo the ideal plus long paths, so it survives in the completed
/// algebra too.
pub fn socle_condition(r: &BasisReport) -> Result<bool, JacobianError> {
    let diagonal_ones = (0..r.cartan.len()).all(|i| r.cartan[i][i] == 1);
    if !r.saturated && diagonal_ones {
        return Err(JacobianError::NotSaturated);
    }
    Ok(diagonal_ones)
}

fn rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, |r| r.len());
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for c in col..ncols {
            let v = &rows[rank][c] * &inv;
            rows[rank][c] = v;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..ncols {
                    let v = &rows[rank][c] * &f;
                    rows[i][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn check_pre(r: &BasisReport) -> Result<(), JacobianError> {
    if !r.saturated {
        return Err(JacobianError::NotSaturated);
    }
    Ok(())
}

/// No nonzero cycle of positive length at `k`. Together with the definedness
/// checks this keeps the simple at `k` out of the socle of every radical.
pub fn no_cycle_at(r: &BasisReport, k: usize) -> Result<bool, JacobianError> {
    check_pre(r)?;
    Ok(r.cartan[k][k] == 1)
}

/// For every `i != k`, precomposition with the arrows ending at `k` is injective
/// on the paths from `k` to `i`. In the schurian case: every nonzero path
/// `k ~> i` extends to a nonzero `j -> k ~> i` for some arrow `j -> k`.
/// The rank test itself does not need the schurian hypothesis.
pub fn negative_mutation_defined(r: &BasisReport, k: usize) -> Result<bool, JacobianError> {
    check_pre(r)?;
    let arrows_in: Vec<_> = r.qp.arrows().iter().filter(|a| a.tgt == k).collect();
    for i in 0..r.qp.n() {
        if i == k {
            continue;
        }
        let xs = r.basis_between(k, i);
        if xs.is_empty() {
            continue;
        }
        // rows: (arrow, basis path from src(arrow) to i); columns: xs
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for a in &arrows_in {
            let targets = r.basis_between(a.src, i);
            let mut block = vec![vec![Coeff::zero(); xs.len()]; targets.len()];
            for (col, &x) in xs.iter().enumerate() {
                let mut p = vec![a.name.clone()];
                p.extend(r.basis[x].arrows.iter().cloned());
                for (b, y) in r.normal_form(a.src, &p) {
                    if let Some(row) = targets.iter().position(|&t| t == b) {
                        block[row][col] += y;
                    }
                }
            }
            rows.extend(block);
        }
        if rank(rows) < xs.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual of [`negative_mutation_defined`]: postcomposition with the arrows
/// starting at `k` is injective on the paths from `i` to `k`.
pub fn positive_mutation_defined(r: &BasisReport, k: usize) -> Result<bool, JacobianError> {
    check_pre(r)?;
    let arrows_out: Vec<_> = r.qp.arrows().iter().filter(|a| a.src == k).collect();
    for i in 0..r.qp.n() {
        if i == k {
            continue;
        }
        let xs = r.basis_between(i, k);
        if xs.is_empty() {
            continue;
        }
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for a in &arrows_out {
            let targets = r.basis_between(i, a.tgt);
            let mut block = vec![vec![Coeff::zero(); xs.len()]; targets.len()];
            for (col, &x) in xs.iter().enumerate() {
                let mut p = r.basis[x].arrows.clone();
                p.push(a.name.clone());
                for (b, y) in r.normal_form(i, &p) {
                    if let Some(row) = targets.iter().position(|&t| t == b) {
                        block[row][col] += y;
                    }
                }
            }
            rows.extend(block);
        }
        if rank(rows) < xs.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// At most one arrow (counted with weight) ends at `k`.
pub fn vanishing_arrowcount(q: &Quiver, k: &str) -> Result<bool, JacobianError> {
    let i = q.index_of(k).map_err(|e| JacobianError::Qp(e.into()))?;
    Ok(q.in_weight(i) <= 1)
}
