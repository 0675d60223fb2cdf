//! The invariant `d = m - 3N + d_Q` and the chains of mutations and vertex
//! surgeries that reduce a simple polygon tree to a single `d`-cycle.
//!
//! A chain stage removes one leaf component. Every QP mutation inside a stage
//! carries a certificate computed from the Jacobian algebras on both sides;
//! vertex additions and removals carry the name of the surgery pattern they
//! match. Stages re-decompose the result and assert that `d` is unchanged.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{JacobianError, SingularityError};
use crate::jacobian::{
    jacobian_basis_default, jacobian_basis_from, negative_mutation_defined, no_cycle_at, positive_mutation_defined, BasisReport,
};
use crate::polygon::{
    build_canonical_ct, build_layout, chordless_cycles, d_invariant, decompose, orient, simple_witness,
    Figure5Reading, FloriatedSpec, PolygonTreeSpec,
};
use crate::qp::{min_rotation, qp_mutate, Coeff, Potential, Qp, RawQp};
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityDescriptor {
    pub m: usize,
    pub n_gluings: usize,
    pub d_q: usize,
    pub d: i64,
    /// `N_d`: the cyclic quiver on `d` vertices modulo paths of length `d - 1`.
    pub nakayama: String,
    /// Shape of its stable category, `K(ZA_{d-2}) / tau^d`.
    pub orbit: String,
    pub orbit_params: (i64, i64),
    pub cm_finite: bool,
}

pub fn singularity_invariant(spec: &PolygonTreeSpec) -> Result<SingularityDescriptor, SingularityError> {
    let (m, n, dq) = d_invariant(spec)?;
    if let Some(w) = simple_witness(spec, Figure5Reading::Chain) {
        return Err(SingularityError::NotSimple(format!(
            "components {} {} {} {} form a banned chain",
            w[0], w[1], w[2], w[3]
        )));
    }
    let d = m as i64 - 3 * n as i64 + dq as i64;
    if d < 3 {
        return Err(SingularityError::DTooSmall(d));
    }
    Ok(descriptor(m, n, dq, d))
}

fn descriptor(m: usize, n: usize, dq: usize, d: i64) -> SingularityDescriptor {
    SingularityDescriptor {
        m,
        n_gluings: n,
        d_q: dq,
        d,
        nakayama: format!("N_{d}"),
        orbit: format!("K(ZA_{})/tau^{}", d - 2, d),
        orbit_params: (d - 2, d),
        cm_finite: true,
    }
}

/// A uniserial module over `N_d`: top at `start`, composition factors at
/// `start, start + 1, ..., start + length - 1` (mod `d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakayamaReport {
    pub d: usize,
    pub indecomposables: Vec<Interval>,
    pub projectives: Vec<Interval>,
    pub stable_count: usize,
    pub tau_period: usize,
    pub tau_orbits: usize,
}

/// Enumerates the modules of `N_d` and computes the translation on the stable
/// part as `tau = nu . Omega^2` (valid since `N_d` is selfinjective), with
/// `Omega` taken from projective covers and `nu` from matching socles.
pub fn nakayama_model(d: usize) -> Result<NakayamaReport, SingularityError> {
    if d < 3 {
        return Err(SingularityError::DTooSmall(d as i64));
    }
    let loewy = d - 1;
    // quotients P_i / rad^l P_i of the indecomposable projectives
    let mut all = BTreeSet::new();
    for start in 0..d {
        for length in 1..=loewy {
            all.insert(Interval { start, length });
        }
    }
    let projectives: Vec<Interval> = (0..d).map(|start| Interval { start, length: loewy }).collect();
    let is_proj = |m: &Interval| projectives.contains(m);
    let socle = |m: &Interval| (m.start + m.length - 1) % d;
    // kernel of the projective cover P_start -> M
    let omega = |m: Interval| Interval { start: (m.start + m.length) % d, length: loewy - m.length };
    // nu sends P_i to the injective hull of its top, which is the projective with that socle
    let nu_shift = (0..d)
        .map(|s| {
            let p = projectives.iter().find(|p| socle(p) == s).expect("every socle occurs");
            (p.start + d - s) % d
        })
        .collect::<BTreeSet<_>>();
    assert_eq!(nu_shift.len(), 1, "N_d is rotation invariant");
    let shift = *nu_shift.iter().next().expect("one shift");
    let tau = |m: Interval| {
        let w = omega(omega(m));
        Interval { start: (w.start + shift) % d, length: w.length }
    };
    let stable: Vec<Interval> = all.iter().copied().filter(|m| !is_proj(m)).collect();
    let index: HashMap<Interval, usize> = stable.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let perm: Vec<usize> = stable.iter().map(|&m| index[&tau(m)]).collect();
    let mut seen = vec![false; perm.len()];
    let (mut period, mut orbits) = (1usize, 0usize);
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        orbits += 1;
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        period = lcm(period, len);
    }
    Ok(NakayamaReport {
        d,
        stable_count: stable.len(),
        indecomposables: all.into_iter().collect(),
        projectives,
        tau_period: period,
        tau_orbits: orbits,
    })
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// How new arrows attach to an added vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttachPattern {
    /// One arrow, no new cycle; the potential is unchanged.
    Pendant,
    /// The new arrows close exactly one chordless oriented cycle, which is added to the potential.
    CloseCycle,
}

/// Arrows of a new vertex `v`: `x -> v` for `x` in `from`, `v -> y` for `y` in `to`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    #[serde(default)]
    pub from: Vec<String>,
    #[serde(default)]
    pub to: Vec<String>,
}

impl Attachment {
    pub fn sink_after(x: &str) -> Self {
        Attachment { from: vec![x.to_string()], to: Vec::new() }
    }

    pub fn source_before(x: &str) -> Self {
        Attachment { from: Vec::new(), to: vec![x.to_string()] }
    }
}

fn attach(qp: &Qp, v: &str, at: &Attachment, pattern: AttachPattern) -> Result<Qp, SingularityError> {
    let mismatch = |s: String| SingularityError::PatternMismatch(s);
    if qp.vertex_index(v).is_ok() {
        return Err(mismatch(format!("vertex {v} already exists")));
    }
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let ends = at.from.iter().map(|x| (x.as_str(), v)).chain(at.to.iter().map(|y| (v, y.as_str())));
    for (s, t) in ends {
        let mut name = format!("{s}>{t}");
        while qp.arrow_index(&name).is_ok() || arrows.iter().any(|a| a.0 == name) {
            name.push('\'');
        }
        arrows.push((name, s.to_string(), t.to_string()));
    }
    let grown = qp.add_vertex(v, &arrows)?;
    let q = quiver(&grown)?;
    let vi = q.n() - 1;
    let new_cycles: Vec<Vec<usize>> = chordless_cycles(&q).into_iter().filter(|c| c.contains(&vi)).collect();
    match pattern {
        AttachPattern::Pendant => {
            if arrows.len() != 1 {
                return Err(mismatch(format!("vertex {v} gets {} arrows, not one", arrows.len())));
            }
            Ok(grown)
        }
        AttachPattern::CloseCycle => {
            if new_cycles.len() != 1 {
                return Err(mismatch(format!("attaching {v} closes {} chordless cycles, not one", new_cycles.len())));
            }
            let cyc = orient(&q, &new_cycles[0]).ok_or_else(|| mismatch(format!("the cycle through {v} is unoriented")))?;
            let names = cycle_names(&grown, &cyc).ok_or_else(|| mismatch("parallel arrows on the new cycle".into()))?;
            let mut w = grown.potential().clone();
            w.add_term(&names, Coeff::one());
            Ok(grown.with_potential(w)?)
        }
    }
}

/// One-point extension: `v` enters as a new vertex, normally a source.
pub fn one_point_extend(qp: &Qp, v: &str, at: &Attachment, pattern: AttachPattern) -> Result<Qp, SingularityError> {
    attach(qp, v, at, pattern)
}

/// One-point coextension: `v` enters as a new vertex, normally a sink.
pub fn one_point_coextend(qp: &Qp, v: &str, at: &Attachment, pattern: AttachPattern) -> Result<Qp, SingularityError> {
    attach(qp, v, at, pattern)
}

fn cycle_names(qp: &Qp, cyc: &[usize]) -> Option<Vec<String>> {
    let l = cyc.len();
    (0..l)
        .map(|i| {
            let (s, t) = (cyc[i], cyc[(i + 1) % l]);
            let mut it = qp.arrows().iter().filter(|a| a.src == s && a.tgt == t);
            let a = it.next()?;
            it.next().is_none().then(|| a.name.clone())
        })
        .collect()
}

/// Which removal pattern a vertex matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropPattern {
    /// One incident arrow, on no potential term.
    Pendant,
    /// One arrow in and one arrow out, lying on a single chordless cycle whose
    /// potential terms all pass through the vertex.
    CycleVertex,
}

impl DropPattern {
    pub fn reference(&self) -> &'static str {
        match self {
            DropPattern::Pendant => "pendant vertex removal",
            DropPattern::CycleVertex => "removal of a degree-two cycle vertex and its two arrows",
        }
    }
}

pub fn match_drop(qp: &Qp, v: &str) -> Result<DropPattern, SingularityError> {
    let i = qp.vertex_index(v)?;
    let ins: Vec<_> = qp.arrows().iter().filter(|a| a.tgt == i).collect();
    let outs: Vec<_> = qp.arrows().iter().filter(|a| a.src == i).collect();
    let touching: Vec<_> = qp
        .potential()
        .terms()
        .filter(|(c, _)| c.iter().any(|n| ins.iter().chain(&outs).any(|a| &a.name == n)))
        .collect();
    if ins.len() + outs.len() == 1 && touching.is_empty() {
        return Ok(DropPattern::Pendant);
    }
    if ins.len() == 1 && outs.len() == 1 {
        let q = qp.underlying_quiver().map_err(crate::error::QpError::from)?;
        let through: Vec<_> = chordless_cycles(&q).into_iter().filter(|c| c.contains(&i)).collect();
        if through.len() == 1 && touching.len() <= 1 {
            return Ok(DropPattern::CycleVertex);
        }
    }
    Err(SingularityError::PatternMismatch(format!(
        "vertex {v} has {} incoming and {} outgoing arrows and {} potential terms",
        ins.len(),
        outs.len(),
        touching.len()
    )))
}

/// Removes `v` with its arrows and the potential terms through it.
pub fn drop_vertex(qp: &Qp, v: &str) -> Result<Qp, SingularityError> {
    match_drop(qp, v)?;
    Ok(qp.delete_vertices(&[qp.vertex_index(v)?]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepOp {
    QpMutation { vertex: String },
    OnePointExtend { vertex: String, attachment: Attachment, pattern: AttachPattern },
    OnePointCoextend { vertex: String, attachment: Attachment, pattern: AttachPattern },
    DropVertex { vertex: String, pattern: DropPattern },
    QuotientIdempotent { vertex: String },
}

/// Flags computed on the Jacobian algebras `A` (before) and `B` (after).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinednessFlags {
    pub a_dim: usize,
    pub b_dim: usize,
    pub a_negative: bool,
    pub a_positive: bool,
    pub b_negative: bool,
    pub b_positive: bool,
    pub a_no_cycle_at_k: bool,
    pub b_no_cycle_at_k: bool,
    pub a_in_arrows_at_most_one: bool,
    pub b_in_arrows_at_most_one: bool,
    /// `"a_to_b"` or `"b_to_a"`: the side on which the arrow count holds and
    /// whose definedness pairs with the opposite flag on the other side.
    pub direction: Option<String>,
}

impl DefinednessFlags {
    pub fn satisfied(&self) -> bool {
        self.direction.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Derived(DefinednessFlags),
    SingularityPreserving { reference: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayStep {
    pub op: StepOp,
    pub certificate: Option<Certificate>,
    pub before: RawQp,
    pub after: RawQp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub case: u8,
    pub leaf_size: usize,
    pub first_step: usize,
    pub components_after: usize,
    pub d_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayTrace {
    pub expected_d: Option<i64>,
    pub steps: Vec<ReplayStep>,
    pub stages: Vec<StageRecord>,
    pub terminal_cycle: usize,
    pub terminal: RawQp,
}

impl ReplayTrace {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn mutation_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.op, StepOp::QpMutation { .. })).count()
    }
}

fn certify(ra: &BasisReport, rb: &BasisReport, k: &str) -> Result<DefinednessFlags, JacobianError> {
    let (a, b) = (&ra.qp, &rb.qp);
    let ka = a.vertex_index(k)?;
    let kb = b.vertex_index(k)?;
    let in_one = |r: &BasisReport, k: usize| r.qp.arrows().iter().filter(|x| x.tgt == k).count() <= 1;
    let mut f = DefinednessFlags {
        a_dim: ra.dimension(),
        b_dim: rb.dimension(),
        a_negative: negative_mutation_defined(ra, ka)?,
        a_positive: positive_mutation_defined(ra, ka)?,
        b_negative: negative_mutation_defined(rb, kb)?,
        b_positive: positive_mutation_defined(rb, kb)?,
        a_no_cycle_at_k: no_cycle_at(ra, ka)?,
        b_no_cycle_at_k: no_cycle_at(rb, kb)?,
        a_in_arrows_at_most_one: in_one(ra, ka),
        b_in_arrows_at_most_one: in_one(rb, kb),
        direction: None,
    };
    let socle = f.a_no_cycle_at_k && f.b_no_cycle_at_k;
    let pair = |x_neg: bool, x_pos: bool, y_neg: bool, y_pos: bool| (x_neg && y_pos) || (x_pos && y_neg);
    if socle && f.a_in_arrows_at_most_one && pair(f.a_negative, f.a_positive, f.b_negative, f.b_positive) {
        f.direction = Some("a_to_b".into());
    } else if socle && f.b_in_arrows_at_most_one && pair(f.b_negative, f.b_positive, f.a_negative, f.a_positive) {
        f.direction = Some("b_to_a".into());
    }
    Ok(f)
}

/// Step recorder shared by both replays.
struct Chain {
    qp: Qp,
    steps: Vec<ReplayStep>,
    certify: bool,
    fresh: usize,
    /// Jacobian report of `qp`, kept when the last step was a certified mutation
    report: Option<BasisReport>,
}

impl Chain {
    fn new(qp: Qp, certify: bool) -> Self {
        Chain { qp, steps: Vec::new(), certify, fresh: 0, report: None }
    }

    fn fail(&self, reason: impl Into<String>) -> SingularityError {
        SingularityError::StepFailed { step: self.steps.len(), reason: reason.into() }
    }

    fn push(&mut self, op: StepOp, certificate: Option<Certificate>, next: Qp) {
        self.steps.push(ReplayStep { op, certificate, before: self.qp.to_raw(), after: next.to_raw() });
        self.qp = next;
        self.report = None;
    }

    fn mutate(&mut self, v: &str) -> Result<(), SingularityError> {
        let next = qp_mutate(&self.qp, v).map_err(|e| self.fail(format!("mutation at {v}: {e}")))?;
        if let Some(c) = next.find_two_cycle() {
            return Err(self.fail(format!("2-cycle {c} after mutation at {v}")));
        }
        if !self.certify {
            self.push(StepOp::QpMutation { vertex: v.to_string() }, None, next);
            return Ok(());
        }
        let before = match self.report.take() {
            Some(r) => r,
            None => jacobian_basis_default(&self.qp).map_err(|e| self.fail(format!("certificate at {v}: {e}")))?,
        };
        let after = jacobian_basis_from(&next, next.default_degree(), before.truncation).map_err(|e| self.fail(format!("certificate at {v}: {e}")))?;
        let f = certify(&before, &after, v).map_err(|e| self.fail(format!("certificate at {v}: {e}")))?;
        if !f.satisfied() {
            return Err(SingularityError::CertificateFailure {
                step: self.steps.len(),
                reason: format!("mutation at {v}: {f:?}"),
            });
        }
        self.push(StepOp::QpMutation { vertex: v.to_string() }, Some(Certificate::Derived(f)), next);
        self.report = Some(after);
        Ok(())
    }

    fn fresh_vertex(&mut self) -> String {
        loop {
            self.fresh += 1;
            let name = format!("c{}", self.fresh);
            if self.qp.vertex_index(&name).is_err() {
                return name;
            }
        }
    }

    /// Adds a pendant vertex: a sink after `x` or, when `outward`, a source before it.
    fn pendant(&mut self, x: &str, outward: bool) -> Result<String, SingularityError> {
        let c = self.fresh_vertex();
        let attachment = if outward { Attachment::source_before(x) } else { Attachment::sink_after(x) };
        let next = attach(&self.qp, &c, &attachment, AttachPattern::Pendant)?;
        let pattern = AttachPattern::Pendant;
        let op = if outward {
            StepOp::OnePointExtend { vertex: c.clone(), attachment, pattern }
        } else {
            StepOp::OnePointCoextend { vertex: c.clone(), attachment, pattern }
        };
        let reference = if outward { "one-point extension by a simple" } else { "one-point coextension by a simple" };
        self.push(op, Some(Certificate::SingularityPreserving { reference: reference.into() }), next);
        Ok(c)
    }

    fn drop(&mut self, v: &str) -> Result<(), SingularityError> {
        let pattern = match_drop(&self.qp, v).map_err(|e| self.fail(e.to_string()))?;
        let next = self.qp.delete_vertices(&[self.qp.vertex_index(v)?]);
        let cert = Certificate::SingularityPreserving { reference: pattern.reference().into() };
        self.push(StepOp::DropVertex { vertex: v.to_string(), pattern }, Some(cert), next);
        Ok(())
    }

    fn degree(&self, v: &str) -> usize {
        let i = self.qp.vertex_index(v).expect("vertex present");
        self.qp.arrows().iter().filter(|a| a.src == i || a.tgt == i).count()
    }
}

fn quiver(qp: &Qp) -> Result<Quiver, SingularityError> {
    Ok(qp.underlying_quiver().map_err(crate::error::QpError::from)?)
}

/// True when the potential is a sum of exactly the chordless cycles, each
/// with a nonzero coefficient.
pub fn potential_is_primitive(qp: &Qp) -> bool {
    let Ok(q) = qp.underlying_quiver() else { return false };
    let mut want = BTreeSet::new();
    for c in chordless_cycles(&q) {
        let Some(o) = orient(&q, &c) else { return false };
        let Some(names) = cycle_names(qp, &o) else { return false };
        want.insert(min_rotation(&names));
    }
    let have: BTreeSet<Vec<String>> =
        qp.potential().terms().filter(|(_, x)| !x.is_zero()).map(|(c, _)| c.clone()).collect();
    have == want
}

/// Mutates each petal at `v_{m_j}, v_{m_j - 1}, ..., v_3` and checks that a
/// single oriented cycle of length `m0 + n` with pendant tails remains.
pub fn replay_reduction(spec: &FloriatedSpec) -> Result<ReplayTrace, SingularityError> {
    let tree = spec.to_tree_spec()?;
    let layout = build_layout(&tree)?;
    let mut chain = Chain::new(layout.qp.clone(), false);
    for (c, p) in spec.petals.iter().enumerate() {
        for j in (3..=p.size).rev() {
            chain.mutate(&format!("v{}_{j}", c + 1))?;
        }
    }
    let q = quiver(&chain.qp)?;
    let cycles = chordless_cycles(&q);
    let expected = spec.m0 + spec.petals.len();
    if cycles.len() != 1 {
        return Err(chain.fail(format!("{} chordless cycles remain", cycles.len())));
    }
    let cyc = orient(&q, &cycles[0]).ok_or_else(|| chain.fail("remaining cycle is unoriented"))?;
    if cyc.len() != expected {
        return Err(SingularityError::LengthMismatch { expected: expected as i64, got: cyc.len() as i64 });
    }
    let mut tails = tail_lengths(&q, &cyc).ok_or_else(|| chain.fail("off-cycle vertices are not pendant paths"))?;
    tails.sort_unstable();
    let mut want: Vec<usize> = spec.petals.iter().map(|p| p.size - 3).filter(|&t| t > 0).collect();
    want.sort_unstable();
    if tails != want {
        return Err(chain.fail(format!("tails {tails:?}, expected {want:?}")));
    }
    let names = cycle_names(&chain.qp, &cyc).ok_or_else(|| chain.fail("parallel arrows on the cycle"))?;
    let terms: Vec<_> = chain.qp.potential().terms().filter(|(_, x)| !x.is_zero()).collect();
    if terms.len() != 1 || *terms[0].0 != min_rotation(&names) {
        return Err(chain.fail(format!("potential {} is not the cycle", chain.qp.potential())));
    }
    Ok(ReplayTrace {
        expected_d: None,
        terminal_cycle: cyc.len(),
        terminal: chain.qp.to_raw(),
        steps: chain.steps,
        stages: Vec::new(),
    })
}

/// Lengths of the paths hanging off `cyc`; `None` if the rest is not a union
/// of paths each attached by one end.
fn tail_lengths(q: &Quiver, cyc: &[usize]) -> Option<Vec<usize>> {
    let on: BTreeSet<usize> = cyc.iter().copied().collect();
    let rest: Vec<usize> = (0..q.n()).filter(|v| !on.contains(v)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in &rest {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut i = 0;
        while i < comp.len() {
            for u in q.neighbours(comp[i]) {
                if !on.contains(&u) && seen.insert(u) {
                    comp.push(u);
                }
            }
            i += 1;
        }
        let inner_edges: usize =
            comp.iter().map(|&v| q.neighbours(v).iter().filter(|u| !on.contains(u)).count()).sum::<usize>() / 2;
        let attach: usize = comp.iter().map(|&v| q.neighbours(v).iter().filter(|u| on.contains(u)).count()).sum();
        let max_deg = comp.iter().map(|&v| q.neighbours(v).len()).max().unwrap_or(0);
        if inner_edges + 1 != comp.len() || attach != 1 || max_deg > 2 {
            return None;
        }
        out.push(comp.len());
    }
    Some(out)
}

/// Replays the leaf-removal chain down to one cycle, certifying each step.
pub fn replay_theorem_chain(spec: &PolygonTreeSpec) -> Result<ReplayTrace, SingularityError> {
    replay_theorem_chain_with(spec, true)
}

pub fn replay_theorem_chain_with(spec: &PolygonTreeSpec, certify: bool) -> Result<ReplayTrace, SingularityError> {
    let desc = singularity_invariant(spec)?;
    let qp = build_layout(spec)?.qp;
    let mut chain = Chain::new(qp, certify);
    let mut stages = Vec::new();
    loop {
        let q = quiver(&chain.qp)?;
        let dec = decompose(&q).map_err(|e| chain.fail(e.to_string()))?;
        if dec.spec.n_components() == 1 {
            let got = dec.cycles[0].len() as i64;
            if got != desc.d {
                return Err(SingularityError::LengthMismatch { expected: desc.d, got });
            }
            return Ok(ReplayTrace {
                expected_d: Some(desc.d),
                terminal_cycle: dec.cycles[0].len(),
                terminal: chain.qp.to_raw(),
                steps: chain.steps,
                stages,
            });
        }
        let first_step = chain.steps.len();
        let (case, leaf_size) = stage(&mut chain, &q, &dec)?;
        let q2 = quiver(&chain.qp)?;
        let dec2 = decompose(&q2).map_err(|e| chain.fail(format!("case {case} left a non polygon tree: {e}")))?;
        let (m, n, dq) = d_invariant(&dec2.spec)?;
        let d_after = m as i64 - 3 * n as i64 + dq as i64;
        if d_after != desc.d {
            return Err(chain.fail(format!("case {case} changed d from {} to {d_after}", desc.d)));
        }
        if !potential_is_primitive(&chain.qp) {
            return Err(chain.fail(format!("case {case} left a potential that is not primitive")));
        }
        stages.push(StageRecord {
            case,
            leaf_size,
            first_step,
            components_after: dec2.spec.n_components(),
            d_after,
        });
    }
}

fn stage(chain: &mut Chain, q: &Quiver, dec: &crate::polygon::Decomposition) -> Result<(u8, usize), SingularityError> {
    let k = dec.spec.n_components();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, g) in dec.spec.gluings.iter().enumerate() {
        adj.entry(g.host).or_default().push(i + 1);
        adj.entry(i + 1).or_default().push(g.host);
    }
    // smallest leaf first, ties broken by the sorted vertex labels
    let key = |c: usize| {
        let mut v: Vec<&str> = dec.cycles[c].iter().map(|&i| q.label(i)).collect();
        v.sort_unstable();
        (v.len(), v)
    };
    let leaf = (0..k)
        .filter(|c| adj[c].len() == 1)
        .min_by(|&x, &y| key(x).cmp(&key(y)))
        .expect("a tree has leaves");
    let host = adj[&leaf][0];
    let (a, _) = dec.glued_arrow(leaf, host).expect("leaf is glued to its host");
    let rotate = |c: &[usize]| -> Vec<usize> {
        let p = c.iter().position(|&x| x == a).expect("glued vertex on cycle");
        c[p..].iter().chain(&c[..p]).copied().collect()
    };
    let lc = rotate(&dec.cycles[leaf]);
    let hc = rotate(&dec.cycles[host]);
    let glued: BTreeSet<(usize, usize)> =
        (1..k).map(|c| (dec.cycles[c][0], dec.cycles[c][1])).collect();
    let hm = hc.len();
    let d1 = glued.contains(&(hc[1], hc[2]));
    let dn = glued.contains(&(hc[hm - 1], hc[0]));
    let names = |v: &[usize]| -> Vec<String> { v.iter().map(|&i| q.label(i).to_string()).collect() };
    let lc = names(&lc);
    let case = match (d1, dn) {
        (false, false) => {
            let lc = rounds(chain, lc, false)?;
            if lc.len() == 3 {
                chain.drop(&lc[2])?;
            } else {
                let (x3, x4) = (lc[2].clone(), lc[3].clone());
                chain.mutate(&x3)?;
                let c = chain.pendant(&x4, false)?;
                chain.mutate(&x4)?;
                chain.drop(&x3)?;
                chain.drop(&c)?;
            }
            1
        }
        (true, false) => {
            case_two(chain, lc, false)?;
            2
        }
        (false, true) => {
            let mut lo = vec![lc[1].clone(), lc[0].clone()];
            lo.extend(lc[2..].iter().rev().cloned());
            case_two(chain, lo, true)?;
            3
        }
        (true, true) => {
            chain.pendant(lc.last().expect("leaf cycle"), true)?;
            for x in lc[2..].iter().rev() {
                chain.mutate(x)?;
            }
            4
        }
    };
    Ok((case, dec.cycles[leaf].len()))
}

/// Shrinks the leaf cycle `[a, b, x3, ..., xm]` by one per round until it has
/// at most four vertices. With `flip` every added vertex is a source instead
/// of a sink (the mirror image of the schedule).
fn rounds(chain: &mut Chain, mut lc: Vec<String>, flip: bool) -> Result<Vec<String>, SingularityError> {
    while lc.len() > 4 {
        let (x3, x4) = (lc[2].clone(), lc[3].clone());
        chain.mutate(&x3)?;
        let c = chain.pendant(&x4, flip)?;
        chain.mutate(&x4)?;
        if chain.degree(&x3) != 1 {
            return Err(SingularityError::PatternMismatch(format!("{x3} is not pendant after mutating {x4}")));
        }
        chain.drop(&x3)?;
        for x in &lc[4..] {
            chain.mutate(x)?;
        }
        let mut next = vec![lc[lc.len() - 1].clone(), lc[1].clone(), c];
        next.extend(lc[3..lc.len() - 1].iter().cloned());
        lc = next;
    }
    Ok(lc)
}

fn case_two(chain: &mut Chain, lc: Vec<String>, flip: bool) -> Result<(), SingularityError> {
    let lc = rounds(chain, lc, flip)?;
    if lc.len() == 3 {
        return chain.mutate(&lc[2]);
    }
    let (x3, x4) = (lc[2].clone(), lc[3].clone());
    chain.mutate(&x3)?;
    let c = chain.pendant(&x4, flip)?;
    chain.mutate(&x4)?;
    chain.drop(&x3)?;
    chain.mutate(&c)
}

/// Outcome of removing the middle vertex of the short arm of a canonical algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CanonicalDrop {
    pub weights: (usize, usize, usize),
    pub step: ReplayStep,
    pub floriated: Option<FloriatedSpec>,
    pub d: i64,
}

/// Applies the idempotent quotient at `c1` and reads the result as a floriated quiver.
pub fn canonical_drop(p1: usize, p2: usize, p3: usize) -> Result<CanonicalDrop, SingularityError> {
    let ct = build_canonical_ct(p1, p2, p3)?;
    // the relations of the cluster-tilted algebra become the primitive
    // potential of the two cycles that survive the quotient
    let i = ct.qp.vertex_index(&ct.c1)?;
    let after = ct.qp.delete_vertices(&[i]);
    let q = quiver(&after)?;
    let w = crate::polygon::primitive_potential(&q)?;
    let after = Qp::from_quiver(&q, w)?;
    let step = ReplayStep {
        op: StepOp::QuotientIdempotent { vertex: ct.c1.clone() },
        certificate: Some(Certificate::SingularityPreserving { reference: "quotient by the idempotent at c1".into() }),
        before: ct.qp.to_raw(),
        after: after.to_raw(),
    };
    let dec = decompose(&q)?;
    let floriated = as_floriated(&dec.spec);
    let (m, n, dq) = d_invariant(&dec.spec)?;
    Ok(CanonicalDrop { weights: (p1, p2, p3), step, floriated, d: m as i64 - 3 * n as i64 + dq as i64 })
}

/// A spec whose gluings all sit on component 0, read as a floriated spec.
pub fn as_floriated(spec: &PolygonTreeSpec) -> Option<FloriatedSpec> {
    if spec.gluings.iter().any(|g| g.host != 0) {
        return None;
    }
    let mut petals: Vec<(usize, usize)> =
        spec.gluings.iter().enumerate().map(|(i, g)| (g.arrow + 1, spec.components[i + 1])).collect();
    petals.sort_unstable();
    Some(FloriatedSpec::new(spec.components[0], &petals))
}

/// Scalar check used by tests: all potential coefficients equal one.
pub fn unit_potential(w: &Potential) -> bool {
    w.terms().all(|(_, x)| x.is_one())
}
