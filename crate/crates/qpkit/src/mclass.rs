//! Mutation classes, named exceptional types and representation type.
//!
//! A class is explored breadth first over canonical codes. With three or more
//! vertices a mutation-finite class never shows an arrow of weight 3 or more,
//! so the search stops with `Infinite` the moment one appears; otherwise the
//! weight-bounded quivers on `n` vertices are finitely many and the search
//! closes. Classes of the named representatives are cached on disk.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{code_from_hex, code_hex, code_of};
use crate::error::ClassError;
use crate::polygon::{decompose, Decomposition};
use crate::quiver::Quiver;

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassStatus {
    /// Sorted canonical codes of every member.
    Finite { size: usize, codes: Vec<Vec<i8>> },
    /// Mutation sequence (vertex labels) from the seed to an arrow of weight >= 3.
    Infinite { witness: Vec<String> },
    Capped { cap: usize },
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    pub seed: Quiver,
    pub status: ClassStatus,
}

impl ClassReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.status, ClassStatus::Finite { .. })
    }

    pub fn contains(&self, q: &Quiver) -> bool {
        match &self.status {
            ClassStatus::Finite { codes, .. } => codes.binary_search(&code_of(q)).is_ok(),
            _ => false,
        }
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            ClassStatus::Finite { .. } => "finite",
            ClassStatus::Infinite { .. } => "infinite",
            ClassStatus::Capped { .. } => "capped",
        }
    }
}

pub fn explore_class(q: &Quiver, cap: usize) -> Result<ClassReport, ClassError> {
    let n = q.n();
    if n < 2 {
        return Err(ClassError::TooFewVertices);
    }
    if n == 2 {
        return Ok(ClassReport {
            seed: q.clone(),
            status: ClassStatus::Finite { size: 1, codes: vec![code_of(q)] },
        });
    }
    if q.max_weight() >= 3 {
        return Ok(ClassReport { seed: q.clone(), status: ClassStatus::Infinite { witness: Vec::new() } });
    }
    let mut seen: HashSet<Vec<i8>> = HashSet::from([code_of(q)]);
    let mut queue: VecDeque<(Quiver, Vec<usize>)> = VecDeque::from([(q.clone(), Vec::new())]);
    while let Some((cur, path)) = queue.pop_front() {
        for k in 0..n {
            if path.last() == Some(&k) {
                continue;
            }
            let next = cur.mutate_at(k);
            let mut p = path.clone();
            p.push(k);
            if next.max_weight() >= 3 {
                let witness = p.iter().map(|&i| q.label(i).to_string()).collect();
                return Ok(ClassReport { seed: q.clone(), status: ClassStatus::Infinite { witness } });
            }
            if seen.insert(code_of(&next)) {
                if seen.len() > cap {
                    return Ok(ClassReport { seed: q.clone(), status: ClassStatus::Capped { cap } });
                }
                queue.push_back((next, p));
            }
        }
    }
    let mut codes: Vec<Vec<i8>> = seen.into_iter().collect();
    codes.sort_unstable();
    Ok(ClassReport { seed: q.clone(), status: ClassStatus::Finite { size: codes.len(), codes } })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeTag {
    A(usize),
    D(usize),
    E(usize),
    /// Affine `E~_k`.
    ExtE(usize),
    /// Elliptic `E_k^(1,1)`.
    E11(usize),
    X(usize),
    T(usize),
    /// Two vertices joined by `m` arrows.
    K(usize),
    SurfaceOrUnknown,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::A(n) => write!(f, "A({n})"),
            TypeTag::D(n) => write!(f, "D({n})"),
            TypeTag::E(n) => write!(f, "E({n})"),
            TypeTag::ExtE(n) => write!(f, "ExtE({n})"),
            TypeTag::E11(n) => write!(f, "E11({n})"),
            TypeTag::X(n) => write!(f, "X({n})"),
            TypeTag::T(n) => write!(f, "T({n})"),
            TypeTag::K(m) => write!(f, "K({m})"),
            TypeTag::SurfaceOrUnknown => write!(f, "SurfaceOrUnknown"),
        }
    }
}

impl TypeTag {
    /// Vertex count of the representative.
    pub fn vertex_count(&self) -> Option<usize> {
        match *self {
            TypeTag::A(n) | TypeTag::D(n) | TypeTag::E(n) | TypeTag::X(n) => Some(n),
            TypeTag::ExtE(k) => Some(k + 1),
            TypeTag::E11(k) => Some(k + 2),
            TypeTag::T(6) => Some(3),
            TypeTag::T(7) => Some(4),
            TypeTag::T(_) => None,
            TypeTag::K(_) => Some(2),
            TypeTag::SurfaceOrUnknown => None,
        }
    }

    /// Representative quiver with labels `0..n`, or `None` for tags without one.
    pub fn representative(&self) -> Option<Quiver> {
        let arrows: Vec<(usize, usize, u32)> = match *self {
            TypeTag::A(n) if n >= 1 => (1..n).map(|i| (i - 1, i, 1)).collect(),
            TypeTag::D(n) if n >= 4 => {
                let mut a: Vec<_> = (1..n - 1).map(|i| (i - 1, i, 1)).collect();
                a.push((n - 3, n - 1, 1));
                a
            }
            TypeTag::E(n) if (6..=8).contains(&n) => star_tree(&[1, 2, n - 4]),
            TypeTag::ExtE(6) => star_tree(&[2, 2, 2]),
            TypeTag::ExtE(7) => star_tree(&[1, 3, 3]),
            TypeTag::ExtE(8) => star_tree(&[1, 2, 5]),
            TypeTag::E11(6) => vec![
                (0, 1, 1), (1, 2, 1), (3, 1, 1), (3, 4, 1), (4, 2, 1), (2, 3, 2),
                (4, 5, 1), (3, 6, 1), (6, 2, 1), (6, 7, 1),
            ],
            TypeTag::E11(7) => vec![
                (0, 1, 1), (1, 2, 1), (2, 3, 1), (4, 2, 1), (4, 5, 1), (5, 3, 1), (3, 4, 2),
                (4, 6, 1), (6, 3, 1), (6, 7, 1), (7, 8, 1),
            ],
            TypeTag::E11(8) => vec![
                (0, 1, 1), (1, 2, 1), (3, 1, 1), (3, 4, 1), (4, 2, 1), (2, 3, 2), (3, 5, 1),
                (5, 2, 1), (5, 6, 1), (6, 7, 1), (7, 8, 1), (8, 9, 1),
            ],
            TypeTag::X(6) => vec![(0, 1, 2), (1, 2, 1), (3, 2, 1), (4, 5, 2), (5, 2, 1), (2, 4, 1), (2, 0, 1)],
            TypeTag::X(7) => vec![
                (0, 1, 2), (1, 2, 1), (2, 3, 1), (4, 5, 2), (5, 2, 1), (2, 4, 1), (2, 0, 1),
                (6, 2, 1), (3, 6, 2),
            ],
            TypeTag::T(6) => vec![(0, 2, 2), (2, 1, 2), (1, 0, 2)],
            TypeTag::T(7) => T7_ARROWS.to_vec(),
            TypeTag::K(m) if m >= 1 => vec![(0, 1, m as u32)],
            _ => return None,
        };
        let n = self.vertex_count()?;
        Some(Quiver::from_arrows((0..n).map(|i| i.to_string()).collect(), &arrows).expect("representative is valid"))
    }

    /// Named candidates with `n` vertices, in recognition order.
    pub fn candidates(n: usize) -> Vec<TypeTag> {
        let mut out = vec![TypeTag::A(n)];
        if n >= 4 {
            out.push(TypeTag::D(n));
        }
        if (6..=8).contains(&n) {
            out.push(TypeTag::E(n));
        }
        if (7..=9).contains(&n) {
            out.push(TypeTag::ExtE(n - 1));
        }
        if (8..=10).contains(&n) {
            out.push(TypeTag::E11(n - 2));
        }
        if (6..=7).contains(&n) {
            out.push(TypeTag::X(n));
        }
        match n {
            3 => out.push(TypeTag::T(6)),
            4 => out.push(TypeTag::T(7)),
            _ => {}
        }
        out
    }
}

/// A 4-vertex quiver with one double arrow whose class is a single quiver. Of
/// the 64 orientations of this graph, only this class is mutation finite.
const T7_ARROWS: [(usize, usize, u32); 6] = [(0, 1, 1), (2, 1, 1), (0, 2, 1), (1, 3, 2), (3, 2, 1), (3, 0, 1)];

/// Tree with a centre vertex 0 and arms of the given lengths.
fn star_tree(arms: &[usize]) -> Vec<(usize, usize, u32)> {
    let mut a = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            a.push((prev, next, 1));
            prev = next;
            next += 1;
        }
    }
    a
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    tag: String,
    n: usize,
    hash: String,
    codes: Vec<String>,
}

fn codes_hash(codes: &[Vec<i8>]) -> String {
    let mut h = Sha256::new();
    for c in codes {
        h.update(code_hex(c).as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Canonical code sets of the named classes, memoized in memory and on disk.
pub struct ClassDb {
    dir: Option<PathBuf>,
    cap: usize,
    classes: Mutex<HashMap<TypeTag, Arc<BTreeSet<Vec<i8>>>>>,
}

impl ClassDb {
    /// `QF_CACHE_DIR` when set, otherwise a directory under the system temp dir.
    pub fn from_env() -> ClassDb {
        let dir = std::env::var_os("QF_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("qpkit-class-cache"));
        ClassDb::new(Some(dir), DEFAULT_CAP)
    }

    pub fn new(dir: Option<PathBuf>, cap: usize) -> ClassDb {
        ClassDb { dir, cap, classes: Mutex::new(HashMap::new()) }
    }

    /// The process-wide database.
    pub fn global() -> &'static ClassDb {
        static DB: OnceLock<ClassDb> = OnceLock::new();
        DB.get_or_init(ClassDb::from_env)
    }

    fn path(&self, tag: TypeTag) -> Option<PathBuf> {
        let name = tag.to_string().replace(['(', ')'], "_");
        self.dir.as_ref().map(|d| d.join(format!("{name}n{}.json", tag.vertex_count().unwrap_or(0))))
    }

    fn load(&self, tag: TypeTag) -> Option<BTreeSet<Vec<i8>>> {
        let text = std::fs::read_to_string(self.path(tag)?).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        let codes: Vec<Vec<i8>> = file.codes.iter().map(|c| code_from_hex(c)).collect::<Option<_>>()?;
        // a stale or hand-edited file is recomputed rather than trusted
        (file.tag == tag.to_string() && codes_hash(&codes) == file.hash).then(|| codes.into_iter().collect())
    }

    fn store(&self, tag: TypeTag, codes: &BTreeSet<Vec<i8>>) {
        let Some(path) = self.path(tag) else { return };
        let list: Vec<Vec<i8>> = codes.iter().cloned().collect();
        let file = CacheFile {
            tag: tag.to_string(),
            n: tag.vertex_count().unwrap_or(0),
            hash: codes_hash(&list),
            codes: list.iter().map(|c| code_hex(c)).collect(),
        };
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        // write-then-rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, serde_json::to_string(&file).expect("serializable")).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }

    /// Code set of a named class; `Ok(None)` when the tag has no representative.
    pub fn class(&self, tag: TypeTag) -> Result<Option<Arc<BTreeSet<Vec<i8>>>>, ClassError> {
        if let Some(c) = self.classes.lock().expect("class db lock").get(&tag) {
            return Ok(Some(c.clone()));
        }
        let Some(rep) = tag.representative() else { return Ok(None) };
        let codes = match self.load(tag) {
            Some(c) => c,
            None => {
                let report = explore_class(&rep, self.cap)?;
                let codes: BTreeSet<Vec<i8>> = match report.status {
                    ClassStatus::Finite { codes, .. } => codes.into_iter().collect(),
                    ClassStatus::Capped { cap } => return Err(ClassError::Capped(cap)),
                    ClassStatus::Infinite { witness } => return Err(ClassError::InfiniteClass(witness)),
                };
                self.store(tag, &codes);
                codes
            }
        };
        let codes = Arc::new(codes);
        self.classes.lock().expect("class db lock").insert(tag, codes.clone());
        Ok(Some(codes))
    }

    pub fn contains(&self, tag: TypeTag, q: &Quiver) -> Result<bool, ClassError> {
        if tag.vertex_count() != Some(q.n()) {
            return Ok(false);
        }
        Ok(self.class(tag)?.is_some_and(|c| c.contains(&code_of(q))))
    }

    /// First named class containing `q`.
    pub fn recognize(&self, q: &Quiver) -> Result<Option<TypeTag>, ClassError> {
        if q.n() == 2 {
            return Ok(Some(match q.max_weight() {
                0 => return Ok(None),
                1 => TypeTag::A(2),
                m => TypeTag::K(m as usize),
            }));
        }
        for tag in TypeTag::candidates(q.n()) {
            if self.contains(tag, q)? {
                return Ok(Some(tag));
            }
        }
        Ok(None)
    }
}

pub fn classify_mutation_type(q: &Quiver) -> Result<TypeTag, ClassError> {
    classify_with(ClassDb::global(), q, DEFAULT_CAP)
}

pub fn classify_with(db: &ClassDb, q: &Quiver, cap: usize) -> Result<TypeTag, ClassError> {
    if q.n() < 2 {
        return Err(ClassError::TooFewVertices);
    }
    if let Some(tag) = db.recognize(q)? {
        return Ok(tag);
    }
    let report = explore_class(q, cap)?;
    match report.status {
        ClassStatus::Finite { .. } => Ok(TypeTag::SurfaceOrUnknown),
        ClassStatus::Infinite { witness } => Err(ClassError::InfiniteClass(witness)),
        ClassStatus::Capped { cap } => Err(ClassError::Capped(cap)),
    }
}

/// Some induced 6-vertex subquiver is mutation equivalent to `E_6`.
pub fn has_e6_class_subquiver(q: &Quiver) -> Result<bool, ClassError> {
    has_e6_with(ClassDb::global(), q, DEFAULT_CAP)
}

pub fn has_e6_with(db: &ClassDb, q: &Quiver, cap: usize) -> Result<bool, ClassError> {
    if q.n() >= 3 {
        if let ClassStatus::Infinite { witness } = explore_class(q, cap)?.status {
            return Err(ClassError::InfiniteClass(witness));
        }
    }
    let n = q.n();
    if n < 6 {
        return Ok(false);
    }
    let e6 = db.class(TypeTag::E(6))?.expect("E6 has a representative");
    let mut subset: Vec<usize> = (0..6).collect();
    loop {
        let sub = q.induced(&subset);
        if sub.is_connected() && e6.contains(&code_of(&sub)) {
            return Ok(true);
        }
        // next 6-subset in lexicographic order
        let mut i = 6;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if subset[i] < n - 6 + i {
                break;
            }
            if i == 0 {
                return Ok(false);
            }
        }
        subset[i] += 1;
        for j in i + 1..6 {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationType {
    Finite,
    Tame,
    Wild,
    /// Mutation equivalent to `X_6`, `X_7`, `T`, or `K_m`; the trichotomy
    /// statement does not cover these classes.
    OutOfTrichotomy,
}

impl fmt::Display for RepresentationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RepresentationType::Finite => "finite",
            RepresentationType::Tame => "tame",
            RepresentationType::Wild => "wild",
            RepresentationType::OutOfTrichotomy => "out_of_trichotomy",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct RepresentationVerdict {
    pub verdict: RepresentationType,
    pub tag: Option<TypeTag>,
    /// Route that produced the verdict, for reports.
    pub reason: String,
    pub witness: Option<Vec<String>>,
}

/// Polygon trees shaped as a star of triangles around one component (or a
/// single cycle) are cluster-tilted of type `D`.
pub fn structural_type_d(dec: &Decomposition) -> bool {
    let spec = &dec.spec;
    let k = spec.n_components();
    if k == 1 {
        return spec.components[0] >= 4;
    }
    (0..k).any(|centre| {
        (0..k).all(|c| c == centre || spec.components[c] == 3)
            && spec.gluings.iter().enumerate().all(|(i, g)| g.host == centre || i + 1 == centre)
    })
}

pub fn representation_type(q: &Quiver) -> Result<RepresentationVerdict, ClassError> {
    representation_type_with(ClassDb::global(), q, DEFAULT_CAP)
}

pub fn representation_type_with(db: &ClassDb, q: &Quiver, cap: usize) -> Result<RepresentationVerdict, ClassError> {
    let dec = decompose(q)?;
    let d = structural_type_d(&dec);
    if q.n() > 10 {
        if d {
            return Ok(RepresentationVerdict {
                verdict: RepresentationType::Finite,
                tag: Some(TypeTag::D(q.n())),
                reason: "star of triangles: cluster-tilted of type D".into(),
                witness: None,
            });
        }
        let witness = match explore_class(q, cap.min(20_000))?.status {
            ClassStatus::Infinite { witness } => Some(witness),
            _ => None,
        };
        return Ok(RepresentationVerdict {
            verdict: RepresentationType::Wild,
            tag: None,
            reason: "more than 10 vertices and not of type D".into(),
            witness,
        });
    }
    let tag = match classify_with(db, q, cap) {
        Ok(t) => t,
        Err(ClassError::InfiniteClass(w)) => {
            return Ok(RepresentationVerdict {
                verdict: RepresentationType::Wild,
                tag: None,
                reason: "mutation infinite".into(),
                witness: Some(w),
            })
        }
        Err(e) => return Err(e),
    };
    let verdict = match tag {
        TypeTag::A(_) | TypeTag::D(_) | TypeTag::E(_) => RepresentationType::Finite,
        TypeTag::ExtE(_) | TypeTag::E11(_) => RepresentationType::Tame,
        TypeTag::X(_) | TypeTag::T(_) | TypeTag::K(_) => RepresentationType::OutOfTrichotomy,
        TypeTag::SurfaceOrUnknown => RepresentationType::Wild,
    };
    Ok(RepresentationVerdict { verdict, tag: Some(tag), reason: format!("class of {tag}"), witness: None })
}
