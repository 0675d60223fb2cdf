use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("loop arrow {0}")]
    LoopArrow(String),
    #[error("arrow {0} closes an oriented 2-cycle or duplicates a vertex pair")]
    TwoCycle(String),
    #[error("arrow {0} has a non-positive weight")]
    NonPositiveWeight(String),
    #[error("arrow {0} has an endpoint that is not a vertex")]
    DanglingEndpoint(String),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{n} vertices exceed the bound of {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("malformed quiver: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("arrow name {0} is used twice")]
    DuplicateArrow(String),
    #[error("potential term {0} is not a cyclic path of length at least 2")]
    NotACycle(String),
    #[error("bad coefficient {0}")]
    BadCoefficient(String),
    #[error("condition (c1) fails: loop at vertex {0}")]
    LoopAtVertex(String),
    #[error("condition (c2) fails: oriented 2-cycle {1} through vertex {0}")]
    TwoCycleAtVertex(String, String),
    #[error("condition (c3) fails: potential term {1} cannot avoid starting at vertex {0}")]
    CycleThroughVertexInPotential(String, String),
    #[error("quadratic part is not split: {0}")]
    NonSplittableQuadraticPart(String),
    #[error("reduction did not stabilize within {0} substitution rounds")]
    NoConvergence(usize),
    #[error("mutation result still has the 2-cycle {0}")]
    NotTwoAcyclic(String),
    #[error("malformed QP: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error("the basis report is not saturated")]
    NotSaturated,
    #[error("more than {0} paths below the truncation degree")]
    PathLimit(usize),
    #[error("max degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error("component sizes must be at least 3, got {0}")]
    ComponentTooSmall(usize),
    #[error("petal size must be at least 3, got {0}")]
    PetalTooSmall(usize),
    #[error("invalid petal position {0}")]
    InvalidPosition(usize),
    #[error("arrow {arrow} of component {host} is glued twice")]
    GluedArrowReuse { host: usize, arrow: usize },
    #[error("gluing of component {0} does not point to an earlier component")]
    NonTreeGluing(usize),
    #[error("expected {expected} gluings, got {got}")]
    GluingCount { expected: usize, got: usize },
    #[error("not a polygon-tree quiver: {0}")]
    NotPolygonTree(String),
    #[error("quiver is not cyclically oriented: chordless cycle {0} is unoriented")]
    NotCyclicallyOriented(String),
    #[error("only weight p1 = 2 is supported, got {0}")]
    UnsupportedWeight(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("mutation class is infinite (witness {0:?})")]
    InfiniteClass(Vec<String>),
    #[error("class exploration hit the cap of {0} quivers")]
    Capped(usize),
    #[error("need at least 2 vertices")]
    TooFewVertices,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error("spec is not simple: {0}")]
    NotSimple(String),
    #[error("d must be at least 3, got {0}")]
    DTooSmall(i64),
    #[error("surgery pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("certificate failure at step {step}: {reason}")]
    CertificateFailure { step: usize, reason: String },
    #[error("terminal cycle has length {got}, expected {expected}")]
    LengthMismatch { expected: i64, got: i64 },
    #[error("step {step} failed: {reason}")]
    StepFailed { step: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unrecognized input: expected a quiver, a QP, a polygon-tree spec or a floriated spec")]
    Unrecognized,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}
