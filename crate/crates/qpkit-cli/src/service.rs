//! HTTP session service.
//!
//! Sessions live in memory behind one mutex each, so requests on one session
//! run in order while different sessions proceed in parallel. Invariant panels
//! and classifications run on the blocking pool under a time budget; when the
//! budget runs out the response carries a job id instead, and the job keeps
//! running and can be polled.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use qpkit::io::parse_value;
use qpkit::mclass::{ClassDb, DEFAULT_CAP};
use qpkit::qp::{qp_mutate, RawQp};
use qpkit::Qp;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;
use tokio::sync::{Mutex, RwLock};

use crate::commands;

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(2);

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("session {0} not found")]
    SessionNotFound(String),
    #[error("job {0} not found")]
    JobNotFound(String),
    #[error("nothing to undo")]
    EmptyHistory,
    #[error("{0}")]
    BadRequest(String),
}

impl ApiError {
    fn kind(&self) -> &'static str {
        match self {
            ApiError::SessionNotFound(_) => "SessionNotFound",
            ApiError::JobNotFound(_) => "JobNotFound",
            ApiError::EmptyHistory => "EmptyHistory",
            ApiError::BadRequest(_) => "BadRequest",
        }
    }

    fn status(&self) -> StatusCode {
        match self {
            ApiError::SessionNotFound(_) | ApiError::JobNotFound(_) => StatusCode::NOT_FOUND,
            ApiError::EmptyHistory => StatusCode::CONFLICT,
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(json!({ "error": self.kind(), "message": self.to_string() }))).into_response()
    }
}

/// Loading or saving the session file.
#[derive(Debug, Error)]
pub enum StateError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("session {id} does not replay: {source}")]
    Replay { id: String, source: ApiError },
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub struct Session {
    pub id: String,
    pub initial: Qp,
    pub current: Qp,
    /// Mutated vertex and the QP before the mutation.
    pub history: Vec<(String, Qp)>,
    pub created: u64,
    pub updated: u64,
}

/// On-disk form: the initial QP and the mutation sequence, replayed on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SavedSession {
    pub id: String,
    pub initial: RawQp,
    pub mutations: Vec<String>,
    pub created: u64,
    pub updated: u64,
}

impl Session {
    fn new(id: String, qp: Qp) -> Self {
        let t = now();
        Session { id, initial: qp.clone(), current: qp, history: Vec::new(), created: t, updated: t }
    }

    pub fn saved(&self) -> SavedSession {
        SavedSession {
            id: self.id.clone(),
            initial: self.initial.to_raw(),
            mutations: self.history.iter().map(|(v, _)| v.clone()).collect(),
            created: self.created,
            updated: self.updated,
        }
    }

    pub fn replay(saved: &SavedSession) -> Result<Session, ApiError> {
        let initial = Qp::from_raw(&saved.initial).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        let mut s = Session::new(saved.id.clone(), initial);
        for v in &saved.mutations {
            let next = qp_mutate(&s.current, v).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            s.history.push((v.clone(), std::mem::replace(&mut s.current, next)));
        }
        s.created = saved.created;
        s.updated = saved.updated;
        Ok(s)
    }

    pub fn snapshot(&self) -> Value {
        let quiver = self.current.underlying_quiver().ok().map(|q| q.to_raw());
        json!({
            "id": self.id,
            "qp": self.current.to_raw(),
            "quiver": quiver,
            "potential": self.current.potential().to_string(),
            "history": self.history.iter().map(|(v, _)| v).collect::<Vec<_>>(),
            "created": self.created,
            "updated": self.updated,
        })
    }
}

#[derive(Clone, Debug)]
enum Job {
    Pending,
    Ready(Value),
    Failed(String),
}

struct Inner {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    jobs: std::sync::Mutex<HashMap<String, Job>>,
    budget: Duration,
    cap: usize,
    db: &'static ClassDb,
}

#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

impl AppState {
    pub fn new(budget: Duration) -> Self {
        AppState {
            inner: Arc::new(Inner {
                sessions: RwLock::new(HashMap::new()),
                jobs: std::sync::Mutex::new(HashMap::new()),
                budget,
                cap: DEFAULT_CAP,
                db: ClassDb::global(),
            }),
        }
    }

    pub async fn load(&self, path: &Path) -> Result<usize, StateError> {
        let text = std::fs::read_to_string(path)?;
        let saved: Vec<SavedSession> = serde_json::from_str(&text)?;
        let mut map = self.inner.sessions.write().await;
        for s in &saved {
            let session = Session::replay(s).map_err(|source| StateError::Replay { id: s.id.clone(), source })?;
            map.insert(s.id.clone(), Arc::new(Mutex::new(session)));
        }
        Ok(saved.len())
    }

    pub async fn save(&self, path: &Path) -> Result<usize, StateError> {
        let map = self.inner.sessions.read().await;
        let mut saved = Vec::new();
        for s in map.values() {
            saved.push(s.lock().await.saved());
        }
        saved.sort_by(|a, b| a.id.cmp(&b.id));
        std::fs::write(path, serde_json::to_string_pretty(&saved)?)?;
        Ok(saved.len())
    }

    async fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.inner.sessions.read().await.get(id).cloned().ok_or_else(|| ApiError::SessionNotFound(id.to_string()))
    }

    fn set_job(&self, id: &str, job: Job) {
        self.inner.jobs.lock().expect("job table lock").insert(id.to_string(), job);
    }

    /// Runs `f` on the blocking pool; returns its result if it finishes within
    /// the budget and a pending job otherwise.
    async fn budgeted<F>(&self, f: F) -> Value
    where
        F: FnOnce(&'static ClassDb, usize) -> Result<Value, crate::CliError> + Send + 'static,
    {
        let job = uuid::Uuid::new_v4().to_string();
        self.set_job(&job, Job::Pending);
        let (me, id, db, cap) = (self.clone(), job.clone(), self.inner.db, self.inner.cap);
        let handle = tokio::task::spawn_blocking(move || {
            let done = match f(db, cap) {
                Ok(v) => Job::Ready(v),
                Err(e) => Job::Failed(e.to_string()),
            };
            me.set_job(&id, done.clone());
            done
        });
        match tokio::time::timeout(self.inner.budget, handle).await {
            Ok(result) => {
                self.inner.jobs.lock().expect("job table lock").remove(&job);
                match result {
                    Ok(Job::Ready(v)) => json!({ "status": "ready", "result": v }),
                    Ok(Job::Failed(e)) => json!({ "status": "error", "error": e }),
                    Ok(Job::Pending) => unreachable!("finished jobs are never pending"),
                    Err(e) => json!({ "status": "error", "error": e.to_string() }),
                }
            }
            Err(_) => json!({ "status": "pending", "job": job }),
        }
    }

    async fn panel(&self, qp: Qp) -> Value {
        self.budgeted(move |db, cap| commands::panel(&qp, db, cap)).await
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/classify", get(classify))
        .route("/jobs/{id}", get(job))
        .with_state(state)
}

fn parse_body(body: &Bytes) -> Result<Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("invalid JSON: {e}")))
}

async fn create(State(st): State<AppState>, body: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let mut v = parse_body(&body)?;
    // accept both a bare input and one wrapped as {"qp": ...} or {"spec": ...}
    if let Some(inner) = v.get("qp").or_else(|| v.get("spec")).filter(|_| v.as_object().is_some_and(|o| o.len() == 1)) {
        v = inner.clone();
    }
    let input = parse_value(v).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let qp = input.to_qp().map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let id = uuid::Uuid::new_v4().to_string();
    let session = Session::new(id.clone(), qp.clone());
    let mut snap = session.snapshot();
    st.inner.sessions.write().await.insert(id, Arc::new(Mutex::new(session)));
    snap["panel"] = st.panel(qp).await;
    Ok((StatusCode::CREATED, Json(snap)))
}

async fn show(State(st): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<Value>, ApiError> {
    let s = st.session(&id).await?;
    let snap = s.lock().await.snapshot();
    Ok(Json(snap))
}

#[derive(Deserialize)]
struct MutateBody {
    vertex: String,
}

async fn mutate(State(st): State<AppState>, UrlPath(id): UrlPath<String>, body: Bytes) -> Result<Json<Value>, ApiError> {
    let body: MutateBody = serde_json::from_value(parse_body(&body)?)
        .map_err(|e| ApiError::BadRequest(format!("expected {{\"vertex\": ...}}: {e}")))?;
    let s = st.session(&id).await?;
    let (mut snap, qp) = {
        let mut s = s.lock().await;
        let next = qp_mutate(&s.current, &body.vertex).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        let prior = std::mem::replace(&mut s.current, next);
        s.history.push((body.vertex, prior));
        s.updated = now();
        (s.snapshot(), s.current.clone())
    };
    snap["panel"] = st.panel(qp).await;
    Ok(Json(snap))
}

async fn undo(State(st): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<Value>, ApiError> {
    let s = st.session(&id).await?;
    let mut s = s.lock().await;
    let (_, prior) = s.history.pop().ok_or(ApiError::EmptyHistory)?;
    s.current = prior;
    s.updated = now();
    Ok(Json(s.snapshot()))
}

async fn classify(State(st): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let s = st.session(&id).await?;
    let qp = s.lock().await.current.clone();
    let q = qp.underlying_quiver().map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let out = st.budgeted(move |db, cap| commands::classify(&q, db, cap)).await;
    let code = if out["status"] == "pending" { StatusCode::ACCEPTED } else { StatusCode::OK };
    Ok((code, Json(out)).into_response())
}

async fn job(State(st): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<Value>, ApiError> {
    let job = st.inner.jobs.lock().expect("job table lock").get(&id).cloned();
    match job {
        Some(Job::Pending) => Ok(Json(json!({ "status": "pending", "job": id }))),
        Some(Job::Ready(v)) => Ok(Json(json!({ "status": "ready", "result": v }))),
        Some(Job::Failed(e)) => Ok(Json(json!({ "status": "error", "error": e }))),
        None => Err(ApiError::JobNotFound(id)),
    }
}
