//! HTTP JSON API over a [`QueryCache`].
//!
//! | route                          | response                                   |
//! |--------------------------------|--------------------------------------------|
//! | `GET /api/v1/summary`          | `{n, simplexCount, criticalCount, cBarSize}` |
//! | `GET /api/v1/critical-values`  | `{C, Cbar}`                                |
//! | `POST /api/v1/fiber`           | diagram on the requested line              |
//! | `GET /api/v1/classes`          | cached classes                             |
//!
//! Malformed requests get 400, non-positive directions 422; both carry
//! `{error, detail}`.

use std::collections::BTreeSet;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cache::QueryCache;
use crate::dgvf::critical_cells;
use crate::error::Error;
use crate::fiber::pushed_criticals;
use crate::grade::Grade;
use crate::json;
use crate::line::Line;

pub fn router(cache: Arc<QueryCache>) -> Router {
    Router::new()
        .route("/api/v1/summary", get(summary))
        .route("/api/v1/critical-values", get(critical_values))
        .route("/api/v1/fiber", post(fiber))
        .route("/api/v1/classes", get(classes))
        .with_state(cache)
}

/// Serves the API until the process is stopped.
pub async fn serve(cache: Arc<QueryCache>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(cache)).await
}

fn error(status: StatusCode, kind: &str, detail: impl ToString) -> Response {
    (status, Json(json!({ "error": kind, "detail": detail.to_string() }))).into_response()
}

pub fn summary_json(cache: &QueryCache) -> Value {
    let engine = cache.engine();
    let f = engine.filtration();
    let crit = critical_cells(f, engine.field()).map(|c| c.cells.len()).unwrap_or(0);
    json!({
        "n": f.n(),
        "simplexCount": f.len(),
        "criticalCount": crit,
        "cBarSize": engine.closure().len(),
    })
}

pub fn critical_values_json(cache: &QueryCache) -> Value {
    let closure = cache.engine().closure();
    json!({ "C": json::grades(closure.base()), "Cbar": json::grades(closure.closed()) })
}

async fn summary(State(cache): State<Arc<QueryCache>>) -> Json<Value> {
    Json(summary_json(&cache))
}

async fn critical_values(State(cache): State<Arc<QueryCache>>) -> Json<Value> {
    Json(critical_values_json(&cache))
}

#[derive(Deserialize)]
struct FiberRequest {
    base: Vec<String>,
    dir: Vec<String>,
    #[serde(default)]
    degrees: Option<Vec<usize>>,
}

async fn fiber(State(cache): State<Arc<QueryCache>>, body: Bytes) -> Response {
    let req: FiberRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, "malformed request", e),
    };
    let (base, dir) = match (Grade::from_strings(&req.base), Grade::from_strings(&req.dir)) {
        (Ok(b), Ok(d)) => (b, d),
        (Err(e), _) | (_, Err(e)) => return error(StatusCode::BAD_REQUEST, "malformed line", e),
    };
    let line = match Line::new(base, dir) {
        Ok(l) => l,
        Err(e @ Error::NonPositiveSlope(_)) => {
            return error(StatusCode::UNPROCESSABLE_ENTITY, "non-positive slope", e)
        }
        Err(e) => return error(StatusCode::BAD_REQUEST, "malformed line", e),
    };
    let degrees: BTreeSet<usize> = match req.degrees {
        Some(d) => d.into_iter().collect(),
        None => cache.all_degrees().clone(),
    };
    // the computation is CPU-bound; keep it off the async workers
    let worker = cache.clone();
    let result = tokio::task::spawn_blocking(move || {
        let r = worker.query(&line, &degrees)?;
        let pcs = pushed_criticals(worker.engine().closure(), &line)?;
        Ok::<_, Error>(fiber_response(&r, &pcs))
    })
    .await;
    match result {
        Ok(Ok(v)) => Json(v).into_response(),
        Ok(Err(e @ Error::DimensionMismatch { .. })) => error(StatusCode::BAD_REQUEST, "malformed line", e),
        Ok(Err(e)) => error(StatusCode::INTERNAL_SERVER_ERROR, "query failed", e),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, "query failed", e),
    }
}

/// Body of a `/fiber` response.
pub fn fiber_response(r: &crate::cache::QueryResult, pcs: &[crate::fiber::PushedCritical]) -> Value {
    json!({
        "classId": r.class_id.to_string(),
        "cacheStatus": r.status.as_str(),
        "line": json::line(r.diagram.line()),
        "points": json::diagram_points(&r.diagram),
        "pushedCriticals": json::pushed_criticals(pcs),
        "timingMicros": r.micros as u64,
    })
}

async fn classes(State(cache): State<Arc<QueryCache>>) -> Json<Value> {
    let list: Vec<Value> = cache
        .entries()
        .iter()
        .map(|e| {
            json!({
                "classId": e.class_id.to_string(),
                "representative": json::line(&e.representative),
                "hitCount": e.hit_count(),
            })
        })
        .collect();
    Json(Value::Array(list))
}
