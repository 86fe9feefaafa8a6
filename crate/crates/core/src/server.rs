//! JSON HTTP API over a loaded corpus and trained pipeline.
//!
//! `GET /api/score?q=`, `GET /api/compare?q=a,b[,c]`,
//! `GET /api/stats?q=&from=&to=` and `POST /api/classify {"text": …}`.
//! Errors are `{"status", "code", "message"}` bodies.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::classify::Classification;
use crate::error::Error;
use crate::scoring::{HourlyStat, ScoreResult, Scorer, StatsStore};

/// Longest text `POST /api/classify` accepts, in characters.
pub const MAX_CLASSIFY_CHARS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    pub status: u16,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn bad_request(code: &str, message: impl Into<String>) -> Self {
        ApiError { status: 400, code: code.into(), message: message.into() }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        ApiError { status: 404, code: "not_found".into(), message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        ApiError { status: 500, code: "internal".into(), message: message.into() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => ApiError::bad_request("invalid_argument", m),
            other => {
                log::error!("request failed: {other}");
                ApiError::internal(other.to_string())
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

/// Shared, read-only server state.
#[derive(Debug, Clone)]
pub struct AppState {
    pub scorer: Arc<Scorer>,
    pub store: Option<Arc<StatsStore>>,
    /// Clock used for searches; defaults to the newest corpus tweet.
    pub now: i64,
}

impl AppState {
    pub fn new(scorer: Scorer, store: Option<StatsStore>) -> Self {
        let now = scorer.now();
        AppState { scorer: Arc::new(scorer), store: store.map(Arc::new), now }
    }
}

type Params = Query<HashMap<String, String>>;

fn keyword(params: &HashMap<String, String>) -> Result<String, ApiError> {
    match params.get("q").map(|q| q.trim()) {
        Some(q) if !q.is_empty() => Ok(q.to_string()),
        _ => Err(ApiError::bad_request("missing_query", "query parameter q is required")),
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(format!("worker failed: {e}")))?
}

async fn score(State(s): State<AppState>, Query(p): Params) -> Result<Json<ScoreResult>, ApiError> {
    let q = keyword(&p)?;
    blocking(move || Ok(Json(s.scorer.score(&q, s.now)?))).await
}

async fn compare(State(s): State<AppState>, Query(p): Params) -> Result<Json<Vec<ScoreResult>>, ApiError> {
    let q = keyword(&p)?;
    let keywords: Vec<String> = q.split(',').map(|k| k.trim().to_string()).collect();
    blocking(move || Ok(Json(s.scorer.compare(&keywords, s.now)?))).await
}

fn epoch(params: &HashMap<String, String>, name: &str, default: i64) -> Result<i64, ApiError> {
    match params.get(name) {
        None => Ok(default),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| ApiError::bad_request("invalid_argument", format!("{name} must be an integer epoch, got {v:?}"))),
    }
}

async fn stats(State(s): State<AppState>, Query(p): Params) -> Result<Json<Vec<HourlyStat>>, ApiError> {
    let q = keyword(&p)?;
    let from = epoch(&p, "from", i64::MIN)?;
    let to = epoch(&p, "to", i64::MAX)?;
    if from > to {
        return Err(ApiError::bad_request("invalid_range", format!("from ({from}) is after to ({to})")));
    }
    let Some(store) = s.store.clone() else {
        return Ok(Json(Vec::new()));
    };
    blocking(move || Ok(Json(store.series(&q, from, to)?))).await
}

#[derive(Debug, Deserialize)]
struct ClassifyRequest {
    text: String,
}

async fn classify(
    State(s): State<AppState>,
    body: Result<Json<ClassifyRequest>, JsonRejection>,
) -> Result<Json<Classification>, ApiError> {
    let Json(req) = body.map_err(|e| ApiError::bad_request("invalid_body", e.body_text()))?;
    let n = req.text.chars().count();
    if n > MAX_CLASSIFY_CHARS {
        return Err(ApiError::bad_request(
            "text_too_long",
            format!("text has {n} characters, limit is {MAX_CLASSIFY_CHARS}"),
        ));
    }
    let scorer = s.scorer.clone();
    blocking(move || Ok(Json(scorer.pipeline.classify_text(&scorer.analyzer, &req.text)))).await
}

async fn fallback() -> ApiError {
    ApiError::not_found("no such endpoint")
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/score", get(score))
        .route("/api/compare", get(compare))
        .route("/api/stats", get(stats))
        .route("/api/classify", post(classify))
        .fallback(fallback)
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Bind and serve until the process is stopped.
pub async fn serve(addr: SocketAddr, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
