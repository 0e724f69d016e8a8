//! HTTP JSON API for interactive games: Builder runs the strategy, the
//! client answers as Algorithm.
//!
//! Routes, all under `/v1`:
//!
//! | method | path                          | body                      |
//! |--------|-------------------------------|---------------------------|
//! | POST   | `/sessions`                   | `{"routine"?, "omega"?}`  |
//! | GET    | `/sessions/{id}`              |                           |
//! | POST   | `/sessions/{id}/color`        | `{"color", "move_index"?}`|
//! | GET    | `/sessions/{id}/legal`        |                           |
//! | GET    | `/sessions/{id}/trace`        |                           |
//! | GET    | `/sessions/{id}/hint`         |                           |
//!
//! The server stores only the answers given so far and recomputes the
//! position by replay, so its view of the game is always authoritative.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sevencolor_core::coord::Coord;
use sevencolor_core::game::PlacedInterval;
use sevencolor_core::interactive::{position_after, Position};
use sevencolor_core::session::Halt;
use sevencolor_core::{Color, ColorSet, Routine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AwaitingColor,
    Finished,
}

pub struct SessionRecord {
    pub routine: Routine,
    pub omega: usize,
    pub answers: Vec<Color>,
    pub status: Status,
    pub created: u64,
    pub updated: u64,
}

type Shared = Arc<tokio::sync::Mutex<SessionRecord>>;

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, Shared>>>,
}

pub fn router() -> Router {
    Router::new()
        .route("/v1/sessions", post(create_session))
        .route("/v1/sessions/:id", get(get_state))
        .route("/v1/sessions/:id/color", post(post_color))
        .route("/v1/sessions/:id/legal", get(get_legal))
        .route("/v1/sessions/:id/trace", get(get_trace))
        .route("/v1/sessions/:id/hint", get(get_hint))
        .with_state(AppState::default())
}

/// Serves the API until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            body: json!({ "error": message.into() }),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

fn internal(h: Halt) -> ApiError {
    ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, h.to_string())
}

fn position(rec: &SessionRecord) -> Result<Position, ApiError> {
    position_after(rec.omega, rec.routine, &rec.answers).map_err(internal)
}

fn lookup(app: &AppState, id: &str) -> Result<Shared, ApiError> {
    app.sessions
        .lock()
        .expect("session table lock")
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
}

#[derive(Serialize)]
struct IntervalView {
    lo: Coord,
    hi: Coord,
    color: Color,
    move_index: usize,
}

impl From<&PlacedInterval> for IntervalView {
    fn from(iv: &PlacedInterval) -> IntervalView {
        IntervalView {
            lo: iv.lo,
            hi: iv.hi,
            color: iv.color,
            move_index: iv.move_index,
        }
    }
}

fn state_body(id: &str, rec: &SessionRecord, pos: &Position) -> Value {
    let (left, right) = pos.state.walls();
    let m = pos.matrix();
    json!({
        "session_id": id,
        "routine": rec.routine.as_str(),
        "omega": rec.omega,
        "status": rec.status,
        "move_index": pos.state.intervals().len() + 1,
        "pending": pos.pending.as_ref().map(|p| {
            let (lo, hi) = p.candidate();
            json!({ "lo": lo, "hi": hi })
        }),
        "legal": pos.legal_colors(),
        "walls": { "left": left, "right": right },
        "intervals": pos.state.intervals().iter().map(IntervalView::from).collect::<Vec<_>>(),
        "matrix": {
            "sides": m.columns.iter().map(|c| c.side.bit()).collect::<Vec<_>>(),
            "colors": m.columns.iter().map(|c| c.color).collect::<Vec<_>>(),
        },
        "used_colors": pos.state.used_colors(),
        "created": rec.created,
        "updated": rec.updated,
    })
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct CreateRequest {
    routine: Option<String>,
    omega: Option<usize>,
}

async fn create_session(
    State(app): State<AppState>,
    body: Option<Json<CreateRequest>>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req = body.map(|Json(b)| b).unwrap_or_default();
    let routine: Routine = match req.routine.as_deref() {
        None => Routine::Master,
        Some(name) => name
            .parse()
            .map_err(|e: String| ApiError::new(StatusCode::BAD_REQUEST, e))?,
    };
    let omega = req.omega.unwrap_or(4);
    if !(1..=7).contains(&omega) {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "omega must be in 1..=7"));
    }
    let t = now();
    let mut rec = SessionRecord {
        routine,
        omega,
        answers: Vec::new(),
        status: Status::AwaitingColor,
        created: t,
        updated: t,
    };
    let pos = position(&rec)?;
    if pos.finished() {
        rec.status = Status::Finished;
    }
    let id = uuid::Uuid::new_v4().to_string();
    let body = state_body(&id, &rec, &pos);
    app.sessions
        .lock()
        .expect("session table lock")
        .insert(id, Arc::new(tokio::sync::Mutex::new(rec)));
    Ok((StatusCode::CREATED, Json(body)))
}

async fn get_state(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    let shared = lookup(&app, &id)?;
    let rec = shared.lock().await;
    let pos = position(&rec)?;
    Ok(Json(state_body(&id, &rec, &pos)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorRequest {
    color: String,
    /// The move the client is answering; a stale value is a conflict.
    move_index: Option<usize>,
}

async fn post_color(
    State(app): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<ColorRequest>,
) -> Result<Json<Value>, ApiError> {
    let shared = lookup(&app, &id)?;
    // One answer at a time per session; a concurrent one loses outright.
    let mut rec = shared
        .try_lock()
        .map_err(|_| ApiError::new(StatusCode::CONFLICT, "another answer is in progress"))?;
    if rec.status == Status::Finished {
        return Err(ApiError::new(StatusCode::CONFLICT, "game is finished"));
    }
    let pos = position(&rec)?;
    let expected = pos.state.intervals().len() + 1;
    if req.move_index.is_some_and(|m| m != expected) {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            format!("move {expected} is pending"),
        ));
    }
    let legal: ColorSet = pos.legal_colors();
    let color: Option<Color> = req.color.parse().ok();
    let Some(color) = color.filter(|&c| legal.contains(c)) else {
        return Err(ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            body: json!({
                "error": format!("color {:?} is not legal for move {expected}", req.color),
                "legal": legal,
            }),
        });
    };
    rec.answers.push(color);
    let pos = match position(&rec) {
        Ok(p) => p,
        Err(e) => {
            rec.answers.pop();
            return Err(e);
        }
    };
    if pos.finished() {
        rec.status = Status::Finished;
    }
    rec.updated = now();
    Ok(Json(state_body(&id, &rec, &pos)))
}

async fn get_legal(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    let shared = lookup(&app, &id)?;
    let rec = shared.lock().await;
    let pos = position(&rec)?;
    Ok(Json(json!({
        "move_index": pos.state.intervals().len() + 1,
        "legal": pos.legal_colors(),
    })))
}

async fn get_trace(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    let shared = lookup(&app, &id)?;
    let rec = shared.lock().await;
    let pos = position(&rec)?;
    Ok(Json(serde_json::to_value(&pos.trace).expect("traces serialize")))
}

async fn get_hint(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    let shared = lookup(&app, &id)?;
    let rec = shared.lock().await;
    let pos = position(&rec)?;
    Ok(Json(json!({
        "patterns": pos.hints(),
        "orientation": pos.orientation,
        "routines": pos.path,
    })))
}
