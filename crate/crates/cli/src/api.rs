//! HTTP game API.
//!
//! | method   | path                    | body                                   | reply          |
//! |----------|-------------------------|----------------------------------------|----------------|
//! | `POST`   | `/games`                | `{"graph": GraphSpec, "engine_side"}`  | 201, state     |
//! | `GET`    | `/games/{id}`           |                                        | state          |
//! | `GET`    | `/games/{id}/moves`     |                                        | legal moves    |
//! | `POST`   | `/games/{id}/move`      | `{"edge": [u, v], "action"}`           | state          |
//! | `POST`   | `/games/{id}/engine-move` |                                      | state          |
//! | `DELETE` | `/games/{id}`           |                                        | 204            |
//!
//! `engine_side` is `"first"` or `"second"` (default). A state is
//!
//! ```json
//! {"id": "…", "n": 3, "edges": [[0, 1], [0, 2]], "to_move": "engine",
//!  "finished": false, "winner": null, "engine_side": "second", "value": 0,
//!  "history": [{"by": "human", "edge": [1, 2], "action": "delete"}]}
//! ```
//!
//! `value` is the Nim value of the current graph, or `null` when hints are
//! off. Each legal move is `{"edge": [u, v], "action": "delete", "value": 1}`,
//! again with `value` null without hints. Errors are `{"error": "…"}` with
//! 404 (unknown id), 409 (game over, or engine asked out of turn), 422
//! (bad graph or illegal move) or 400 (unparseable body).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use nimors::graph::Move;
use nimors::{Graph, NimValue, Solver};
use serde::{Deserialize, Serialize};

use crate::game::{edge_in, parse_action, EngineSide, GameError, Player, Session};
use crate::spec::GraphSpec;

/// Size limits for playable graphs, keeping every engine reply fast.
pub const MAX_GAME_VERTICES: usize = 16;
pub const MAX_GAME_EDGES: usize = 24;

type Shared<T> = Arc<tokio::sync::Mutex<T>>;

pub struct AppState {
    sessions: Mutex<HashMap<String, Shared<Session>>>,
    solver: Arc<Mutex<Solver>>,
    hints: bool,
}

impl AppState {
    pub fn new(solver: Solver, hints: bool) -> Arc<AppState> {
        Arc::new(AppState { sessions: Mutex::new(HashMap::new()), solver: Arc::new(Mutex::new(solver)), hints })
    }

    fn session(&self, id: &str) -> Result<Shared<Session>, ApiError> {
        self.sessions
            .lock()
            .unwrap_or_else(|p| p.into_inner())
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no game {id}")))
    }

    /// Runs `f` on the shared solver off the async workers.
    async fn with_solver<T, F>(&self, f: F) -> Result<T, ApiError>
    where
        T: Send + 'static,
        F: FnOnce(&mut Solver) -> T + Send + 'static,
    {
        let solver = Arc::clone(&self.solver);
        tokio::task::spawn_blocking(move || f(&mut solver.lock().unwrap_or_else(|p| p.into_inner())))
            .await
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, format!("solver task failed: {e}")))
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/games", post(create))
        .route("/games/{id}", get(show).delete(remove))
        .route("/games/{id}/moves", get(moves))
        .route("/games/{id}/move", post(human_move))
        .route("/games/{id}/engine-move", post(engine_move))
        .with_state(state)
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError { status, message: message.into() }
    }
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> ApiError {
        let status = match e {
            GameError::Finished | GameError::OutOfTurn(_) => StatusCode::CONFLICT,
            GameError::Illegal(_) => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError::new(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> ApiError {
        ApiError::new(e.status(), e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateGame {
    pub graph: GraphSpec,
    #[serde(default)]
    pub engine_side: EngineSide,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRequest {
    pub edge: (usize, usize),
    pub action: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PlyView {
    pub by: Player,
    pub edge: (usize, usize),
    pub action: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StateView {
    pub id: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub to_move: Player,
    pub finished: bool,
    pub winner: Option<Player>,
    pub engine_side: EngineSide,
    pub value: Option<u16>,
    pub history: Vec<PlyView>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MoveView {
    pub edge: (usize, usize),
    pub action: String,
    pub value: Option<u16>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Created {
    pub id: String,
    pub state: StateView,
}

fn view(id: &str, s: &Session, value: Option<NimValue>) -> StateView {
    StateView {
        id: id.to_string(),
        n: s.current.n(),
        edges: s.current.edge_list(),
        to_move: s.to_move,
        finished: s.finished(),
        winner: s.winner(),
        engine_side: s.engine_side,
        value: value.map(|v| v.0),
        history: s
            .history
            .iter()
            .map(|p| PlyView { by: p.by, edge: (p.mv.edge.u, p.mv.edge.v), action: p.mv.action.as_str().into() })
            .collect(),
    }
}

async fn state_of(app: &AppState, id: &str, s: &Session) -> Result<StateView, ApiError> {
    let value = if app.hints {
        let g = s.current.clone();
        Some(app.with_solver(move |solver| solver.nim_value(&g)).await?)
    } else {
        None
    };
    Ok(view(id, s, value))
}

fn check_size(g: &Graph) -> Result<(), ApiError> {
    if g.n() > MAX_GAME_VERTICES || g.m() > MAX_GAME_EDGES {
        return Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            format!("games are limited to {MAX_GAME_VERTICES} vertices and {MAX_GAME_EDGES} edges"),
        ));
    }
    Ok(())
}

async fn create(
    State(app): State<Arc<AppState>>,
    body: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<Created>), ApiError> {
    let Json(req) = body?;
    let graph = req.graph.resolve().map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    check_size(&graph)?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::new(graph, req.engine_side);
    let state = state_of(&app, &id, &session).await?;
    app.sessions
        .lock()
        .unwrap_or_else(|p| p.into_inner())
        .insert(id.clone(), Arc::new(tokio::sync::Mutex::new(session)));
    log::info!("game {id} created");
    Ok((StatusCode::CREATED, Json(Created { id, state })))
}

async fn show(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<StateView>, ApiError> {
    let session = app.session(&id)?;
    let s = session.lock().await;
    Ok(Json(state_of(&app, &id, &s).await?))
}

async fn moves(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Vec<MoveView>>, ApiError> {
    let session = app.session(&id)?;
    let g = session.lock().await.current.clone();
    let hints = app.hints;
    let list = app
        .with_solver(move |solver| {
            g.options()
                .into_iter()
                .map(|(mv, opt)| MoveView {
                    edge: (mv.edge.u, mv.edge.v),
                    action: mv.action.as_str().into(),
                    value: hints.then(|| solver.nim_value(&opt).0),
                })
                .collect()
        })
        .await?;
    Ok(Json(list))
}

async fn human_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<StateView>, ApiError> {
    let session = app.session(&id)?;
    let Json(req) = body?;
    let mut s = session.lock().await;
    if s.finished() {
        return Err(GameError::Finished.into());
    }
    let action =
        parse_action(&req.action).ok_or_else(|| GameError::Illegal(format!("unknown action {:?}", req.action)))?;
    let edge = edge_in(&s.current, req.edge.0, req.edge.1)?;
    s.play(Player::Human, Move::new(edge, action))?;
    Ok(Json(state_of(&app, &id, &s).await?))
}

async fn engine_move(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<StateView>, ApiError> {
    let session = app.session(&id)?;
    let mut s = session.lock().await;
    if s.finished() {
        return Err(GameError::Finished.into());
    }
    if s.to_move != Player::Engine {
        return Err(GameError::OutOfTurn(s.to_move).into());
    }
    let g = s.current.clone();
    let mv = app
        .with_solver(move |solver| solver.best_move(&g))
        .await?
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    s.play(Player::Engine, mv)?;
    Ok(Json(state_of(&app, &id, &s).await?))
}

async fn remove(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    match app.sessions.lock().unwrap_or_else(|p| p.into_inner()).remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::new(StatusCode::NOT_FOUND, format!("no game {id}"))),
    }
}
