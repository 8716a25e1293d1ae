//! HTTP/JSON routes.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use nimcash_core::classes::{classify, ClassBand};
use nimcash_core::fast::TextMode;
use nimcash_core::lab::{build_grid, middle_window};
use nimcash_core::oracle::ORACLE_STONE_LIMIT;
use nimcash_core::{
    Cash, Execution, FastWinner, GridSource, Oracle, Player, RuleSet, Span, StaircaseGrid, Verdict,
};

use crate::error::ServiceError;
use crate::session::{GameSession, Hint};
use crate::store::SessionStore;

/// Largest grid `/staircase` will build.
pub const MAX_GRID_CELLS: u64 = 250_000;

/// Largest pile `/classes` accepts for families without closed forms.
pub const MAX_RECURSIVE_STONES: u64 = 1_000_000;

type ApiResult<T> = Result<Json<T>, ServiceError>;

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/move", post(play_move))
        .route("/games/{id}/hint", get(hint))
        .route("/solve", get(solve))
        .route("/classes", get(classes))
        .route("/staircase", get(staircase))
        .with_state(store)
}

async fn blocking<T, F>(f: F) -> Result<T, ServiceError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ServiceError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ServiceError::Corrupt(e.to_string()))?
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ServiceError> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ServiceError::BadRequest(e.body_text()))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MovesInput {
    List(Vec<u64>),
    Text(String),
}

impl MovesInput {
    fn rules(self) -> Result<RuleSet, ServiceError> {
        Ok(match self {
            MovesInput::List(moves) => RuleSet::new(moves)?,
            MovesInput::Text(text) => text.parse().map_err(|e: nimcash_core::Error| match e {
                nimcash_core::Error::Parse(msg) => ServiceError::InvalidRules(msg),
                other => other.into(),
            })?,
        })
    }
}

#[derive(Debug, Deserialize)]
struct CreateGame {
    moves: MovesInput,
    n: u64,
    d: Cash,
    e: Cash,
    #[serde(default = "default_human")]
    human: Player,
}

fn default_human() -> Player {
    Player::P1
}

#[derive(Debug, Serialize)]
struct SessionView {
    #[serde(flatten)]
    session: GameSession,
    legal_moves: Vec<u64>,
}

impl From<GameSession> for SessionView {
    fn from(session: GameSession) -> SessionView {
        let legal_moves = if session.is_over() {
            Vec::new()
        } else {
            session.state.legal_moves(&session.rules)
        };
        SessionView {
            session,
            legal_moves,
        }
    }
}

async fn create_game(
    State(store): State<Arc<SessionStore>>,
    payload: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ServiceError> {
    let req = body(payload)?;
    let rules = req.moves.rules()?;
    let session = blocking(move || store.create(rules, req.n, req.d, req.e, req.human)).await?;
    log::info!(
        "game {} created: A={} {}",
        session.id,
        session.rules,
        session.initial
    );
    Ok((StatusCode::CREATED, Json(session.into())))
}

async fn get_game(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<SessionView> {
    Ok(Json(store.get(&id)?.into()))
}

#[derive(Debug, Deserialize)]
struct MoveRequest {
    a: u64,
}

async fn play_move(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<SessionView> {
    let req = body(payload)?;
    Ok(Json(blocking(move || store.play(&id, req.a)).await?.into()))
}

async fn hint(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Hint> {
    Ok(Json(blocking(move || store.hint(&id)).await?))
}

struct Params(HashMap<String, String>);

impl Params {
    fn raw(&self, keys: &[&str]) -> Option<&str> {
        keys.iter().find_map(|k| self.0.get(*k)).map(String::as_str)
    }

    fn get<T: FromStr>(&self, keys: &[&str]) -> Result<Option<T>, ServiceError> {
        match self.raw(keys) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| ServiceError::BadRequest(format!("bad value {v:?} for {}", keys[0]))),
        }
    }

    fn require<T: FromStr>(&self, keys: &[&str]) -> Result<T, ServiceError> {
        self.get(keys)?
            .ok_or_else(|| ServiceError::BadRequest(format!("missing parameter {}", keys[0])))
    }

    fn rules(&self) -> Result<RuleSet, ServiceError> {
        let text = self
            .raw(&["A", "moves"])
            .ok_or_else(|| ServiceError::BadRequest("missing parameter A".into()))?;
        MovesInput::Text(text.to_string()).rules()
    }

    fn flag(&self, key: &str) -> Result<bool, ServiceError> {
        Ok(self.get::<bool>(&[key])?.unwrap_or(false))
    }
}

#[derive(Debug, Serialize)]
struct SolveView {
    #[serde(flatten)]
    verdict: Verdict,
    text: String,
}

async fn solve(Query(q): Query<HashMap<String, String>>) -> ApiResult<SolveView> {
    let q = Params(q);
    let rules = q.rules()?;
    let n: u64 = q.require(&["n"])?;
    let d: Cash = q.require(&["d"])?;
    let e: Cash = q.require(&["e"])?;
    let force_oracle = q.flag("oracle")?;
    let mode = if q.flag("strict")? {
        TextMode::Strict
    } else {
        TextMode::FigureConsistent
    };
    let verdict = blocking(move || {
        if force_oracle {
            if n > ORACLE_STONE_LIMIT {
                return Err(nimcash_core::Error::StoneLimit {
                    n,
                    limit: ORACLE_STONE_LIMIT,
                }
                .into());
            }
            Ok(Oracle::new(rules).solve_cash(n, d, e))
        } else {
            Ok(FastWinner::with_mode(rules, mode).winner(n, d, e)?)
        }
    })
    .await?;
    Ok(Json(SolveView {
        verdict,
        text: verdict.to_string(),
    }))
}

#[derive(Debug, Serialize)]
struct ClassesView {
    rules: RuleSet,
    n: u64,
    family: String,
    classic_winner: Player,
    u1: u64,
    u2: u64,
    m1: u64,
    m2: u64,
    band1: ClassBand,
    band2: ClassBand,
}

async fn classes(Query(q): Query<HashMap<String, String>>) -> ApiResult<ClassesView> {
    let q = Params(q);
    let rules = q.rules()?;
    let n: u64 = q.require(&["n"])?;
    let d: Cash = q.get(&["d"])?.unwrap_or(Cash::Finite(0));
    let e: Cash = q.get(&["e"])?.unwrap_or(Cash::Finite(0));
    if !rules.family().is_supported() && n > MAX_RECURSIVE_STONES {
        return Err(ServiceError::BadRequest(format!(
            "n above {MAX_RECURSIVE_STONES} needs a supported family"
        )));
    }
    let view = blocking(move || {
        let p = classify(&rules, n, d, e)?;
        Ok(ClassesView {
            family: p.family.to_string(),
            rules,
            n,
            classic_winner: p.classic_winner,
            u1: p.u.u1,
            u2: p.u.u2,
            m1: p.m.m1,
            m2: p.m.m2,
            band1: p.band1,
            band2: p.band2,
        })
    })
    .await?;
    Ok(Json(view))
}

async fn staircase(Query(q): Query<HashMap<String, String>>) -> ApiResult<StaircaseGrid> {
    let q = Params(q);
    let rules = q.rules()?;
    let n: u64 = q.require(&["n"])?;
    let source: GridSource = q.get(&["source"])?.unwrap_or(GridSource::Fast);
    let bounds = [
        q.get::<u64>(&["dlo"])?,
        q.get(&["dhi"])?,
        q.get(&["elo"])?,
        q.get(&["ehi"])?,
    ];
    let grid = blocking(move || {
        let (d, e) = match bounds {
            [Some(dlo), Some(dhi), Some(elo), Some(ehi)] => {
                (Span::new(dlo, dhi)?, Span::new(elo, ehi)?)
            }
            [None, None, None, None] => middle_window(&rules, n)?,
            _ => {
                return Err(ServiceError::BadRequest(
                    "give all of dlo, dhi, elo, ehi or none".into(),
                ))
            }
        };
        if d.len().saturating_mul(e.len()) > MAX_GRID_CELLS {
            return Err(ServiceError::BadRequest(format!(
                "grid larger than {MAX_GRID_CELLS} cells"
            )));
        }
        Ok(build_grid(&rules, n, d, e, source, Execution::default())?)
    })
    .await?;
    Ok(Json(grid))
}
