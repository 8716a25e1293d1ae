use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use thiserror::Error;

use nimcash_core::GameState;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("invalid move set: {0}")]
    InvalidRules(String),

    #[error("cannot take {take} at {state}")]
    IllegalMove { take: u64, state: GameState },

    #[error("it is the engine's turn")]
    NotYourTurn,

    #[error("the game is over")]
    GameOver,

    #[error("no game with id {0}")]
    NotFound(String),

    #[error("{0}")]
    BadRequest(String),

    #[error("session history is inconsistent: {0}")]
    Corrupt(String),

    #[error(transparent)]
    Core(nimcash_core::Error),

    #[error("state file: {0}")]
    Io(#[from] std::io::Error),
}

impl From<nimcash_core::Error> for ServiceError {
    fn from(e: nimcash_core::Error) -> ServiceError {
        match e {
            nimcash_core::Error::InvalidRules(msg) => ServiceError::InvalidRules(msg),
            nimcash_core::Error::Parse(msg) => ServiceError::BadRequest(msg),
            other => ServiceError::Core(other),
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::InvalidRules(_) => "invalid_rules",
            ServiceError::IllegalMove { .. } => "illegal_move",
            ServiceError::NotYourTurn => "not_your_turn",
            ServiceError::GameOver => "game_over",
            ServiceError::NotFound(_) => "not_found",
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::Core(nimcash_core::Error::StoneLimit { .. }) => "too_large",
            ServiceError::Core(nimcash_core::Error::InvalidRange { .. }) => "bad_request",
            ServiceError::Core(nimcash_core::Error::IllegalMove { .. }) => "illegal_move",
            ServiceError::Core(_) | ServiceError::Corrupt(_) | ServiceError::Io(_) => "internal",
        }
    }

    pub fn status(&self) -> StatusCode {
        match self.code() {
            "invalid_rules" | "illegal_move" => StatusCode::UNPROCESSABLE_ENTITY,
            "not_your_turn" | "game_over" => StatusCode::CONFLICT,
            "not_found" => StatusCode::NOT_FOUND,
            "bad_request" => StatusCode::BAD_REQUEST,
            "too_large" => StatusCode::PAYLOAD_TOO_LARGE,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            error: self.code(),
            message: self.to_string(),
        };
        (self.status(), Json(body)).into_response()
    }
}
