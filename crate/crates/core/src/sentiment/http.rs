//! `POST /sentiment` endpoint.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{SentimentEngine, SentimentLabel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentResponse {
    pub sentiment: f64,
    pub valence: f64,
    pub polarity: f64,
    pub label: SentimentLabel,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

pub fn router(engine: Arc<SentimentEngine>) -> Router {
    Router::new()
        .route("/sentiment", post(score))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(engine)
}

async fn score(State(engine): State<Arc<SentimentEngine>>, body: Bytes) -> Response {
    let text = match serde_json::from_slice::<Value>(&body) {
        Ok(Value::Object(mut map)) => match map.remove("text") {
            Some(Value::String(text)) => text,
            Some(_) => return bad_request("`text` must be a string"),
            None => return bad_request("missing `text`"),
        },
        Ok(_) => return bad_request("body must be a JSON object"),
        Err(err) => return bad_request(&format!("invalid JSON: {err}")),
    };
    let out = engine.score(&text);
    Json(SentimentResponse {
        sentiment: out.sentiment.value(),
        valence: out.valence.value(),
        polarity: out.polarity.value(),
        label: out.label,
    })
    .into_response()
}

fn bad_request(msg: &str) -> Response {
    (
        StatusCode::BAD_REQUEST,
        Json(ErrorBody {
            error: msg.to_owned(),
        }),
    )
        .into_response()
}
