use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};

use super::auth::{Caller, KeyRing, ACCESS_KEY_HEADER};
use super::resolvers::ApiSchema;

#[derive(Clone)]
struct HttpState {
    schema: ApiSchema,
    keys: Arc<KeyRing>,
}

/// `POST /graphql` and `GET /healthz`.
pub fn router(schema: ApiSchema, keys: KeyRing) -> Router {
    Router::new()
        .route("/graphql", post(graphql))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(HttpState {
            schema,
            keys: Arc::new(keys),
        })
}

async fn graphql(State(st): State<HttpState>, headers: HeaderMap, body: Bytes) -> Response {
    let request: async_graphql::Request = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => {
            return (
                StatusCode::BAD_REQUEST,
                Json(serde_json::json!({ "errors": [{ "message": format!("invalid request body: {e}") }] })),
            )
                .into_response()
        }
    };
    let header = headers
        .get(ACCESS_KEY_HEADER)
        .map(|v| v.to_str().unwrap_or("\u{0}"));
    let caller = Caller::from_header(&st.keys, header);
    if caller == Caller::Rejected {
        tracing::warn!("request presented an unknown access key");
    }
    let response = st.schema.execute(request.data(caller)).await;
    Json(response).into_response()
}
