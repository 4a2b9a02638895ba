//! Stateless HTTP/JSON front for the trace engine.
//!
//! Endpoints:
//! - `GET /api/health`
//! - `GET /api/methods`
//! - `GET /api/methods/{id}`
//! - `POST /api/trace` with `{operation, operands, options?}`, answered by a
//!   comparison report.
//!
//! Every body is canonical JSON, so a response is byte-identical to the CLI's
//! `--format json` output for the same input.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sutra_core::canonical::to_canonical_bytes;
use sutra_core::engine::DEFAULT_MAX_DIGITS;
use sutra_core::{
    build_comparison, describe_method, list_methods, parse_operand, BuildOptions, DigitString,
    EngineError, LatentDisplay, Operation,
};
use tower_http::cors::{Any, CorsLayer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceConfig {
    /// Operand length guard. Requests may lower it but not raise it.
    pub max_digits: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            max_digits: DEFAULT_MAX_DIGITS,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceRequest {
    operation: String,
    operands: Vec<String>,
    #[serde(default)]
    options: RequestOptions,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RequestOptions {
    /// May only tighten the server's guard.
    #[serde(default)]
    max_digits: Option<usize>,
    #[serde(default)]
    latent_display: Option<LatentDisplay>,
}

/// Error body shared by every non-2xx response.
#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<serde_json::Value>,
}

fn canonical(status: StatusCode, body: &impl Serialize) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        to_canonical_bytes(body),
    )
        .into_response()
}

fn error(status: StatusCode, code: &str, message: String, details: Option<serde_json::Value>) -> Response {
    canonical(
        status,
        &ErrorBody {
            code,
            message,
            details,
        },
    )
}

pub fn router(config: ServiceConfig) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/api/health", get(health))
        .route("/api/methods", get(methods))
        .route("/api/methods/:id", get(method))
        .route("/api/trace", post(trace))
        .with_state(config)
        .layer(cors)
}

async fn health() -> Response {
    canonical(StatusCode::OK, &json!({"status": "ok"}))
}

async fn methods() -> Response {
    canonical(StatusCode::OK, &list_methods())
}

async fn method(Path(id): Path<String>) -> Response {
    match describe_method(&id) {
        Ok(descriptor) => canonical(StatusCode::OK, &descriptor),
        Err(e) => error(StatusCode::NOT_FOUND, "UNKNOWN_METHOD", e.to_string(), None),
    }
}

async fn trace(State(config): State<ServiceConfig>, body: Bytes) -> Response {
    let request: TraceRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, "MALFORMED_REQUEST", e.to_string(), None),
    };
    let operation: Operation = match request.operation.parse() {
        Ok(op) => op,
        Err(e) => return error(StatusCode::BAD_REQUEST, "UNKNOWN_OPERATION", e, None),
    };
    let mut operands: Vec<DigitString> = Vec::with_capacity(request.operands.len());
    for (index, text) in request.operands.iter().enumerate() {
        match parse_operand(text) {
            Ok(d) => operands.push(d),
            Err(e) => {
                return error(
                    StatusCode::BAD_REQUEST,
                    "PARSE_ERROR",
                    format!("operand {}: {e}", index + 1),
                    Some(json!({"operand": index, "position": e.position, "reason": e.reason})),
                )
            }
        }
    }
    let options = BuildOptions {
        max_digits: Some(
            request
                .options
                .max_digits
                .map_or(config.max_digits, |m| m.min(config.max_digits)),
        ),
        latent_display: request.options.latent_display,
    };
    match build_comparison(operation, &operands, &options) {
        Ok(report) => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "application/json")],
            report.to_canonical_bytes(),
        )
            .into_response(),
        Err(EngineError::Applicability { family, report }) => {
            let code = report.code().map_or("BLOCKED", |c| c.as_str());
            let message = EngineError::Applicability {
                family,
                report: report.clone(),
            }
            .to_string();
            canonical(
                StatusCode::UNPROCESSABLE_ENTITY,
                &json!({
                    "code": code,
                    "message": message,
                    "family": family,
                    "warnings": report.warnings,
                }),
            )
        }
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string(), None),
    }
}

/// Binds `host:port` and serves until the process is stopped.
pub async fn serve(host: &str, port: u16, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    let addr: SocketAddr = listener.local_addr()?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, router(config)).await
}
