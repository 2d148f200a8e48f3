use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use kgatlas_core::{FacetError, ParseError, ProvenanceError};
use serde::Serialize;

/// The closed set of error codes a response body can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    NotFound,
    SyntaxError,
    UnknownSeed,
    BadDepth,
    RendererUnavailable,
    /// A span annotation that does not fit its documents.
    ProvenanceError,
    /// Any other malformed request: unknown mode/format/layout, missing part.
    BadRequest,
}

impl ErrorCode {
    pub const ALL: [ErrorCode; 7] = [
        ErrorCode::NotFound,
        ErrorCode::SyntaxError,
        ErrorCode::UnknownSeed,
        ErrorCode::BadDepth,
        ErrorCode::RendererUnavailable,
        ErrorCode::ProvenanceError,
        ErrorCode::BadRequest,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::NotFound => "not_found",
            ErrorCode::SyntaxError => "syntax_error",
            ErrorCode::UnknownSeed => "unknown_seed",
            ErrorCode::BadDepth => "bad_depth",
            ErrorCode::RendererUnavailable => "renderer_unavailable",
            ErrorCode::ProvenanceError => "provenance_error",
            ErrorCode::BadRequest => "bad_request",
        }
    }

    pub fn status(self) -> StatusCode {
        match self {
            ErrorCode::NotFound => StatusCode::NOT_FOUND,
            ErrorCode::RendererUnavailable => StatusCode::SERVICE_UNAVAILABLE,
            _ => StatusCode::BAD_REQUEST,
        }
    }
}

impl std::fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{code}: {message}")]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl ApiError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        ApiError { code, message: message.into(), line: None, column: None }
    }

    pub fn not_found(what: impl std::fmt::Display) -> Self {
        ApiError::new(ErrorCode::NotFound, format!("{what} not found"))
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(ErrorCode::BadRequest, message)
    }
}

impl From<ParseError> for ApiError {
    fn from(err: ParseError) -> Self {
        ApiError {
            code: ErrorCode::SyntaxError,
            message: err.to_string(),
            line: Some(err.line()),
            column: Some(err.column()),
        }
    }
}

impl From<ProvenanceError> for ApiError {
    fn from(err: ProvenanceError) -> Self {
        ApiError::new(ErrorCode::ProvenanceError, err.to_string())
    }
}

impl From<FacetError> for ApiError {
    fn from(err: FacetError) -> Self {
        match err {
            FacetError::NoSeeds => ApiError::bad_request(err.to_string()),
            FacetError::UnknownSeed { .. } => ApiError::new(ErrorCode::UnknownSeed, err.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.code.status(), Json(self)).into_response()
    }
}
