//! HTTP API over uploaded graph sessions.
//!
//! ```text
//! POST /api/sessions                                   multipart: rdf, format, document…
//! GET  /api/sessions/{id}/facets?lang=
//! GET  /api/sessions/{id}/view?mode=&seeds=…&depth=&lang=&format=view|dot|svg|table&layout=
//! GET  /api/sessions/{id}/table?mode=&seeds=…&depth=&lang=
//! GET  /api/sessions/{id}/documents/{doc}
//! GET  /api/sessions/{id}/documents/{doc}/nodes?offset=
//! GET  /api/meta/languages
//! ```
//!
//! Errors are JSON `{code, message, line?, column?}`.

pub mod config;
pub mod error;
pub mod session;
pub mod wire;

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::{DefaultBodyLimit, Multipart, Path, RawQuery, State};
use axum::handler::HandlerWithoutStateExt;
use axum::http::header;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use kgatlas_core::render::OutputFormat;
use kgatlas_core::{
    emit_dot, extract_subgraph, list_concepts, list_individuals, triple_table, whole_graph_request, DotOptions, Layout,
    RdfFormat, SelectionMode, SubgraphRequest, ViewGraph,
};
use tokio::net::TcpListener;

pub use config::{load_ontology_file, port_from_env, ConfigError, ServerConfig};
pub use error::{ApiError, ErrorCode};
pub use session::{GraphSession, SessionStore};

const UPLOAD_LIMIT: usize = 64 * 1024 * 1024;
const DOT_MEDIA_TYPE: &str = "text/vnd.graphviz; charset=utf-8";

pub struct AppState {
    pub config: ServerConfig,
    pub sessions: SessionStore,
}

impl AppState {
    pub fn new(config: ServerConfig) -> Arc<Self> {
        let sessions = SessionStore::new(config.session_cap);
        Arc::new(AppState { config, sessions })
    }

    fn session(&self, id: &str) -> Result<Arc<GraphSession>, ApiError> {
        self.sessions.get(id).ok_or_else(|| ApiError::not_found(format!("session {id:?}")))
    }

    fn dot_options(&self) -> DotOptions {
        DotOptions { hyperlink_base: self.config.hyperlink_base.clone(), include_tooltips: true, icon_dir: None }
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let api = Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}/facets", get(facets))
        .route("/api/sessions/{id}/view", get(view))
        .route("/api/sessions/{id}/table", get(table))
        .route("/api/sessions/{id}/documents/{doc}", get(document))
        .route("/api/sessions/{id}/documents/{doc}/nodes", get(nodes_at_offset))
        .route("/api/meta/languages", get(languages))
        .layer(DefaultBodyLimit::max(UPLOAD_LIMIT));
    let app = match &state.config.static_dir {
        Some(dir) => {
            let assets = tower_http::services::ServeDir::new(dir)
                .append_index_html_on_directories(true)
                .not_found_service(not_found.into_service());
            api.route_service("/api/{*rest}", not_found.into_service()).fallback_service(assets)
        }
        None => api.fallback(not_found),
    };
    app.with_state(state)
}

/// Serves until ctrl-c.
pub async fn serve(listener: TcpListener, state: Arc<AppState>) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn not_found() -> ApiError {
    ApiError::not_found("route")
}

async fn languages(State(state): State<Arc<AppState>>) -> Json<Vec<String>> {
    Json(state.config.ontology.supported_languages().to_vec())
}

async fn create_session(State(state): State<Arc<AppState>>, mut form: Multipart) -> Result<Json<wire::SessionCreated>, ApiError> {
    let bad = |e: axum::extract::multipart::MultipartError| ApiError::bad_request(e.body_text());
    let mut rdf = None;
    let mut format = RdfFormat::Turtle;
    let mut documents = BTreeMap::new();
    while let Some(field) = form.next_field().await.map_err(bad)? {
        let name = field.name().unwrap_or_default().to_owned();
        let file_name = field.file_name().map(str::to_owned);
        let bytes = field.bytes().await.map_err(bad)?;
        let text = || String::from_utf8(bytes.to_vec()).map_err(|_| ApiError::bad_request(format!("part {name:?} is not UTF-8")));
        match name.as_str() {
            "rdf" => rdf = Some(bytes),
            "format" => format = text()?.trim().parse().map_err(ApiError::bad_request)?,
            "document" => {
                let id = file_name
                    .as_deref()
                    .map(|f| f.rsplit_once('.').map_or(f, |(stem, _)| stem).to_owned())
                    .filter(|id| !id.is_empty())
                    .ok_or_else(|| ApiError::bad_request("document parts need a file name"))?;
                documents.insert(id, text()?);
            }
            other => return Err(ApiError::bad_request(format!("unexpected part {other:?}"))),
        }
    }
    let rdf = rdf.ok_or_else(|| ApiError::bad_request("missing part \"rdf\""))?;
    // Parsed from bytes, after all parts, so `format` may come in any order.
    let session = GraphSession::create(&rdf, format, documents)?;
    let created = wire::SessionCreated {
        id: session.id.clone(),
        triples: session.document.graph.len(),
        documents: session.store.document_ids().map(str::to_owned).collect(),
    };
    state.sessions.insert(session);
    Ok(Json(created))
}

fn query_pairs(raw: Option<String>) -> Vec<(String, String)> {
    form_urlencoded::parse(raw.unwrap_or_default().as_bytes()).into_owned().collect()
}

fn single<'a>(pairs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn lang_of(pairs: &[(String, String)]) -> String {
    single(pairs, "lang").filter(|l| !l.is_empty()).unwrap_or("en").to_owned()
}

async fn facets(State(state): State<Arc<AppState>>, Path(id): Path<String>, RawQuery(q): RawQuery) -> Result<Json<wire::Facets>, ApiError> {
    let session = state.session(&id)?;
    let lang = lang_of(&query_pairs(q));
    let graph = &session.document.graph;
    let ontology = &state.config.ontology;
    Ok(Json(wire::Facets {
        concepts: list_concepts(graph, ontology, &lang).iter().map(Into::into).collect(),
        individuals: list_individuals(graph, ontology, &lang).iter().map(Into::into).collect(),
    }))
}

/// Parses `depth`: absent means 1; anything but a non-negative integer is
/// `bad_depth`.
fn parse_depth(value: Option<&str>) -> Result<u32, ApiError> {
    let Some(value) = value else { return Ok(1) };
    let depth: i64 = value
        .trim()
        .parse()
        .map_err(|_| ApiError::new(ErrorCode::BadDepth, format!("depth {value:?} is not an integer")))?;
    if depth < 0 {
        return Err(ApiError::new(ErrorCode::BadDepth, format!("depth {depth} is negative")));
    }
    u32::try_from(depth).map_err(|_| ApiError::new(ErrorCode::BadDepth, format!("depth {depth} is too large")))
}

/// Builds the subgraph request from query pairs. `None` when no seed was
/// given at all.
fn subgraph_request(session: &GraphSession, pairs: &[(String, String)]) -> Result<Option<SubgraphRequest>, ApiError> {
    let mode: SelectionMode = single(pairs, "mode").unwrap_or("individual").parse().map_err(ApiError::bad_request)?;
    let depth = parse_depth(single(pairs, "depth"))?;
    let lang = lang_of(pairs);
    let texts: Vec<&str> = pairs
        .iter()
        .filter(|(k, _)| k == "seeds" || k == "seed")
        .map(|(_, v)| v.trim())
        .filter(|s| !s.is_empty())
        .collect();
    if texts.is_empty() {
        return Ok(None);
    }
    let mut seeds = Vec::new();
    let mut unreadable = Vec::new();
    for text in texts {
        match session.document.resolve_node(text) {
            Some(node) => seeds.push(node),
            None => unreadable.push(text),
        }
    }
    if !unreadable.is_empty() {
        return Err(ApiError::new(ErrorCode::UnknownSeed, format!("unknown seed(s): {}", unreadable.join(", "))));
    }
    Ok(Some(SubgraphRequest::new(mode, seeds).with_depth(depth).with_lang(&lang)))
}

fn build_view(state: &AppState, session: &GraphSession, request: &SubgraphRequest) -> Result<ViewGraph, ApiError> {
    Ok(extract_subgraph(&session.document.graph, &state.config.ontology, &session.store, request)?)
}

fn table_rows(state: &AppState, session: &GraphSession, view: &ViewGraph) -> Vec<wire::Row> {
    triple_table(view, &session.document.graph, &state.config.ontology, &view.lang).iter().map(Into::into).collect()
}

async fn view(State(state): State<Arc<AppState>>, Path(id): Path<String>, RawQuery(q): RawQuery) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let pairs = query_pairs(q);
    let format = single(&pairs, "format").unwrap_or("view");
    let layout: Layout = single(&pairs, "layout").unwrap_or("hierarchical").parse().map_err(ApiError::bad_request)?;
    let request = subgraph_request(&session, &pairs)?.ok_or_else(|| ApiError::bad_request("no seeds selected"))?;
    let view = build_view(&state, &session, &request)?;
    match format {
        "view" => Ok(Json(wire::View::from(&view)).into_response()),
        "table" => Ok(Json(table_rows(&state, &session, &view)).into_response()),
        "dot" => {
            let dot = emit_dot(&view, layout, &state.dot_options());
            Ok(([(header::CONTENT_TYPE, DOT_MEDIA_TYPE)], dot.text).into_response())
        }
        other => {
            let output: OutputFormat = other
                .parse()
                .map_err(|_| ApiError::bad_request(format!("unknown format {other:?}; expected view, dot, svg or table")))?;
            let dot = emit_dot(&view, layout, &state.dot_options());
            let renderer = state.config.renderer.clone();
            let bytes = tokio::task::spawn_blocking(move || renderer.render(&dot, output))
                .await
                .map_err(|e| ApiError::new(ErrorCode::RendererUnavailable, e.to_string()))?
                .map_err(|e| ApiError::new(ErrorCode::RendererUnavailable, e.to_string()))?;
            Ok(([(header::CONTENT_TYPE, output.media_type())], bytes).into_response())
        }
    }
}

/// Rows for the requested view, or for the whole displayable graph when no
/// seed is given.
async fn table(State(state): State<Arc<AppState>>, Path(id): Path<String>, RawQuery(q): RawQuery) -> Result<Json<Vec<wire::Row>>, ApiError> {
    let session = state.session(&id)?;
    let pairs = query_pairs(q);
    let request = match subgraph_request(&session, &pairs)? {
        Some(request) => request,
        None => match whole_graph_request(&session.document.graph, &state.config.ontology) {
            Some(request) => request.with_lang(&lang_of(&pairs)),
            None => return Ok(Json(Vec::new())),
        },
    };
    let view = build_view(&state, &session, &request)?;
    Ok(Json(table_rows(&state, &session, &view)))
}

async fn document(State(state): State<Arc<AppState>>, Path((id, doc)): Path<(String, String)>) -> Result<Json<wire::Document>, ApiError> {
    let session = state.session(&id)?;
    let text = session.store.document(&doc).ok_or_else(|| ApiError::not_found(format!("document {doc:?}")))?;
    let mut links: Vec<wire::Link> = session
        .store
        .links()
        .filter(|(_, span)| span.doc_id == doc)
        .map(|(node, span)| wire::Link { node: node.key(), begin: span.begin, end: span.end })
        .collect();
    links.sort_by(|a, b| (a.begin, a.end, &a.node).cmp(&(b.begin, b.end, &b.node)));
    Ok(Json(wire::Document { text: text.to_owned(), doc, links }))
}

async fn nodes_at_offset(
    State(state): State<Arc<AppState>>,
    Path((id, doc)): Path<(String, String)>,
    RawQuery(q): RawQuery,
) -> Result<Json<wire::NodesAtOffset>, ApiError> {
    let session = state.session(&id)?;
    if session.store.document(&doc).is_none() {
        return Err(ApiError::not_found(format!("document {doc:?}")));
    }
    let pairs = query_pairs(q);
    let offset: usize = single(&pairs, "offset")
        .and_then(|o| o.parse().ok())
        .ok_or_else(|| ApiError::bad_request("offset must be a non-negative integer"))?;
    let nodes = session.store.nodes_at_offset(&doc, offset)?;
    Ok(Json(wire::NodesAtOffset { doc, offset, nodes: nodes.iter().map(|n| n.key()).collect() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_parsing() {
        assert_eq!(parse_depth(None).unwrap(), 1);
        assert_eq!(parse_depth(Some("0")).unwrap(), 0);
        assert_eq!(parse_depth(Some(" 3 ")).unwrap(), 3);
        for bad in ["-1", "x", "1.5", "", "99999999999"] {
            assert_eq!(parse_depth(Some(bad)).unwrap_err().code, ErrorCode::BadDepth, "{bad}");
        }
    }

    #[test]
    fn every_code_has_a_distinct_name() {
        let names: std::collections::BTreeSet<&str> = ErrorCode::ALL.iter().map(|c| c.as_str()).collect();
        assert_eq!(names.len(), ErrorCode::ALL.len());
        for code in ErrorCode::ALL {
            assert_eq!(serde_json::to_value(code).unwrap(), code.as_str());
        }
    }

    #[test]
    fn query_pairs_keep_repeats() {
        let pairs = query_pairs(Some("seeds=a&seeds=b%3Ac&lang=zh".into()));
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs[1].1, "b:c");
        assert_eq!(lang_of(&pairs), "zh");
    }
}
