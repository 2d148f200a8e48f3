use std::collections::BTreeSet;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use http_body_util::BodyExt;
use kgatlas_core::render::Renderer;
use kgatlas_core::{emit_dot, extract_subgraph, list_concepts, list_individuals, DotOptions, Layout, SelectionMode, SubgraphRequest};
use kgatlas_server::{load_ontology_file, router, AppState, ErrorCode, ServerConfig};
use kgatlas_testkit::fixtures::{ex, fixture_path, Benghazi, EX};
use kgatlas_testkit::multipart::{self, Part};
use kgatlas_testkit::oracle::bfs_oracle;
use serde_json::Value;
use tower::ServiceExt;

struct Harness {
    app: axum::Router,
}

struct Reply {
    status: StatusCode,
    content_type: String,
    bytes: Vec<u8>,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_slice(&self.bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&self.bytes)))
    }

    fn text(&self) -> String {
        String::from_utf8(self.bytes.clone()).unwrap()
    }

    fn error_code(&self) -> String {
        let body = self.json();
        let code = body["code"].as_str().expect("error body has a code").to_owned();
        assert!(ErrorCode::ALL.iter().any(|c| c.as_str() == code), "code {code} outside the taxonomy");
        assert!(body["message"].is_string());
        code
    }
}

fn config() -> ServerConfig {
    let mut config = ServerConfig::new(load_ontology_file(&fixture_path("geol-mini.ttl")).unwrap());
    // An empty directory: no layout programs available.
    config.renderer = Renderer::in_dir(std::env::temp_dir().join("kgatlas-no-renderer"));
    config
}

impl Harness {
    fn new() -> Self {
        Harness::with(config())
    }

    fn with(config: ServerConfig) -> Self {
        Harness { app: router(AppState::new(config)) }
    }

    async fn call(&self, req: Request<Body>) -> Reply {
        let res = self.app.clone().oneshot(req).await.unwrap();
        let status = res.status();
        let content_type = res
            .headers()
            .get(header::CONTENT_TYPE)
            .map(|v| v.to_str().unwrap().to_owned())
            .unwrap_or_default();
        let bytes = res.into_body().collect().await.unwrap().to_bytes().to_vec();
        Reply { status, content_type, bytes }
    }

    async fn get(&self, uri: &str) -> Reply {
        self.call(Request::get(uri).body(Body::empty()).unwrap()).await
    }

    async fn upload(&self, body: Vec<u8>) -> Reply {
        let req = Request::post("/api/sessions")
            .header(header::CONTENT_TYPE, multipart::content_type())
            .body(Body::from(body))
            .unwrap();
        self.call(req).await
    }

    async fn benghazi(&self) -> String {
        let reply = self.upload(multipart::benghazi_upload()).await;
        assert_eq!(reply.status, StatusCode::OK, "{}", reply.text());
        reply.json()["id"].as_str().unwrap().to_owned()
    }
}

fn enc(s: &str) -> String {
    form_urlencoded::byte_serialize(s.as_bytes()).collect()
}

#[tokio::test]
async fn upload_reports_triples_and_documents() {
    let h = Harness::new();
    let reply = h.upload(multipart::benghazi_upload()).await;
    let body = reply.json();
    assert_eq!(body["triples"], 38);
    assert_eq!(body["documents"], serde_json::json!(["ex1"]));
}

#[tokio::test]
async fn facets_match_the_facet_engine() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let b = Benghazi::load();
    for lang in ["en", "fr", "ar", "zh"] {
        let body = h.get(&format!("/api/sessions/{id}/facets?lang={lang}")).await.json();
        let concepts: Vec<(String, String, u64)> = body["concepts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["classIri"].as_str().unwrap().into(), c["label"].as_str().unwrap().into(), c["instanceCount"].as_u64().unwrap()))
            .collect();
        let expected: Vec<(String, String, u64)> = list_concepts(b.graph(), &b.ontology, lang)
            .into_iter()
            .map(|c| (c.class_iri.as_str().into(), c.label, c.instance_count as u64))
            .collect();
        assert_eq!(concepts, expected, "{lang}");
        assert_eq!(concepts.len(), 5);
        let individuals: Vec<(String, String)> = body["individuals"]
            .as_array()
            .unwrap()
            .iter()
            .map(|i| (i["id"].as_str().unwrap().into(), i["label"].as_str().unwrap().into()))
            .collect();
        let expected: Vec<(String, String)> =
            list_individuals(b.graph(), &b.ontology, lang).into_iter().map(|i| (i.id.key(), i.label)).collect();
        assert_eq!(individuals, expected, "{lang}");
        assert_eq!(individuals.len(), 5);
    }
    let zh = h.get(&format!("/api/sessions/{id}/facets?lang=zh")).await.json();
    assert!(zh["concepts"].as_array().unwrap().iter().any(|c| c["label"] == "暴力行为"));
}

#[tokio::test]
async fn view_matches_oracle_and_wire_schema() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let b = Benghazi::load();
    let seeds = BTreeSet::from([ex("man1")]);
    for depth in 0..=3 {
        let uri = format!("/api/sessions/{id}/view?mode=individual&seeds={}&depth={depth}&lang=en", enc(&format!("{EX}man1")));
        let reply = h.get(&uri).await;
        assert_eq!(reply.status, StatusCode::OK);
        assert!(reply.content_type.starts_with("application/json"));
        let body = reply.json();
        let (nodes, edges) = bfs_oracle(b.graph(), &b.ontology, &seeds, depth);
        let got: BTreeSet<String> = body["nodes"].as_array().unwrap().iter().map(|n| n["id"].as_str().unwrap().to_owned()).collect();
        assert_eq!(got, nodes.iter().map(|n| n.key()).collect::<BTreeSet<_>>());
        assert_eq!(body["edges"].as_array().unwrap().len(), edges.len());
        assert_eq!(body["depth"], depth);
        assert_eq!(body["lang"], "en");
        assert_eq!(body["seeds"], serde_json::json!([format!("{EX}man1")]));
    }
    let body = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&depth=2")).await.json();
    assert_eq!(body["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(body["edges"].as_array().unwrap().len(), 4);

    let keys = |v: &Value| -> Vec<String> { v.as_object().unwrap().keys().cloned().collect::<BTreeSet<_>>().into_iter().collect() };
    assert_eq!(keys(&body), ["depth", "edges", "lang", "nodes", "seeds"]);
    let attack = body["nodes"].as_array().unwrap().iter().find(|n| n["id"] == format!("{EX}attack1")).unwrap();
    assert_eq!(keys(attack), ["classIri", "classLabel", "iconKey", "id", "label", "spans", "tooltip"]);
    assert_eq!(attack["spans"], serde_json::json!([{"doc": "ex1", "begin": 52, "end": 60}]));
    assert_eq!(keys(&body["edges"][0]), ["label", "property", "source", "target"]);
    let date = body["nodes"].as_array().unwrap().iter().find(|n| n["id"] == format!("{EX}date1")).unwrap();
    let rows: BTreeSet<(String, String)> = date["tooltip"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["property"].as_str().unwrap().into(), t["value"].as_str().unwrap().into()))
        .collect();
    assert_eq!(rows, BTreeSet::from([("month".into(), "9".into()), ("year".into(), "2012".into())]));
}

#[tokio::test]
async fn curie_and_full_iri_seeds_agree_and_reads_are_repeatable() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let a = h.get(&format!("/api/sessions/{id}/view?seeds=ex:attack1&depth=1&lang=ar")).await;
    let b = h.get(&format!("/api/sessions/{id}/view?seeds={}&depth=1&lang=ar", enc(&format!("{EX}attack1")))).await;
    let c = h.get(&format!("/api/sessions/{id}/view?seeds=ex:attack1&depth=1&lang=ar")).await;
    assert_eq!(a.bytes, b.bytes);
    assert_eq!(a.bytes, c.bytes);
}

#[tokio::test]
async fn concept_mode_view() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let uri = format!("/api/sessions/{id}/view?mode=concept&seeds={}&seeds={}&depth=0", enc("http://kg-atlas.dev/ontology/geol#Person"), enc("http://kg-atlas.dev/ontology/geol#ViolentAct"));
    let body = h.get(&uri).await.json();
    assert_eq!(body["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(body["edges"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn dot_format_is_the_emitter_output() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let reply = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&depth=2&lang=fr&format=dot&layout=radial")).await;
    assert_eq!(reply.status, StatusCode::OK);
    assert!(reply.content_type.starts_with("text/vnd.graphviz"));
    let b = Benghazi::load();
    let req = SubgraphRequest::new(SelectionMode::Individual, [ex("man1")]).with_depth(2).with_lang("fr");
    let view = extract_subgraph(b.graph(), &b.ontology, &b.store, &req).unwrap();
    let options = DotOptions { hyperlink_base: Some("#node=".into()), include_tooltips: true, icon_dir: None };
    assert_eq!(reply.text(), emit_dot(&view, Layout::Radial, &options).text);
    kgatlas_testkit::dot_tokens::parse_dot(&reply.text()).unwrap();
}

#[tokio::test]
async fn svg_without_renderer_is_unavailable() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let reply = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&format=svg")).await;
    assert_eq!(reply.status, StatusCode::SERVICE_UNAVAILABLE);
    assert_eq!(reply.error_code(), "renderer_unavailable");
}

#[cfg(unix)]
#[tokio::test]
async fn svg_through_a_renderer() {
    use std::os::unix::fs::PermissionsExt;
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("circo");
    std::fs::write(&script, "#!/bin/sh\n[ \"$1\" = \"-Tsvg\" ] || exit 3\necho '<svg>'\nwc -l\necho '</svg>'\n").unwrap();
    std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();
    let mut config = config();
    config.renderer = Renderer::in_dir(dir.path());
    let h = Harness::with(config);
    let id = h.benghazi().await;
    let reply = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&format=svg&layout=circular")).await;
    assert_eq!(reply.status, StatusCode::OK, "{}", reply.text());
    assert_eq!(reply.content_type, "image/svg+xml");
    assert!(reply.text().starts_with("<svg>"));
}

#[tokio::test]
async fn tables() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let whole = h.get(&format!("/api/sessions/{id}/table")).await.json();
    assert_eq!(whole.as_array().unwrap().len(), 8);
    let row = &whole[0];
    assert_eq!(row.as_object().unwrap().keys().collect::<Vec<_>>(), ["object", "predicate", "subject"]);
    let seeded = h.get(&format!("/api/sessions/{id}/table?seeds=ex:man1&depth=1")).await.json();
    let via_view = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&depth=1&format=table")).await.json();
    assert_eq!(seeded, via_view);
    // attack→man edge plus man's attribute
    assert_eq!(seeded.as_array().unwrap().len(), 2);
    let fr = h.get(&format!("/api/sessions/{id}/table?lang=fr")).await.json();
    let values = |v: &Value| v.as_array().unwrap().iter().map(|r| r["object"].as_str().unwrap().to_owned()).collect::<BTreeSet<_>>();
    assert!(values(&fr).is_superset(&BTreeSet::from(["armed".to_owned(), "US".to_owned(), "2012".to_owned(), "9".to_owned()])));
    assert!(values(&whole).contains("armed"));
}

#[tokio::test]
async fn documents_and_offsets() {
    let h = Harness::new();
    let id = h.benghazi().await;
    let doc = h.get(&format!("/api/sessions/{id}/documents/ex1")).await.json();
    assert_eq!(doc["text"], kgatlas_testkit::fixtures::EXAMPLE_SENTENCE);
    assert_eq!(doc["links"].as_array().unwrap().len(), 5);
    assert_eq!(doc["links"][0], serde_json::json!({"node": format!("{EX}date1"), "begin": 3, "end": 17}));
    let at = h.get(&format!("/api/sessions/{id}/documents/ex1/nodes?offset=56")).await.json();
    assert_eq!(at["nodes"], serde_json::json!([format!("{EX}attack1")]));
    let none = h.get(&format!("/api/sessions/{id}/documents/ex1/nodes?offset=0")).await.json();
    assert_eq!(none["nodes"], serde_json::json!([]));
    let missing = h.get(&format!("/api/sessions/{id}/documents/nope")).await;
    assert_eq!((missing.status, missing.error_code().as_str()), (StatusCode::NOT_FOUND, "not_found"));
    let bad = h.get(&format!("/api/sessions/{id}/documents/ex1/nodes?offset=-3")).await;
    assert_eq!(bad.error_code(), "bad_request");
}

#[tokio::test]
async fn languages_are_listed() {
    let h = Harness::new();
    let body = h.get("/api/meta/languages").await.json();
    assert_eq!(body, serde_json::json!(["ar", "en", "fr", "zh"]));
}

#[tokio::test]
async fn error_taxonomy() {
    let h = Harness::new();
    let id = h.benghazi().await;

    let r = h.get("/api/sessions/deadbeef/facets").await;
    assert_eq!((r.status, r.error_code().as_str()), (StatusCode::NOT_FOUND, "not_found"));
    let r = h.get("/no/such/route").await;
    assert_eq!((r.status, r.error_code().as_str()), (StatusCode::NOT_FOUND, "not_found"));
    let r = h.get("/api/sessions/deadbeef/view?seeds=ex:man1").await;
    assert_eq!(r.error_code(), "not_found");

    for depth in ["-1", "two", "1.5"] {
        let r = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&depth={depth}")).await;
        assert_eq!((r.status, r.error_code().as_str()), (StatusCode::BAD_REQUEST, "bad_depth"), "{depth}");
    }
    for seed in ["ex:nobody", "zz:top", "not%20an%20iri"] {
        let r = h.get(&format!("/api/sessions/{id}/view?seeds={seed}")).await;
        assert_eq!((r.status, r.error_code().as_str()), (StatusCode::BAD_REQUEST, "unknown_seed"), "{seed}");
    }
    let r = h.get(&format!("/api/sessions/{id}/view?mode=concept&seeds=ex:man1")).await;
    assert_eq!(r.error_code(), "unknown_seed");
    for query in ["", "seeds=ex:man1&mode=everything", "seeds=ex:man1&format=gif", "seeds=ex:man1&layout=spiral"] {
        let r = h.get(&format!("/api/sessions/{id}/view?{query}")).await;
        assert_eq!(r.error_code(), "bad_request", "{query}");
    }

    let bad = multipart::body(&[Part::file("rdf", "bad.ttl", b"@prefix ex: <http://ex.org/> .\nex:a ex:b \"open .\n")]);
    let r = h.upload(bad).await;
    assert_eq!(r.error_code(), "syntax_error");
    assert_eq!((r.json()["line"].as_u64(), r.json()["column"].as_u64()), (Some(2), Some(18)));

    let nt = multipart::body(&[Part::text("format", "ntriples"), Part::file("rdf", "x.ttl", b"@prefix ex: <http://ex.org/> .\n")]);
    assert_eq!(h.upload(nt).await.error_code(), "syntax_error");

    let without_doc = multipart::body(&[Part::file("rdf", "b.ttl", kgatlas_testkit::fixtures::read_fixture("benghazi.ttl").as_bytes())]);
    assert_eq!(h.upload(without_doc).await.error_code(), "provenance_error");

    let short_doc = multipart::body(&[
        Part::file("rdf", "b.ttl", kgatlas_testkit::fixtures::read_fixture("benghazi.ttl").as_bytes()),
        Part::file("document", "ex1.txt", b"too short"),
    ]);
    assert_eq!(h.upload(short_doc).await.error_code(), "provenance_error");

    assert_eq!(h.upload(multipart::body(&[Part::text("format", "turtle")])).await.error_code(), "bad_request");
    assert_eq!(h.upload(multipart::body(&[Part::text("format", "rdfxml"), Part::text("rdf", "")])).await.error_code(), "bad_request");
}

#[tokio::test]
async fn empty_document_has_no_facets() {
    let h = Harness::new();
    let r = h.upload(multipart::body(&[Part::file("rdf", "empty.ttl", b"")])).await;
    assert_eq!(r.status, StatusCode::OK);
    let id = r.json()["id"].as_str().unwrap().to_owned();
    let facets = h.get(&format!("/api/sessions/{id}/facets")).await.json();
    assert_eq!(facets, serde_json::json!({"concepts": [], "individuals": []}));
    assert_eq!(h.get(&format!("/api/sessions/{id}/table")).await.json(), serde_json::json!([]));
}

#[tokio::test]
async fn oldest_session_is_evicted() {
    let mut config = config();
    config.session_cap = 2;
    let h = Harness::with(config);
    let first = h.benghazi().await;
    let second = h.benghazi().await;
    assert_eq!(h.get(&format!("/api/sessions/{first}/facets")).await.status, StatusCode::OK);
    let _third = h.benghazi().await;
    assert_eq!(h.get(&format!("/api/sessions/{second}/facets")).await.status, StatusCode::NOT_FOUND);
    assert_eq!(h.get(&format!("/api/sessions/{first}/facets")).await.status, StatusCode::OK);
}

#[tokio::test]
async fn concurrent_requests() {
    let h = Arc::new(Harness::new());
    let id = h.benghazi().await;
    let first = h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&depth=2")).await.bytes;
    let mut tasks = Vec::new();
    for i in 0..16 {
        let h = h.clone();
        let id = id.clone();
        tasks.push(tokio::spawn(async move {
            if i % 4 == 0 {
                h.benghazi().await;
            }
            h.get(&format!("/api/sessions/{id}/view?seeds=ex:man1&depth=2")).await.bytes
        }));
    }
    for t in tasks {
        assert_eq!(t.await.unwrap(), first);
    }
}

#[tokio::test]
async fn static_assets_are_served_beside_the_api() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>atlas</html>").unwrap();
    let mut config = config();
    config.static_dir = Some(dir.path().to_owned());
    let h = Harness::with(config);
    let index = h.get("/").await;
    assert_eq!(index.status, StatusCode::OK);
    assert_eq!(index.text(), "<html>atlas</html>");
    let missing = h.get("/nope.js").await;
    assert_eq!(missing.error_code(), "not_found");
    let api_missing = h.get("/api/unknown").await;
    assert_eq!(api_missing.error_code(), "not_found");
    assert_eq!(h.get("/api/meta/languages").await.status, StatusCode::OK);
}
