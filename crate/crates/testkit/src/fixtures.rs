use std::collections::BTreeMap;
use std::path::PathBuf;

use kgatlas_core::{
    load_ontology, load_provenance, parse_document, DocumentStore, Graph, Iri, Node, Ontology, ParsedDocument, RdfFormat,
};

pub const GEOL: &str = "http://kg-atlas.dev/ontology/geol#";
pub const EX: &str = "http://kg-atlas.dev/data/benghazi#";
pub const EXAMPLE_SENTENCE: &str = "In September 2012, the US consulate in Benghazi was attacked by armed men.";

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("reading fixture {name}: {e}"))
}

pub fn geol(local: &str) -> Iri {
    Iri::new(format!("{GEOL}{local}")).unwrap()
}

pub fn ex(local: &str) -> Node {
    Node::Iri(Iri::new(format!("{EX}{local}")).unwrap())
}

/// The Benghazi example loaded end to end.
pub struct Benghazi {
    pub document: ParsedDocument,
    pub ontology: Ontology,
    pub store: DocumentStore,
}

impl Benghazi {
    pub fn load() -> Self {
        let ontology_graph = kgatlas_core::parse_rdf(&read_fixture("geol-mini.ttl"), RdfFormat::Turtle).unwrap();
        let ontology = load_ontology(&ontology_graph).unwrap();
        let document = parse_document(&read_fixture("benghazi.ttl"), RdfFormat::Turtle, None).unwrap();
        let docs = BTreeMap::from([("ex1".to_owned(), read_fixture("example1.txt"))]);
        let store = load_provenance(&document.graph, docs).unwrap();
        Benghazi { document, ontology, store }
    }

    pub fn graph(&self) -> &Graph {
        &self.document.graph
    }
}
