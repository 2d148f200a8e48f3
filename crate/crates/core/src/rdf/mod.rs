//! RDF data model, in-memory store and the Turtle / N-Triples codecs.

mod graph;
mod iri;
mod iso;
mod ntriples;
mod parser;
mod term;

pub use graph::Graph;
pub use iri::resolve_iri;
pub use iso::isomorphic;
pub use ntriples::serialize_ntriples;
pub use parser::{parse_document, parse_rdf, parse_rdf_bytes, ParseError, ParsedDocument, RdfFormat};
pub use term::{local_name, BlankNode, InvalidIri, Iri, Literal, Node, Term, Triple};
