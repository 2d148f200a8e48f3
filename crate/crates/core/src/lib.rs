//! Core of the knowledge-graph atlas: an in-memory RDF store with Turtle and
//! N-Triples support, an ontology loader with multilingual labels, faceted
//! subgraph extraction, text-span provenance and DOT emission.

pub mod dot;
pub mod facet;
pub mod ontology;
pub mod provenance;
pub mod rdf;
pub mod render;
pub mod vocab;

pub use dot::{emit_dot, escape_dot, layout_engine_for, DotDocument, DotOptions, Layout};
pub use facet::{
    collect_tooltip, expand_seeds, extract_subgraph, list_concepts, list_individuals,
    triple_table, whole_graph_request, ConceptFacet, FacetError, IndividualFacet, SelectionMode, SubgraphRequest,
    TableRow, TooltipEntry, ViewEdge, ViewGraph, ViewNode,
};
pub use ontology::{
    load_ontology, resolve_label, LabelBundle, Ontology, OntologyClass, OntologyError,
    OntologyProperty, PropertyKind,
};
pub use provenance::{load_provenance, DocumentStore, ProvenanceError, TextSpan};
pub use rdf::{
    local_name, parse_document, parse_rdf, parse_rdf_bytes, serialize_ntriples, BlankNode, Graph,
    Iri, Literal, Node, ParseError, ParsedDocument, RdfFormat, Term, Triple,
};
