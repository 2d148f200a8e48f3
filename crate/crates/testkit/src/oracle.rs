//! Brute-force reference implementations.

use std::collections::BTreeSet;

use kgatlas_core::ontology::PropertyKind;
use kgatlas_core::{Graph, Iri, Node, Ontology, Term, Triple};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
const VIZ: &str = "http://kg-atlas.dev/viz#";

/// Pattern match by linear filtering over every triple.
pub fn linear_match(graph: &Graph, s: Option<&Node>, p: Option<&Iri>, o: Option<&Term>) -> Vec<Triple> {
    let mut out: Vec<Triple> = graph
        .iter()
        .filter(|t| s.is_none_or(|s| &t.subject == s))
        .filter(|t| p.is_none_or(|p| &t.predicate == p))
        .filter(|t| o.is_none_or(|o| &t.object == o))
        .collect();
    out.sort();
    out
}

/// An assertion is displayed as an edge when its object is a resource, its
/// predicate is not `rdf:type` or a `viz:` annotation, and the predicate is
/// not declared as a datatype property.
pub fn displayed_as_edge(ontology: &Ontology, t: &Triple) -> bool {
    let resource_object = matches!(t.object, Term::Iri(_) | Term::Blank(_));
    let p = t.predicate.as_str();
    resource_object
        && p != RDF_TYPE
        && !p.starts_with(VIZ)
        && ontology.property(&t.predicate).is_none_or(|prop| prop.kind != PropertyKind::Datatype)
}

/// Literal-valued assertions other than `rdfs:label` and `viz:` annotations.
pub fn datatype_assertions(graph: &Graph, node: &Node) -> Vec<(Iri, String)> {
    graph
        .iter()
        .filter(|t| &t.subject == node)
        .filter(|t| t.predicate.as_str() != RDFS_LABEL && !t.predicate.as_str().starts_with(VIZ))
        .filter_map(|t| match &t.object {
            Term::Literal(l) => Some((t.predicate.clone(), l.lexical().to_owned())),
            _ => None,
        })
        .collect()
}

pub type EdgeKey = (Node, Iri, Node);

/// Nodes within `depth` undirected hops of `seeds`, computed by repeated
/// full scans, and the edges induced on them.
pub fn bfs_oracle(graph: &Graph, ontology: &Ontology, seeds: &BTreeSet<Node>, depth: u32) -> (BTreeSet<Node>, BTreeSet<EdgeKey>) {
    let edges: Vec<EdgeKey> = graph
        .iter()
        .filter(|t| displayed_as_edge(ontology, t))
        .map(|t| {
            let o = match t.object {
                Term::Iri(i) => Node::Iri(i),
                Term::Blank(b) => Node::Blank(b),
                Term::Literal(_) => unreachable!(),
            };
            (t.subject, t.predicate, o)
        })
        .collect();
    let mut reached = seeds.clone();
    for _ in 0..depth {
        let mut next = reached.clone();
        for (s, _, o) in &edges {
            if reached.contains(s) {
                next.insert(o.clone());
            }
            if reached.contains(o) {
                next.insert(s.clone());
            }
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    let induced = edges
        .into_iter()
        .filter(|(s, _, o)| reached.contains(s) && reached.contains(o))
        .collect();
    (reached, induced)
}

/// Subjects typed with any of `classes`, by linear scan.
pub fn instances_of(graph: &Graph, classes: &BTreeSet<Node>) -> BTreeSet<Node> {
    graph
        .iter()
        .filter(|t| t.predicate.as_str() == RDF_TYPE)
        .filter(|t| t.object.as_node().is_some_and(|o| classes.contains(&o)))
        .map(|t| t.subject)
        .collect()
}
