//! Faceted selection over an instance graph.
//!
//! Two selections are offered: by concept (every instance of the chosen
//! classes) and by individual. Either seed set is grown breadth-first over
//! object-property edges, in both directions, for a chosen number of hops.
//! Datatype assertions never become edges; they surface as node tooltips.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::ontology::{resolve_label, resolve_node_label, LabelBundle, Ontology, PropertyKind};
use crate::provenance::{DocumentStore, TextSpan};
use crate::rdf::{Graph, Iri, Node, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SelectionMode {
    Concept,
    Individual,
}

impl SelectionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionMode::Concept => "concept",
            SelectionMode::Individual => "individual",
        }
    }
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "concept" => Ok(SelectionMode::Concept),
            "individual" => Ok(SelectionMode::Individual),
            other => Err(format!("unknown selection mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphRequest {
    pub mode: SelectionMode,
    /// Class IRIs in concept mode, individuals in individual mode.
    pub seeds: BTreeSet<Node>,
    pub depth: u32,
    pub lang: String,
}

impl SubgraphRequest {
    pub const DEFAULT_DEPTH: u32 = 1;

    pub fn new(mode: SelectionMode, seeds: impl IntoIterator<Item = Node>) -> Self {
        SubgraphRequest {
            mode,
            seeds: seeds.into_iter().collect(),
            depth: Self::DEFAULT_DEPTH,
            lang: "en".to_owned(),
        }
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_lang(mut self, lang: &str) -> Self {
        self.lang = lang.to_lowercase();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FacetError {
    #[error("no seeds selected")]
    NoSeeds,
    #[error("unknown seed(s): {}", .seeds.iter().map(Node::to_string).collect::<Vec<_>>().join(", "))]
    UnknownSeed { seeds: Vec<Node> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptFacet {
    pub class_iri: Iri,
    pub label: String,
    pub instance_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndividualFacet {
    pub id: Node,
    pub label: String,
    pub class_iri: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TooltipEntry {
    /// Localized property label.
    pub property: String,
    /// Literal lexical form, verbatim.
    pub value: String,
    pub predicate: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewNode {
    pub id: Node,
    pub label: String,
    pub class_iri: Option<Iri>,
    /// Empty when the node has no class.
    pub class_label: String,
    pub icon_key: Option<String>,
    pub tooltip: Vec<TooltipEntry>,
    pub spans: Vec<TextSpan>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewEdge {
    pub source: Node,
    pub target: Node,
    pub property: Iri,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewGraph {
    pub nodes: Vec<ViewNode>,
    pub edges: Vec<ViewEdge>,
    pub lang: String,
    pub request: SubgraphRequest,
}

impl ViewGraph {
    pub fn node(&self, id: &Node) -> Option<&ViewNode> {
        self.nodes.binary_search_by(|n| n.id.cmp(id)).ok().map(|i| &self.nodes[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableRow {
    pub subject: String,
    pub predicate: String,
    pub object: String,
}

fn iri(s: &str) -> Iri {
    Iri::new(s).expect("static IRI")
}

fn is_annotation(predicate: &Iri) -> bool {
    predicate.as_str().starts_with(vocab::VIZ)
}

/// True when the assertion is drawn as an edge: an object property (or an
/// undeclared predicate) pointing at a resource. `rdf:type` and the `viz:`
/// annotations are never edges.
pub fn is_edge(ontology: &Ontology, triple: &Triple) -> bool {
    if triple.object.is_literal() || triple.predicate.as_str() == vocab::RDF_TYPE || is_annotation(&triple.predicate) {
        return false;
    }
    ontology.property_kind(&triple.predicate) != PropertyKind::Datatype
}

/// True when the assertion is shown as a tooltip row: any literal-valued
/// assertion other than the node's caption (`rdfs:label`) and annotations.
pub fn is_tooltip_assertion(triple: &Triple) -> bool {
    triple.object.is_literal() && triple.predicate.as_str() != vocab::RDFS_LABEL && !is_annotation(&triple.predicate)
}

/// Individuals and their non-schema classes.
///
/// An individual is the subject of some `rdf:type` triple that is not itself
/// a class or property declared in the ontology.
fn individuals(graph: &Graph, ontology: &Ontology) -> BTreeMap<Node, BTreeSet<Iri>> {
    let mut out: BTreeMap<Node, BTreeSet<Iri>> = BTreeMap::new();
    for t in graph.matching(None, Some(&iri(vocab::RDF_TYPE)), None) {
        if t.subject.as_iri().is_some_and(|s| ontology.is_declared(s)) {
            continue;
        }
        let classes = out.entry(t.subject).or_default();
        if let Term::Iri(class) = t.object {
            if !vocab::is_schema_vocabulary(class.as_str()) {
                classes.insert(class);
            }
        }
    }
    out
}

/// The class shown for an individual: the smallest declared class, else the
/// smallest class IRI.
fn primary_class(ontology: &Ontology, classes: &BTreeSet<Iri>) -> Option<Iri> {
    classes
        .iter()
        .find(|c| ontology.class(c).is_some())
        .or_else(|| classes.iter().next())
        .cloned()
}

fn classes_of(graph: &Graph, node: &Node) -> BTreeSet<Iri> {
    graph
        .objects(node, &iri(vocab::RDF_TYPE))
        .filter_map(|t| t.as_iri())
        .filter(|c| !vocab::is_schema_vocabulary(c.as_str()))
        .cloned()
        .collect()
}

/// Caption of a node in `lang`, preferring the node's own `rdfs:label`s.
pub fn node_label(graph: &Graph, ontology: &Ontology, node: &Node, lang: &str) -> String {
    let own = LabelBundle::from_graph(graph, node);
    resolve_node_label(ontology, node, lang, Some(&own))
}

/// One facet per instantiated class, sorted by label.
pub fn list_concepts(graph: &Graph, ontology: &Ontology, lang: &str) -> Vec<ConceptFacet> {
    let mut counts: BTreeMap<Iri, usize> = BTreeMap::new();
    for classes in individuals(graph, ontology).into_values() {
        for class in classes {
            *counts.entry(class).or_default() += 1;
        }
    }
    let mut facets: Vec<ConceptFacet> = counts
        .into_iter()
        .map(|(class_iri, instance_count)| ConceptFacet {
            label: resolve_label(ontology, &class_iri, lang, None),
            class_iri,
            instance_count,
        })
        .collect();
    facets.sort_by(|a, b| (&a.label, &a.class_iri).cmp(&(&b.label, &b.class_iri)));
    facets
}

/// One facet per typed individual, sorted by label.
pub fn list_individuals(graph: &Graph, ontology: &Ontology, lang: &str) -> Vec<IndividualFacet> {
    let mut facets: Vec<IndividualFacet> = individuals(graph, ontology)
        .into_iter()
        .map(|(id, classes)| IndividualFacet {
            label: node_label(graph, ontology, &id, lang),
            class_iri: primary_class(ontology, &classes),
            id,
        })
        .collect();
    facets.sort_by(|a, b| (&a.label, &a.id).cmp(&(&b.label, &b.id)));
    facets
}

/// Turns the request's seeds into the starting node set.
pub fn expand_seeds(graph: &Graph, request: &SubgraphRequest) -> Result<BTreeSet<Node>, FacetError> {
    if request.seeds.is_empty() {
        return Err(FacetError::NoSeeds);
    }
    let mut unknown = Vec::new();
    let mut out = BTreeSet::new();
    match request.mode {
        SelectionMode::Individual => {
            for seed in &request.seeds {
                if graph.mentions(seed) {
                    out.insert(seed.clone());
                } else {
                    unknown.push(seed.clone());
                }
            }
        }
        SelectionMode::Concept => {
            let rdf_type = iri(vocab::RDF_TYPE);
            for seed in &request.seeds {
                let class = Term::from(seed.clone());
                let instances: Vec<&Node> = graph.subjects_with(&rdf_type, &class).collect();
                if instances.is_empty() {
                    unknown.push(seed.clone());
                }
                out.extend(instances.into_iter().cloned());
            }
        }
    }
    if unknown.is_empty() {
        Ok(out)
    } else {
        Err(FacetError::UnknownSeed { seeds: unknown })
    }
}

/// Datatype assertions of `node` as (localized property, verbatim value)
/// rows, sorted by property label.
pub fn collect_tooltip(graph: &Graph, ontology: &Ontology, node: &Node, lang: &str) -> Vec<TooltipEntry> {
    let mut rows: Vec<TooltipEntry> = graph
        .matching(Some(node), None, None)
        .into_iter()
        .filter(is_tooltip_assertion)
        .filter_map(|t| {
            let value = t.object.as_literal()?.lexical().to_owned();
            Some(TooltipEntry { property: resolve_label(ontology, &t.predicate, lang, None), value, predicate: t.predicate })
        })
        .collect();
    rows.sort();
    rows
}

/// Extracts the depth-bounded neighbourhood of the request's seeds.
///
/// Nodes are every node within `depth` undirected hops over edge assertions;
/// edges are every edge assertion with both ends among those nodes.
pub fn extract_subgraph(
    graph: &Graph,
    ontology: &Ontology,
    store: &DocumentStore,
    request: &SubgraphRequest,
) -> Result<ViewGraph, FacetError> {
    let seeds = expand_seeds(graph, request)?;
    let edge_triples: Vec<Triple> = graph.iter().filter(|t| is_edge(ontology, t)).collect();

    let mut adjacency: BTreeMap<&Node, Vec<Node>> = BTreeMap::new();
    let objects: Vec<Node> = edge_triples.iter().map(|t| t.object.as_node().expect("edges end at resources")).collect();
    for (t, o) in edge_triples.iter().zip(&objects) {
        adjacency.entry(&t.subject).or_default().push(o.clone());
        adjacency.entry(o).or_default().push(t.subject.clone());
    }

    let mut visited: BTreeSet<Node> = seeds.clone();
    let mut queue: VecDeque<(Node, u32)> = seeds.into_iter().map(|n| (n, 0)).collect();
    while let Some((node, dist)) = queue.pop_front() {
        if dist >= request.depth {
            continue;
        }
        for next in adjacency.get(&node).into_iter().flatten() {
            if visited.insert(next.clone()) {
                queue.push_back((next.clone(), dist + 1));
            }
        }
    }

    let lang = request.lang.to_lowercase();
    let nodes: Vec<ViewNode> = visited.iter().map(|id| view_node(graph, ontology, store, id, &lang)).collect();

    let mut edges: Vec<ViewEdge> = edge_triples
        .iter()
        .zip(objects)
        .filter(|(t, o)| visited.contains(&t.subject) && visited.contains(o))
        .map(|(t, target)| ViewEdge {
            source: t.subject.clone(),
            label: resolve_label(ontology, &t.predicate, &lang, None),
            property: t.predicate.clone(),
            target,
        })
        .collect();
    edges.sort_by(|a, b| (&a.source, &a.property, &a.target).cmp(&(&b.source, &b.property, &b.target)));

    Ok(ViewGraph { nodes, edges, lang, request: request.clone() })
}

fn view_node(graph: &Graph, ontology: &Ontology, store: &DocumentStore, id: &Node, lang: &str) -> ViewNode {
    let class_iri = primary_class(ontology, &classes_of(graph, id));
    ViewNode {
        label: node_label(graph, ontology, id, lang),
        class_label: class_iri.as_ref().map(|c| resolve_label(ontology, c, lang, None)).unwrap_or_default(),
        icon_key: class_iri.as_ref().and_then(|c| ontology.class(c)).and_then(|c| c.icon_key.clone()),
        tooltip: collect_tooltip(graph, ontology, id, lang),
        spans: store.spans_for_node(id).to_vec(),
        class_iri,
        id: id.clone(),
    }
}

/// Subject / predicate / object rows for everything a view displays: its
/// edges and each node's tooltip entries, localized in `lang`.
pub fn triple_table(view: &ViewGraph, graph: &Graph, ontology: &Ontology, lang: &str) -> Vec<TableRow> {
    let mut captions: BTreeMap<&Node, String> = BTreeMap::new();
    for n in &view.nodes {
        captions.insert(&n.id, node_label(graph, ontology, &n.id, lang));
    }
    let caption = |n: &Node| captions.get(n).cloned().unwrap_or_else(|| node_label(graph, ontology, n, lang));

    let mut rows = Vec::new();
    for e in &view.edges {
        rows.push(TableRow {
            subject: caption(&e.source),
            predicate: resolve_label(ontology, &e.property, lang, None),
            object: caption(&e.target),
        });
    }
    for n in &view.nodes {
        for entry in collect_tooltip(graph, ontology, &n.id, lang) {
            rows.push(TableRow { subject: caption(&n.id), predicate: entry.property, object: entry.value });
        }
    }
    rows.sort();
    rows
}

/// A depth-0 request over every individual and every edge endpoint, i.e. the
/// whole displayable graph. `None` when there is nothing to display.
pub fn whole_graph_request(graph: &Graph, ontology: &Ontology) -> Option<SubgraphRequest> {
    let mut nodes: BTreeSet<Node> = individuals(graph, ontology).into_keys().collect();
    for t in graph.iter().filter(|t| is_edge(ontology, t)) {
        nodes.extend(t.object.as_node());
        nodes.insert(t.subject);
    }
    (!nodes.is_empty()).then(|| SubgraphRequest::new(SelectionMode::Individual, nodes).with_depth(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::load_ontology;
    use crate::rdf::{parse_rdf, RdfFormat};

    const ONTO: &str = "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
        @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
        @prefix o: <http://ex.org/o#> .\n\
        o:Person a owl:Class ; rdfs:label \"Person\"@en , \"Personne\"@fr .\n\
        o:Location a owl:Class ; rdfs:label \"Location\"@en .\n\
        o:knows a owl:ObjectProperty ; rdfs:label \"knows\"@en , \"connaît\"@fr .\n\
        o:age a owl:DatatypeProperty ; rdfs:label \"age\"@en , \"âge\"@fr .\n\
        o:home a owl:DatatypeProperty ; rdfs:label \"home\"@en .\n";

    fn fixture(data: &str) -> (Graph, Ontology) {
        let o = load_ontology(&parse_rdf(ONTO, RdfFormat::Turtle).unwrap()).unwrap();
        let g = parse_rdf(
            &format!("@prefix o: <http://ex.org/o#> . @prefix d: <http://ex.org/d#> . @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n{data}"),
            RdfFormat::Turtle,
        )
        .unwrap();
        (g, o)
    }

    fn n(local: &str) -> Node {
        Node::Iri(Iri::new(format!("http://ex.org/d#{local}")).unwrap())
    }

    fn c(local: &str) -> Node {
        Node::Iri(Iri::new(format!("http://ex.org/o#{local}")).unwrap())
    }

    #[test]
    fn concept_counts_from_toy_graph() {
        let (g, o) = fixture("d:a a o:Person . d:b a o:Person . d:l a o:Location .");
        let facets = list_concepts(&g, &o, "en");
        let got: Vec<_> = facets.iter().map(|f| (f.label.as_str(), f.instance_count)).collect();
        assert_eq!(got, vec![("Location", 1), ("Person", 2)]);
    }

    #[test]
    fn empty_graph_has_no_facets() {
        let (g, o) = fixture("");
        assert!(list_concepts(&g, &o, "en").is_empty());
        assert!(list_individuals(&g, &o, "en").is_empty());
    }

    #[test]
    fn schema_types_are_not_concepts() {
        let (g, o) = fixture("d:a a o:Person , <http://www.w3.org/2002/07/owl#NamedIndividual> .");
        assert_eq!(list_concepts(&g, &o, "en").len(), 1);
        assert_eq!(list_individuals(&g, &o, "en")[0].class_iri.as_ref().unwrap().as_str(), "http://ex.org/o#Person");
    }

    #[test]
    fn individual_without_label_uses_local_name() {
        let (g, o) = fixture("d:zed a o:Person . d:a a o:Person ; rdfs:label \"Alice\"@en .");
        let labels: Vec<_> = list_individuals(&g, &o, "fr").into_iter().map(|f| f.label).collect();
        assert_eq!(labels, vec!["Alice", "zed"]);
    }

    #[test]
    fn seed_expansion() {
        let (g, _) = fixture("d:a a o:Person . d:b a o:Person . d:l a o:Location . d:a o:knows d:x .");
        let req = SubgraphRequest::new(SelectionMode::Concept, [c("Person")]);
        assert_eq!(expand_seeds(&g, &req).unwrap(), BTreeSet::from([n("a"), n("b")]));
        let req = SubgraphRequest::new(SelectionMode::Individual, [n("x")]);
        assert_eq!(expand_seeds(&g, &req).unwrap(), BTreeSet::from([n("x")]));
        let req = SubgraphRequest::new(SelectionMode::Individual, [n("nope"), n("a")]);
        assert_eq!(expand_seeds(&g, &req).unwrap_err(), FacetError::UnknownSeed { seeds: vec![n("nope")] });
        let req = SubgraphRequest::new(SelectionMode::Concept, [c("Ghost")]);
        assert!(matches!(expand_seeds(&g, &req), Err(FacetError::UnknownSeed { .. })));
        let req = SubgraphRequest::new(SelectionMode::Individual, []);
        assert_eq!(expand_seeds(&g, &req).unwrap_err(), FacetError::NoSeeds);
    }

    #[test]
    fn traversal_ignores_datatype_and_type_edges() {
        // d:home is declared datatype, so even with a resource object it is
        // not an edge.
        let (g, o) = fixture(
            "d:a a o:Person ; o:knows d:b ; o:age 30 ; o:home d:h .\n\
             d:b o:knows d:c . d:c <http://ex.org/other#rel> d:e .",
        );
        let store = DocumentStore::default();
        let req = SubgraphRequest::new(SelectionMode::Individual, [n("a")]).with_depth(5);
        let view = extract_subgraph(&g, &o, &store, &req).unwrap();
        let ids: Vec<_> = view.nodes.iter().map(|v| v.id.clone()).collect();
        assert_eq!(ids, vec![n("a"), n("b"), n("c"), n("e")]);
        assert_eq!(view.edges.len(), 3);
        let a = view.node(&n("a")).unwrap();
        assert_eq!(a.tooltip.len(), 1);
        assert_eq!((a.tooltip[0].property.as_str(), a.tooltip[0].value.as_str()), ("age", "30"));
    }

    #[test]
    fn induced_edges_between_frontier_nodes() {
        let (g, o) = fixture("d:s o:knows d:x . d:s o:knows d:y . d:x o:knows d:y .");
        let req = SubgraphRequest::new(SelectionMode::Individual, [n("s")]).with_depth(1);
        let view = extract_subgraph(&g, &o, &DocumentStore::default(), &req).unwrap();
        assert_eq!(view.nodes.len(), 3);
        assert_eq!(view.edges.len(), 3);
    }

    #[test]
    fn blank_individuals_participate() {
        let (g, o) = fixture("_:z a o:Person ; o:knows d:a . d:a a o:Person ; rdfs:label \"A\"@en .");
        let individuals = list_individuals(&g, &o, "en");
        assert_eq!(individuals.iter().map(|f| f.label.as_str()).collect::<Vec<_>>(), vec!["A", "_:b0"]);
        let req = SubgraphRequest::new(SelectionMode::Individual, [n("a")]);
        let view = extract_subgraph(&g, &o, &DocumentStore::default(), &req).unwrap();
        assert_eq!(view.nodes.len(), 2);
    }

    #[test]
    fn tooltip_localized_values_verbatim() {
        let (g, o) = fixture("d:a o:age \"trente\" ; rdfs:label \"A\" .");
        let en = collect_tooltip(&g, &o, &n("a"), "en");
        let fr = collect_tooltip(&g, &o, &n("a"), "fr");
        assert_eq!(en[0].property, "age");
        assert_eq!(fr[0].property, "âge");
        assert_eq!(en[0].value, fr[0].value);
        assert!(collect_tooltip(&g, &o, &n("zz"), "en").is_empty());
    }

    #[test]
    fn empty_view_has_empty_table() {
        let (g, o) = fixture("");
        let view = ViewGraph {
            nodes: vec![],
            edges: vec![],
            lang: "en".into(),
            request: SubgraphRequest::new(SelectionMode::Individual, [n("a")]),
        };
        assert!(triple_table(&view, &g, &o, "en").is_empty());
    }
}
