//! Ontology loading and per-language label resolution.
//!
//! Only the assertional vocabulary is read: `owl:Class`,
//! `owl:ObjectProperty`, `owl:DatatypeProperty`, `rdfs:subClassOf`,
//! `rdfs:label`, `rdfs:domain`, `rdfs:range` and the `viz:icon` annotation.
//! No reasoning is performed.

use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::{local_name, Graph, Iri, Node, Term};
use crate::vocab;

/// Display names keyed by lowercase language tag.
///
/// Labels without a language tag are stored under the empty tag, which sorts
/// before every real tag and is therefore the first "any label" fallback.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelBundle {
    by_language: BTreeMap<String, String>,
}

impl LabelBundle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a label. Empty texts are ignored. When a language already has a
    /// label the lexicographically smallest text is kept.
    pub fn insert(&mut self, language: &str, text: &str) {
        if text.is_empty() {
            return;
        }
        let language = language.to_lowercase();
        match self.by_language.get_mut(&language) {
            Some(existing) if existing.as_str() <= text => {}
            Some(existing) => *existing = text.to_owned(),
            None => {
                self.by_language.insert(language, text.to_owned());
            }
        }
    }

    pub fn get(&self, language: &str) -> Option<&str> {
        self.by_language.get(language).map(String::as_str)
    }

    /// The label with the smallest language tag.
    pub fn first(&self) -> Option<&str> {
        self.by_language.values().next().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.by_language.is_empty()
    }

    pub fn len(&self) -> usize {
        self.by_language.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.by_language.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Collects the `rdfs:label` literals of `node` in `graph`.
    pub fn from_graph(graph: &Graph, node: &Node) -> Self {
        let label = Iri::new(vocab::RDFS_LABEL).expect("static IRI");
        let mut bundle = LabelBundle::new();
        for term in graph.objects(node, &label) {
            if let Term::Literal(lit) = term {
                bundle.insert(lit.language().unwrap_or(""), lit.lexical());
            }
        }
        bundle
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OntologyClass {
    pub iri: Iri,
    pub labels: LabelBundle,
    pub parents: BTreeSet<Iri>,
    pub icon_key: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyKind {
    Object,
    Datatype,
    Unknown,
}

impl PropertyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PropertyKind::Object => "object",
            PropertyKind::Datatype => "datatype",
            PropertyKind::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OntologyProperty {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub labels: LabelBundle,
    pub domain: Option<Iri>,
    pub range: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OntologyError {
    #[error("cyclic class hierarchy through {}", display_iris(.iris))]
    CyclicHierarchy { iris: Vec<Iri> },
    #[error("{iri} is declared more than once with different roles")]
    DuplicateDeclaration { iri: Iri },
    #[error("datatype property {property} has non-datatype range {range}")]
    InvalidRange { property: Iri, range: Iri },
}

fn display_iris(iris: &[Iri]) -> String {
    iris.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    classes: BTreeMap<Iri, OntologyClass>,
    properties: BTreeMap<Iri, OntologyProperty>,
    supported_languages: Vec<String>,
}

impl Ontology {
    pub fn class(&self, iri: &Iri) -> Option<&OntologyClass> {
        self.classes.get(iri)
    }

    pub fn property(&self, iri: &Iri) -> Option<&OntologyProperty> {
        self.properties.get(iri)
    }

    pub fn classes(&self) -> impl Iterator<Item = &OntologyClass> {
        self.classes.values()
    }

    pub fn properties(&self) -> impl Iterator<Item = &OntologyProperty> {
        self.properties.values()
    }

    /// Language tags that label at least one class or property, sorted.
    pub fn supported_languages(&self) -> &[String] {
        &self.supported_languages
    }

    pub fn is_declared(&self, iri: &Iri) -> bool {
        self.classes.contains_key(iri) || self.properties.contains_key(iri)
    }

    /// Labels declared for a class or property.
    pub fn labels(&self, iri: &Iri) -> Option<&LabelBundle> {
        self.classes
            .get(iri)
            .map(|c| &c.labels)
            .or_else(|| self.properties.get(iri).map(|p| &p.labels))
    }

    pub fn property_kind(&self, predicate: &Iri) -> PropertyKind {
        self.properties.get(predicate).map_or(PropertyKind::Unknown, |p| p.kind)
    }

    /// Builds an ontology directly from parts. Used by generators and tests;
    /// no hierarchy validation is performed.
    pub fn from_parts(
        classes: impl IntoIterator<Item = OntologyClass>,
        properties: impl IntoIterator<Item = OntologyProperty>,
    ) -> Self {
        let classes: BTreeMap<_, _> = classes.into_iter().map(|c| (c.iri.clone(), c)).collect();
        let properties: BTreeMap<_, _> = properties.into_iter().map(|p| (p.iri.clone(), p)).collect();
        let supported_languages = collect_languages(&classes, &properties);
        Ontology { classes, properties, supported_languages }
    }
}

fn collect_languages(
    classes: &BTreeMap<Iri, OntologyClass>,
    properties: &BTreeMap<Iri, OntologyProperty>,
) -> Vec<String> {
    let tags: BTreeSet<String> = classes
        .values()
        .map(|c| &c.labels)
        .chain(properties.values().map(|p| &p.labels))
        .flat_map(|b| b.iter().map(|(tag, _)| tag.to_owned()))
        .filter(|tag| !tag.is_empty())
        .collect();
    tags.into_iter().collect()
}

fn static_iri(s: &str) -> Iri {
    Iri::new(s).expect("static IRI")
}

fn is_datatype_iri(iri: &Iri) -> bool {
    let s = iri.as_str();
    s.starts_with(vocab::XSD) || s == vocab::RDFS_LITERAL || s == vocab::RDF_LANG_STRING || s.starts_with(vocab::RDF) && s.ends_with("PlainLiteral")
}

/// Reads classes, properties, hierarchy and annotations from an ontology graph.
pub fn load_ontology(graph: &Graph) -> Result<Ontology, OntologyError> {
    let rdf_type = static_iri(vocab::RDF_TYPE);
    let subclass_of = static_iri(vocab::RDFS_SUBCLASS_OF);
    let domain = static_iri(vocab::RDFS_DOMAIN);
    let range = static_iri(vocab::RDFS_RANGE);
    let icon = static_iri(vocab::VIZ_ICON);

    let declared = |class: &str| -> BTreeSet<Iri> {
        graph
            .subjects_with(&rdf_type, &Term::Iri(static_iri(class)))
            .filter_map(|n| n.as_iri().cloned())
            .collect()
    };
    let class_iris = declared(vocab::OWL_CLASS);
    let object_iris = declared(vocab::OWL_OBJECT_PROPERTY);
    let datatype_iris = declared(vocab::OWL_DATATYPE_PROPERTY);

    if let Some(iri) = class_iris
        .intersection(&object_iris)
        .chain(class_iris.intersection(&datatype_iris))
        .chain(object_iris.intersection(&datatype_iris))
        .min()
    {
        return Err(OntologyError::DuplicateDeclaration { iri: iri.clone() });
    }

    check_hierarchy(graph, &subclass_of)?;

    let first_iri = |node: &Node, predicate: &Iri| -> Option<Iri> {
        graph.objects(node, predicate).find_map(|t| t.as_iri().cloned())
    };

    let mut classes = BTreeMap::new();
    for iri in class_iris {
        let node = Node::Iri(iri.clone());
        let parents = graph.objects(&node, &subclass_of).filter_map(|t| t.as_iri().cloned()).collect();
        let icon_key = graph
            .objects(&node, &icon)
            .find_map(|t| t.as_literal().map(|l| l.lexical().to_owned()))
            .filter(|k| !k.is_empty());
        classes.insert(
            iri.clone(),
            OntologyClass { labels: LabelBundle::from_graph(graph, &node), iri, parents, icon_key },
        );
    }

    let mut properties = BTreeMap::new();
    for (iris, kind) in [(object_iris, PropertyKind::Object), (datatype_iris, PropertyKind::Datatype)] {
        for iri in iris {
            let node = Node::Iri(iri.clone());
            let range = first_iri(&node, &range);
            if kind == PropertyKind::Datatype {
                if let Some(r) = &range {
                    if !is_datatype_iri(r) {
                        return Err(OntologyError::InvalidRange { property: iri, range: r.clone() });
                    }
                }
            }
            properties.insert(
                iri.clone(),
                OntologyProperty {
                    labels: LabelBundle::from_graph(graph, &node),
                    domain: first_iri(&node, &domain),
                    range,
                    kind,
                    iri,
                },
            );
        }
    }

    let supported_languages = collect_languages(&classes, &properties);
    Ok(Ontology { classes, properties, supported_languages })
}

/// Rejects any cycle among `rdfs:subClassOf` edges between IRIs.
fn check_hierarchy(graph: &Graph, subclass_of: &Iri) -> Result<(), OntologyError> {
    let mut edges: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    for t in graph.matching(None, Some(subclass_of), None) {
        if let (Node::Iri(child), Term::Iri(parent)) = (t.subject, t.object) {
            edges.entry(child).or_default().push(parent);
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Open,
        Done,
    }
    let mut state: BTreeMap<Iri, State> = BTreeMap::new();
    for start in edges.keys() {
        if state.contains_key(start) {
            continue;
        }
        // Iterative DFS; `path` mirrors the stack of open nodes.
        let mut path: Vec<Iri> = vec![start.clone()];
        let mut stack: Vec<(Iri, usize)> = vec![(start.clone(), 0)];
        state.insert(start.clone(), State::Open);
        while let Some((node, next)) = stack.last_mut() {
            let children = edges.get(node).map(Vec::as_slice).unwrap_or_default();
            if *next < children.len() {
                let child = children[*next].clone();
                *next += 1;
                match state.get(&child) {
                    Some(State::Open) => {
                        let at = path.iter().position(|p| *p == child).unwrap_or(0);
                        let mut iris: Vec<Iri> = path[at..].to_vec();
                        iris.sort();
                        return Err(OntologyError::CyclicHierarchy { iris });
                    }
                    Some(State::Done) => {}
                    None => {
                        state.insert(child.clone(), State::Open);
                        path.push(child.clone());
                        stack.push((child, 0));
                    }
                }
            } else {
                state.insert(node.clone(), State::Done);
                stack.pop();
                path.pop();
            }
        }
    }
    Ok(())
}

/// Display label of an entity in `lang`.
///
/// Fallback chain: instance label in `lang`, ontology label in `lang`,
/// instance label in English, ontology label in English, any label (smallest
/// tag first, instance labels before ontology labels), then the IRI's local
/// name. Never empty.
pub fn resolve_label(ontology: &Ontology, entity: &Iri, lang: &str, instance: Option<&LabelBundle>) -> String {
    lookup_label(ontology.labels(entity), lang, instance).unwrap_or_else(|| local_name(entity).to_owned())
}

/// Like [`resolve_label`] but for any node; blank nodes without labels fall
/// back to their `_:label` token.
pub fn resolve_node_label(ontology: &Ontology, node: &Node, lang: &str, instance: Option<&LabelBundle>) -> String {
    match node {
        Node::Iri(iri) => resolve_label(ontology, iri, lang, instance),
        Node::Blank(b) => lookup_label(None, lang, instance).unwrap_or_else(|| b.to_string()),
    }
}

fn lookup_label(declared: Option<&LabelBundle>, lang: &str, instance: Option<&LabelBundle>) -> Option<String> {
    let lang = lang.to_lowercase();
    let by_lang = |tag: &str| {
        instance
            .and_then(|b| b.get(tag))
            .or_else(|| declared.and_then(|b| b.get(tag)))
    };
    by_lang(&lang)
        .or_else(|| by_lang("en"))
        .or_else(|| instance.and_then(LabelBundle::first))
        .or_else(|| declared.and_then(LabelBundle::first))
        .map(str::to_owned)
}
