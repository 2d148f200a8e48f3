//! JSON bodies. Field order is fixed by declaration, so identical inputs
//! serialize to identical bytes.

use kgatlas_core::{ConceptFacet, IndividualFacet, Node, TableRow, TextSpan, ViewGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    pub id: String,
    pub triples: usize,
    pub documents: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Concept {
    pub class_iri: String,
    pub label: String,
    pub instance_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Individual {
    pub id: String,
    pub label: String,
    pub class_iri: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facets {
    pub concepts: Vec<Concept>,
    pub individuals: Vec<Individual>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tooltip {
    pub property: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub doc: String,
    pub begin: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ViewNode {
    pub id: String,
    pub label: String,
    pub class_iri: Option<String>,
    pub class_label: String,
    pub icon_key: Option<String>,
    pub tooltip: Vec<Tooltip>,
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewEdge {
    pub source: String,
    pub target: String,
    pub property: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct View {
    pub nodes: Vec<ViewNode>,
    pub edges: Vec<ViewEdge>,
    pub lang: String,
    pub depth: u32,
    pub seeds: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub subject: String,
    pub predicate: String,
    pub object: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub node: String,
    pub begin: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc: String,
    pub text: String,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodesAtOffset {
    pub doc: String,
    pub offset: usize,
    pub nodes: Vec<String>,
}

impl From<&ConceptFacet> for Concept {
    fn from(c: &ConceptFacet) -> Self {
        Concept { class_iri: c.class_iri.as_str().to_owned(), label: c.label.clone(), instance_count: c.instance_count }
    }
}

impl From<&IndividualFacet> for Individual {
    fn from(i: &IndividualFacet) -> Self {
        Individual {
            id: i.id.key(),
            label: i.label.clone(),
            class_iri: i.class_iri.as_ref().map(|c| c.as_str().to_owned()),
        }
    }
}

impl From<&TextSpan> for Span {
    fn from(s: &TextSpan) -> Self {
        Span { doc: s.doc_id.clone(), begin: s.begin, end: s.end }
    }
}

impl From<&ViewGraph> for View {
    fn from(v: &ViewGraph) -> Self {
        View {
            nodes: v
                .nodes
                .iter()
                .map(|n| ViewNode {
                    id: n.id.key(),
                    label: n.label.clone(),
                    class_iri: n.class_iri.as_ref().map(|c| c.as_str().to_owned()),
                    class_label: n.class_label.clone(),
                    icon_key: n.icon_key.clone(),
                    tooltip: n.tooltip.iter().map(|t| Tooltip { property: t.property.clone(), value: t.value.clone() }).collect(),
                    spans: n.spans.iter().map(Span::from).collect(),
                })
                .collect(),
            edges: v
                .edges
                .iter()
                .map(|e| ViewEdge {
                    source: e.source.key(),
                    target: e.target.key(),
                    property: e.property.as_str().to_owned(),
                    label: e.label.clone(),
                })
                .collect(),
            lang: v.lang.clone(),
            depth: v.request.depth,
            seeds: v.request.seeds.iter().map(Node::key).collect(),
        }
    }
}

impl From<&TableRow> for Row {
    fn from(r: &TableRow) -> Self {
        Row { subject: r.subject.clone(), predicate: r.predicate.clone(), object: r.object.clone() }
    }
}
