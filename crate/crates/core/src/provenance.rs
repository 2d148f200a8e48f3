//! Source documents and node → text-span links.
//!
//! Spans arrive in the RDF itself:
//!
//! ```text
//! ?node viz:sourceSpan ?s .
//! ?s viz:doc "ex1" ; viz:begin 52 ; viz:end 60 .
//! ```
//!
//! Offsets count Unicode code points, begin inclusive, end exclusive.

use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::{Graph, Iri, Node, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TextSpan {
    pub doc_id: String,
    pub begin: usize,
    pub end: usize,
}

impl TextSpan {
    pub fn contains(&self, offset: usize) -> bool {
        self.begin <= offset && offset < self.end
    }
}

impl std::fmt::Display for TextSpan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}..{})", self.doc_id, self.begin, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProvenanceError {
    #[error("span {span} of {node} is outside its document")]
    SpanOutOfBounds { node: Node, span: TextSpan },
    #[error("unknown document {doc_id:?}")]
    UnknownDocument { doc_id: String },
    #[error("malformed span annotation on {node}: {message}")]
    MalformedSpan { node: Node, message: String },
}

struct Document {
    text: String,
    length: usize,
}

/// Per-document interval index: spans sorted by begin, with a running
/// maximum of end offsets so lookups can stop scanning early.
#[derive(Default)]
struct SpanIndex {
    entries: Vec<(usize, usize, Node)>,
    max_end: Vec<usize>,
}

impl SpanIndex {
    fn build(mut entries: Vec<(usize, usize, Node)>) -> Self {
        entries.sort();
        let mut max_end = Vec::with_capacity(entries.len());
        let mut running = 0;
        for (_, end, _) in &entries {
            running = running.max(*end);
            max_end.push(running);
        }
        SpanIndex { entries, max_end }
    }

    fn at(&self, offset: usize) -> BTreeSet<&Node> {
        let upper = self.entries.partition_point(|(begin, _, _)| *begin <= offset);
        let mut out = BTreeSet::new();
        for i in (0..upper).rev() {
            if self.max_end[i] <= offset {
                break;
            }
            let (_, end, node) = &self.entries[i];
            if offset < *end {
                out.insert(node);
            }
        }
        out
    }
}

#[derive(Default)]
pub struct DocumentStore {
    docs: BTreeMap<String, Document>,
    spans_by_node: BTreeMap<Node, Vec<TextSpan>>,
    nodes_by_doc: BTreeMap<String, SpanIndex>,
}

impl std::fmt::Debug for DocumentStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DocumentStore")
            .field("documents", &self.docs.keys().collect::<Vec<_>>())
            .field("spans", &self.spans_by_node)
            .finish()
    }
}

impl DocumentStore {
    pub fn document(&self, doc_id: &str) -> Option<&str> {
        self.docs.get(doc_id).map(|d| d.text.as_str())
    }

    pub fn document_ids(&self) -> impl Iterator<Item = &str> {
        self.docs.keys().map(String::as_str)
    }

    /// The covered text of a span, or `None` if the document is unknown.
    pub fn span_text(&self, span: &TextSpan) -> Option<String> {
        let doc = self.docs.get(&span.doc_id)?;
        Some(doc.text.chars().skip(span.begin).take(span.end - span.begin).collect())
    }

    /// All spans of a node, sorted by document then begin.
    pub fn spans_for_node(&self, node: &Node) -> &[TextSpan] {
        self.spans_by_node.get(node).map(Vec::as_slice).unwrap_or_default()
    }

    /// Nodes whose span covers `offset` in `doc_id`, sorted.
    pub fn nodes_at_offset(&self, doc_id: &str, offset: usize) -> Result<Vec<Node>, ProvenanceError> {
        if !self.docs.contains_key(doc_id) {
            return Err(ProvenanceError::UnknownDocument { doc_id: doc_id.to_owned() });
        }
        Ok(self
            .nodes_by_doc
            .get(doc_id)
            .map(|index| index.at(offset).into_iter().cloned().collect())
            .unwrap_or_default())
    }

    /// Every (node, span) pair, sorted.
    pub fn links(&self) -> impl Iterator<Item = (&Node, &TextSpan)> {
        self.spans_by_node.iter().flat_map(|(n, spans)| spans.iter().map(move |s| (n, s)))
    }
}

fn single<'a>(graph: &'a Graph, node: &Node, predicate: &Iri, what: &str, owner: &Node) -> Result<&'a Term, ProvenanceError> {
    let mut objects = graph.objects(node, predicate);
    let first = objects.next().ok_or_else(|| ProvenanceError::MalformedSpan {
        node: owner.clone(),
        message: format!("missing {what}"),
    })?;
    if objects.next().is_some() {
        return Err(ProvenanceError::MalformedSpan { node: owner.clone(), message: format!("more than one {what}") });
    }
    Ok(first)
}

fn offset(term: &Term, what: &str, owner: &Node) -> Result<usize, ProvenanceError> {
    term.as_literal()
        .and_then(|l| l.lexical().trim_start_matches('+').parse::<usize>().ok())
        .ok_or_else(|| ProvenanceError::MalformedSpan {
            node: owner.clone(),
            message: format!("{what} is not a non-negative integer"),
        })
}

/// Reads span annotations from `graph` and validates them against `documents`.
pub fn load_provenance(graph: &Graph, documents: BTreeMap<String, String>) -> Result<DocumentStore, ProvenanceError> {
    let iri = |s: &str| Iri::new(s).expect("static IRI");
    let source_span = iri(vocab::VIZ_SOURCE_SPAN);
    let doc_p = iri(vocab::VIZ_DOC);
    let begin_p = iri(vocab::VIZ_BEGIN);
    let end_p = iri(vocab::VIZ_END);

    let docs: BTreeMap<String, Document> = documents
        .into_iter()
        .map(|(id, text)| {
            let length = text.chars().count();
            (id, Document { text, length })
        })
        .collect();

    let mut spans_by_node: BTreeMap<Node, Vec<TextSpan>> = BTreeMap::new();
    for t in graph.matching(None, Some(&source_span), None) {
        let node = t.subject;
        let Some(span_node) = t.object.as_node() else {
            return Err(ProvenanceError::MalformedSpan { node, message: "span must be a resource".into() });
        };
        let doc_id = single(graph, &span_node, &doc_p, "viz:doc", &node)?
            .as_literal()
            .map(|l| l.lexical().to_owned())
            .ok_or_else(|| ProvenanceError::MalformedSpan { node: node.clone(), message: "viz:doc must be a literal".into() })?;
        let begin = offset(single(graph, &span_node, &begin_p, "viz:begin", &node)?, "viz:begin", &node)?;
        let end = offset(single(graph, &span_node, &end_p, "viz:end", &node)?, "viz:end", &node)?;
        let Some(doc) = docs.get(&doc_id) else {
            return Err(ProvenanceError::UnknownDocument { doc_id });
        };
        let span = TextSpan { doc_id, begin, end };
        if begin >= end || end > doc.length {
            return Err(ProvenanceError::SpanOutOfBounds { node, span });
        }
        spans_by_node.entry(node).or_default().push(span);
    }

    let mut per_doc: BTreeMap<String, Vec<(usize, usize, Node)>> = BTreeMap::new();
    for (node, spans) in spans_by_node.iter_mut() {
        spans.sort();
        spans.dedup();
        for s in spans.iter() {
            per_doc.entry(s.doc_id.clone()).or_default().push((s.begin, s.end, node.clone()));
        }
    }
    let nodes_by_doc = per_doc.into_iter().map(|(id, entries)| (id, SpanIndex::build(entries))).collect();

    Ok(DocumentStore { docs, spans_by_node, nodes_by_doc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_rdf, RdfFormat};

    const SENTENCE: &str = "In September 2012, the US consulate in Benghazi was attacked by armed men.";

    fn graph(spans: &str) -> Graph {
        let doc = format!(
            "@prefix viz: <http://kg-atlas.dev/viz#> . @prefix ex: <http://ex.org/> .\n{spans}"
        );
        parse_rdf(&doc, RdfFormat::Turtle).unwrap()
    }

    fn docs() -> BTreeMap<String, String> {
        BTreeMap::from([("ex1".to_owned(), SENTENCE.to_owned())])
    }

    fn node(s: &str) -> Node {
        Node::Iri(Iri::new(s).unwrap())
    }

    #[test]
    fn no_spans_gives_empty_store() {
        let store = load_provenance(&Graph::new(), docs()).unwrap();
        assert_eq!(store.links().count(), 0);
        assert!(store.spans_for_node(&node("http://ex.org/x")).is_empty());
    }

    #[test]
    fn end_past_document_is_out_of_bounds() {
        let g = graph("ex:a viz:sourceSpan [ viz:doc \"ex1\" ; viz:begin 70 ; viz:end 75 ] .");
        assert!(matches!(load_provenance(&g, docs()), Err(ProvenanceError::SpanOutOfBounds { .. })));
        let empty = graph("ex:a viz:sourceSpan [ viz:doc \"ex1\" ; viz:begin 5 ; viz:end 5 ] .");
        assert!(matches!(load_provenance(&empty, docs()), Err(ProvenanceError::SpanOutOfBounds { .. })));
    }

    #[test]
    fn unknown_document_rejected() {
        let g = graph("ex:a viz:sourceSpan [ viz:doc \"nope\" ; viz:begin 0 ; viz:end 1 ] .");
        assert_eq!(
            load_provenance(&g, docs()).unwrap_err(),
            ProvenanceError::UnknownDocument { doc_id: "nope".into() }
        );
    }

    #[test]
    fn malformed_annotations() {
        for body in [
            "ex:a viz:sourceSpan [ viz:begin 0 ; viz:end 1 ] .",
            "ex:a viz:sourceSpan [ viz:doc \"ex1\" ; viz:begin \"x\" ; viz:end 1 ] .",
            "ex:a viz:sourceSpan [ viz:doc \"ex1\" ; viz:begin -1 ; viz:end 1 ] .",
            "ex:a viz:sourceSpan \"ex1:0:1\" .",
        ] {
            assert!(matches!(load_provenance(&graph(body), docs()), Err(ProvenanceError::MalformedSpan { .. })), "{body}");
        }
    }

    #[test]
    fn spans_sorted_and_reverse_lookup() {
        let g = graph(
            "ex:a viz:sourceSpan [ viz:doc \"ex1\" ; viz:begin 52 ; viz:end 60 ] , \
                                 [ viz:doc \"ex1\" ; viz:begin 3 ; viz:end 17 ] .\n\
             ex:b viz:sourceSpan [ viz:doc \"ex1\" ; viz:begin 0 ; viz:end 74 ] .",
        );
        let store = load_provenance(&g, docs()).unwrap();
        let spans = store.spans_for_node(&node("http://ex.org/a"));
        assert_eq!(spans.iter().map(|s| s.begin).collect::<Vec<_>>(), vec![3, 52]);
        assert_eq!(store.span_text(&spans[1]).unwrap(), "attacked");
        assert_eq!(
            store.nodes_at_offset("ex1", 56).unwrap(),
            vec![node("http://ex.org/a"), node("http://ex.org/b")]
        );
        assert_eq!(store.nodes_at_offset("ex1", 30).unwrap(), vec![node("http://ex.org/b")]);
        assert!(store.nodes_at_offset("ex1", 74).unwrap().is_empty());
        assert!(matches!(store.nodes_at_offset("zz", 0), Err(ProvenanceError::UnknownDocument { .. })));
    }

    #[test]
    fn offsets_are_code_points() {
        let docs = BTreeMap::from([("ar".to_owned(), "هاجم رجال القنصلية".to_owned())]);
        let g = graph("ex:a viz:sourceSpan [ viz:doc \"ar\" ; viz:begin 0 ; viz:end 4 ] .");
        let store = load_provenance(&g, docs).unwrap();
        assert_eq!(store.span_text(&store.spans_for_node(&node("http://ex.org/a"))[0]).unwrap(), "هاجم");
    }
}
