//! Canonical N-Triples writer.

use std::collections::HashMap;
use std::fmt::Write;

use super::graph::Graph;
use super::term::{BlankNode, Iri, Literal, Node, Term, Triple};
use crate::vocab;

/// Writes the graph as N-Triples, one statement per line, lines sorted.
///
/// Blank nodes are renamed `_:b0, _:b1, …` in the order they first appear
/// when the statements are sorted with blank labels masked out, so graphs
/// that differ only in blank-node labels usually serialize identically.
/// Equal graphs always do.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut triples: Vec<Triple> = graph.iter().collect();
    triples.sort_by_cached_key(|t| (render(t, &mut |_| String::new()), t.clone()));

    let mut names: HashMap<BlankNode, String> = HashMap::new();
    let mut lines: Vec<String> = triples
        .iter()
        .map(|t| {
            render(t, &mut |b: &BlankNode| {
                let next = names.len();
                names.entry(b.clone()).or_insert_with(|| format!("b{next}")).clone()
            })
        })
        .collect();
    lines.sort();

    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn render(t: &Triple, blank: &mut dyn FnMut(&BlankNode) -> String) -> String {
    let mut line = String::new();
    match &t.subject {
        Node::Iri(iri) => write_iri(&mut line, iri),
        Node::Blank(b) => write_blank(&mut line, &blank(b)),
    }
    line.push(' ');
    write_iri(&mut line, &t.predicate);
    line.push(' ');
    match &t.object {
        Term::Iri(iri) => write_iri(&mut line, iri),
        Term::Blank(b) => write_blank(&mut line, &blank(b)),
        Term::Literal(lit) => write_literal(&mut line, lit),
    }
    line.push_str(" .");
    line
}

fn write_blank(out: &mut String, label: &str) {
    out.push_str("_:");
    out.push_str(label);
}

fn write_iri(out: &mut String, iri: &Iri) {
    out.push('<');
    for c in iri.as_str().chars() {
        if c <= ' ' || "<>\"{}|^`\\".contains(c) {
            let _ = write!(out, "\\u{:04X}", c as u32);
        } else {
            out.push(c);
        }
    }
    out.push('>');
}

fn write_literal(out: &mut String, lit: &Literal) {
    out.push('"');
    for c in lit.lexical().chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    if let Some(lang) = lit.language() {
        out.push('@');
        out.push_str(lang);
    } else if lit.datatype().as_str() != vocab::XSD_STRING {
        out.push_str("^^");
        write_iri(out, lit.datatype());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_rdf, RdfFormat};

    #[test]
    fn empty_graph_serializes_to_nothing() {
        assert_eq!(serialize_ntriples(&Graph::new()), "");
    }

    #[test]
    fn single_triple() {
        let g = parse_rdf("<a:s> <a:p> <a:o> .", RdfFormat::NTriples).unwrap();
        assert_eq!(serialize_ntriples(&g), "<a:s> <a:p> <a:o> .\n");
    }

    #[test]
    fn literal_forms_and_escapes() {
        let g = parse_rdf(
            "<a:s> <a:p> \"q\\\"b\\\\n\\nr\" .\n<a:s> <a:p> \"x\"@fr .\n<a:s> <a:p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n",
            RdfFormat::NTriples,
        )
        .unwrap();
        assert_eq!(
            serialize_ntriples(&g),
            "<a:s> <a:p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n\
             <a:s> <a:p> \"q\\\"b\\\\n\\nr\" .\n\
             <a:s> <a:p> \"x\"@fr .\n"
        );
    }

    #[test]
    fn blank_nodes_renamed_canonically() {
        let a = parse_rdf("_:zz <a:p> <a:o> . <a:s> <a:q> _:yy .", RdfFormat::Turtle).unwrap();
        let b = parse_rdf("<a:s> <a:q> _:k . _:m <a:p> <a:o> .", RdfFormat::Turtle).unwrap();
        assert_eq!(serialize_ntriples(&a), serialize_ntriples(&b));
        assert_eq!(serialize_ntriples(&a), "<a:s> <a:q> _:b0 .\n_:b1 <a:p> <a:o> .\n");
    }
}
