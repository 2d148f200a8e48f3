//! DOT emission for view graphs.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use crate::facet::{ViewGraph, ViewNode};
use crate::rdf::local_name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Hierarchical,
    Radial,
    Circular,
}

impl Layout {
    pub const ALL: [Layout; 3] = [Layout::Hierarchical, Layout::Radial, Layout::Circular];

    pub fn as_str(self) -> &'static str {
        match self {
            Layout::Hierarchical => "hierarchical",
            Layout::Radial => "radial",
            Layout::Circular => "circular",
        }
    }
}

impl std::str::FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hierarchical" => Ok(Layout::Hierarchical),
            "radial" => Ok(Layout::Radial),
            "circular" => Ok(Layout::Circular),
            other => Err(format!("unknown layout {other:?}")),
        }
    }
}

/// The layout program that implements `layout`.
pub fn layout_engine_for(layout: Layout) -> &'static str {
    match layout {
        Layout::Hierarchical => "dot",
        Layout::Radial => "twopi",
        Layout::Circular => "circo",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotDocument {
    pub text: String,
    /// Layout program to run the text through: `dot`, `twopi` or `circo`.
    pub engine: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Prefix for node `URL` attributes; the percent-encoded node id is appended.
    pub hyperlink_base: Option<String>,
    pub include_tooltips: bool,
    /// Directory searched for `<iconKey>.svg`, `<iconKey>.png` or `<iconKey>`.
    pub icon_dir: Option<PathBuf>,
}

impl DotOptions {
    pub fn with_tooltips() -> Self {
        DotOptions { include_tooltips: true, ..Self::default() }
    }
}

/// Visual defaults. Everything the renderer is told about fonts, colours and
/// shapes comes from here.
pub struct Theme {
    pub font_name: &'static str,
    pub node_font_size: &'static str,
    pub edge_font_size: &'static str,
    pub edge_color: &'static str,
    /// Shape per class local name.
    pub shapes: &'static [(&'static str, &'static str)],
    pub default_shape: &'static str,
}

pub const THEME: Theme = Theme {
    font_name: "Helvetica",
    node_font_size: "11",
    edge_font_size: "9",
    edge_color: "#555555",
    shapes: &[
        ("Person", "ellipse"),
        ("Location", "house"),
        ("Organization", "box"),
        ("ViolentAct", "octagon"),
        ("Date", "note"),
    ],
    default_shape: "ellipse",
};

/// Escapes text for a DOT double-quoted string.
pub fn escape_dot(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out
}

const URL_COMPONENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'_').remove(b'.').remove(b'~');

fn shape_for(node: &ViewNode) -> &'static str {
    node.class_iri
        .as_ref()
        .and_then(|c| THEME.shapes.iter().find(|(name, _)| *name == local_name(c)))
        .map_or(THEME.default_shape, |(_, shape)| shape)
}

fn icon_path(dir: &Path, key: &str) -> Option<PathBuf> {
    if key.contains(['/', '\\']) || key.starts_with('.') {
        return None;
    }
    [format!("{key}.svg"), format!("{key}.png"), key.to_owned()]
        .into_iter()
        .map(|name| dir.join(name))
        .find(|p| p.is_file())
}

fn attr(out: &mut String, first: &mut bool, name: &str, value: &str) {
    if !*first {
        out.push_str(", ");
    }
    *first = false;
    let _ = write!(out, "{name}=\"{}\"", escape_dot(value));
}

/// Renders a view as a `digraph`. Equal inputs give byte-identical text.
pub fn emit_dot(view: &ViewGraph, layout: Layout, options: &DotOptions) -> DotDocument {
    let engine = layout_engine_for(layout);
    let mut out = String::from("digraph G {\n");
    let _ = writeln!(out, "  layout=\"{engine}\";");
    if !view.nodes.is_empty() {
        let _ = writeln!(
            out,
            "  node [fontname=\"{}\", fontsize=\"{}\"];",
            THEME.font_name, THEME.node_font_size
        );
        let _ = writeln!(
            out,
            "  edge [fontname=\"{}\", fontsize=\"{}\", color=\"{}\"];",
            THEME.font_name, THEME.edge_font_size, THEME.edge_color
        );
    }

    for node in &view.nodes {
        let _ = write!(out, "  \"{}\" [", escape_dot(&node.id.key()));
        let mut first = true;
        let caption = if node.class_label.is_empty() {
            node.label.clone()
        } else {
            format!("{}\n({})", node.label, node.class_label)
        };
        attr(&mut out, &mut first, "label", &caption);
        let icon = node
            .icon_key
            .as_deref()
            .zip(options.icon_dir.as_deref())
            .and_then(|(key, dir)| icon_path(dir, key));
        match icon {
            Some(path) => {
                attr(&mut out, &mut first, "shape", "none");
                attr(&mut out, &mut first, "image", &path.to_string_lossy());
                attr(&mut out, &mut first, "labelloc", "b");
            }
            None => attr(&mut out, &mut first, "shape", shape_for(node)),
        }
        if options.include_tooltips && !node.tooltip.is_empty() {
            let lines: Vec<String> = node.tooltip.iter().map(|e| format!("{}: {}", e.property, e.value)).collect();
            attr(&mut out, &mut first, "tooltip", &lines.join("\n"));
        }
        if let Some(base) = &options.hyperlink_base {
            let url = format!("{base}{}", utf8_percent_encode(&node.id.key(), URL_COMPONENT));
            attr(&mut out, &mut first, "URL", &url);
        }
        out.push_str("];\n");
    }

    for edge in &view.edges {
        let _ = write!(
            out,
            "  \"{}\" -> \"{}\" [",
            escape_dot(&edge.source.key()),
            escape_dot(&edge.target.key())
        );
        let mut first = true;
        attr(&mut out, &mut first, "label", &edge.label);
        out.push_str("];\n");
    }
    out.push_str("}\n");
    DotDocument { text: out, engine }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facet::{SelectionMode, SubgraphRequest, TooltipEntry, ViewEdge};
    use crate::rdf::{Iri, Node};

    fn node(id: &str, class: Option<&str>) -> ViewNode {
        ViewNode {
            id: Node::Iri(Iri::new(id).unwrap()),
            label: "man".into(),
            class_iri: class.map(|c| Iri::new(c).unwrap()),
            class_label: class.map(|_| "Person".to_owned()).unwrap_or_default(),
            icon_key: Some("person".into()),
            tooltip: vec![TooltipEntry {
                property: "attribute".into(),
                value: "armed \"x\"".into(),
                predicate: Iri::new("a:attr").unwrap(),
            }],
            spans: vec![],
        }
    }

    fn view(nodes: Vec<ViewNode>, edges: Vec<ViewEdge>) -> ViewGraph {
        ViewGraph { nodes, edges, lang: "en".into(), request: SubgraphRequest::new(SelectionMode::Individual, []) }
    }

    #[test]
    fn engines() {
        assert_eq!(layout_engine_for(Layout::Hierarchical), "dot");
        assert_eq!(layout_engine_for(Layout::Radial), "twopi");
        assert_eq!(layout_engine_for(Layout::Circular), "circo");
    }

    #[test]
    fn escaping() {
        assert_eq!(escape_dot("He said \"hi\""), "He said \\\"hi\\\"");
        assert_eq!(escape_dot("暴力行为"), "暴力行为");
        assert_eq!(escape_dot(""), "");
        assert_eq!(escape_dot("a\\b\nc"), "a\\\\b\\nc");
    }

    #[test]
    fn empty_view_frame() {
        let doc = emit_dot(&view(vec![], vec![]), Layout::Hierarchical, &DotOptions::with_tooltips());
        assert_eq!(doc.text, "digraph G {\n  layout=\"dot\";\n}\n");
        assert_eq!(doc.engine, "dot");
    }

    #[test]
    fn node_and_edge_statements() {
        let a = node("http://ex.org/d#man1", Some("http://ex.org/o#Person"));
        let mut b = node("http://ex.org/d#x", None);
        b.tooltip.clear();
        let e = ViewEdge {
            source: b.id.clone(),
            target: a.id.clone(),
            property: Iri::new("a:p").unwrap(),
            label: "has agent".into(),
        };
        let options = DotOptions {
            hyperlink_base: Some("/node?id=".into()),
            include_tooltips: true,
            icon_dir: None,
        };
        let doc = emit_dot(&view(vec![a, b], vec![e]), Layout::Radial, &options);
        assert_eq!(
            doc.text,
            "digraph G {\n  layout=\"twopi\";\n  node [fontname=\"Helvetica\", fontsize=\"11\"];\n  \
             edge [fontname=\"Helvetica\", fontsize=\"9\", color=\"#555555\"];\n  \
             \"http://ex.org/d#man1\" [label=\"man\\n(Person)\", shape=\"ellipse\", tooltip=\"attribute: armed \\\"x\\\"\", URL=\"/node?id=http%3A%2F%2Fex.org%2Fd%23man1\"];\n  \
             \"http://ex.org/d#x\" [label=\"man\", shape=\"ellipse\", URL=\"/node?id=http%3A%2F%2Fex.org%2Fd%23x\"];\n  \
             \"http://ex.org/d#x\" -> \"http://ex.org/d#man1\" [label=\"has agent\"];\n}\n"
        );
    }

    #[test]
    fn icon_used_only_when_asset_exists() {
        let dir = tempfile::tempdir().unwrap();
        let n = node("http://ex.org/d#man1", Some("http://ex.org/o#Person"));
        let options = DotOptions { icon_dir: Some(dir.path().to_owned()), ..DotOptions::default() };
        let without = emit_dot(&view(vec![n.clone()], vec![]), Layout::Hierarchical, &options);
        assert!(without.text.contains("shape=\"ellipse\""));
        std::fs::write(dir.path().join("person.svg"), "<svg/>").unwrap();
        let with = emit_dot(&view(vec![n], vec![]), Layout::Hierarchical, &options);
        assert!(with.text.contains("shape=\"none\", image=\""));
        assert!(with.text.contains("person.svg"));
    }

    #[test]
    fn class_shapes() {
        let mut n = node("http://ex.org/d#b", Some("http://ex.org/o#Location"));
        assert_eq!(shape_for(&n), "house");
        n.class_iri = Some(Iri::new("http://ex.org/o#Date").unwrap());
        assert_eq!(shape_for(&n), "note");
        n.class_iri = Some(Iri::new("http://ex.org/o#Meeting").unwrap());
        assert_eq!(shape_for(&n), "ellipse");
    }
}
