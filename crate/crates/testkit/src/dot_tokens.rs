//! A minimal tokenizer and parser for the DOT subset the emitter produces.
//!
//! Accepts exactly:
//!
//! ```text
//! digraph ID {
//!   ID = "value";
//!   node [a="v", ...];
//!   edge [a="v", ...];
//!   "id" [a="v", ...];
//!   "id" -> "id" [a="v", ...];
//! }
//! ```
//!
//! Every attribute value must be a quoted string, braces must balance, and
//! every edge endpoint must be declared as a node statement beforehand.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Id(String),
    Quoted(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                out.push(Token::Punct(match c {
                    '{' => "{",
                    '}' => "}",
                    '[' => "[",
                    ']' => "]",
                    ';' => ";",
                    ',' => ",",
                    _ => "=",
                }));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token::Punct("->"));
                i += 2;
            }
            '"' => {
                i += 1;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                Some('n') => s.push('\n'),
                                Some(other) => return Err(format!("unexpected escape \\{other}")),
                                None => return Err("dangling backslash".into()),
                            }
                            i += 2;
                        }
                        Some('\n') => return Err("raw newline inside string".into()),
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Token::Quoted(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Id(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

pub type Attrs = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    pub graph_attrs: Attrs,
    pub node_defaults: Attrs,
    pub edge_defaults: Attrs,
    pub nodes: Vec<(String, Attrs)>,
    pub edges: Vec<(String, String, Attrs)>,
}

impl DotGraph {
    /// Copy with the values of the named attributes blanked.
    pub fn without_values(&self, names: &[&str]) -> DotGraph {
        let strip = |attrs: &Attrs| -> Attrs {
            attrs
                .iter()
                .map(|(k, v)| (k.clone(), if names.contains(&k.as_str()) { String::new() } else { v.clone() }))
                .collect()
        };
        DotGraph {
            name: self.name.clone(),
            graph_attrs: strip(&self.graph_attrs),
            node_defaults: strip(&self.node_defaults),
            edge_defaults: strip(&self.edge_defaults),
            nodes: self.nodes.iter().map(|(id, a)| (id.clone(), strip(a))).collect(),
            edges: self.edges.iter().map(|(s, t, a)| (s.clone(), t.clone(), strip(a))).collect(),
        }
    }

    pub fn node_attr(&self, id: &str, name: &str) -> Option<&str> {
        self.nodes
            .iter()
            .find(|(n, _)| n == id)
            .and_then(|(_, attrs)| attrs.iter().find(|(k, _)| k == name))
            .map(|(_, v)| v.as_str())
    }
}

struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn punct(&mut self, p: &str) -> Result<(), String> {
        match self.next() {
            Some(Token::Punct(q)) if q == p => Ok(()),
            other => Err(format!("expected {p:?}, found {other:?}")),
        }
    }

    fn quoted(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Token::Quoted(s)) => Ok(s),
            other => Err(format!("expected quoted string, found {other:?}")),
        }
    }

    fn attrs(&mut self) -> Result<Attrs, String> {
        self.punct("[")?;
        let mut out = Vec::new();
        if self.peek() == Some(&Token::Punct("]")) {
            self.next();
            return Ok(out);
        }
        loop {
            let name = match self.next() {
                Some(Token::Id(id)) => id,
                other => return Err(format!("expected attribute name, found {other:?}")),
            };
            self.punct("=")?;
            out.push((name, self.quoted()?));
            match self.next() {
                Some(Token::Punct(",")) => continue,
                Some(Token::Punct("]")) => return Ok(out),
                other => return Err(format!("expected ',' or ']', found {other:?}")),
            }
        }
    }
}

/// Parses and validates emitted DOT.
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let mut c = Cursor { tokens: tokenize(text)?, pos: 0 };
    match c.next() {
        Some(Token::Id(kw)) if kw == "digraph" => {}
        other => return Err(format!("expected 'digraph', found {other:?}")),
    }
    let name = match c.next() {
        Some(Token::Id(id)) => id,
        other => return Err(format!("expected graph name, found {other:?}")),
    };
    c.punct("{")?;
    let mut g = DotGraph {
        name,
        graph_attrs: vec![],
        node_defaults: vec![],
        edge_defaults: vec![],
        nodes: vec![],
        edges: vec![],
    };
    let mut declared = BTreeSet::new();
    loop {
        match c.next() {
            Some(Token::Punct("}")) => break,
            Some(Token::Id(kw)) if kw == "node" || kw == "edge" => {
                let attrs = c.attrs()?;
                if kw == "node" {
                    g.node_defaults = attrs;
                } else {
                    g.edge_defaults = attrs;
                }
                c.punct(";")?;
            }
            Some(Token::Id(name)) => {
                c.punct("=")?;
                let value = c.quoted()?;
                g.graph_attrs.push((name, value));
                c.punct(";")?;
            }
            Some(Token::Quoted(id)) => {
                if c.peek() == Some(&Token::Punct("->")) {
                    c.next();
                    let target = c.quoted()?;
                    for end in [&id, &target] {
                        if !declared.contains(end) {
                            return Err(format!("edge endpoint {end:?} not declared"));
                        }
                    }
                    let attrs = c.attrs()?;
                    g.edges.push((id, target, attrs));
                } else {
                    if !declared.insert(id.clone()) {
                        return Err(format!("node {id:?} declared twice"));
                    }
                    let attrs = c.attrs()?;
                    g.nodes.push((id, attrs));
                }
                c.punct(";")?;
            }
            other => return Err(format!("unexpected token {other:?}")),
        }
    }
    if let Some(t) = c.next() {
        return Err(format!("trailing token {t:?}"));
    }
    Ok(g)
}
