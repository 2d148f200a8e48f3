//! Turtle (subset) and N-Triples reader.
//!
//! Supported Turtle: `@prefix`/`@base` and their SPARQL-style forms, the `a`
//! keyword, predicate and object lists, blank-node property lists, string,
//! numeric and boolean literals with `@lang` or `^^datatype`. Collections,
//! TriG and quoted triples are rejected with a syntax error.
//!
//! Blank-node labels are scoped to one document and relabelled `b0, b1, …`
//! in order of first occurrence.

use std::collections::{BTreeMap, HashMap};

use super::graph::Graph;
use super::iri::resolve_iri;
use super::term::{has_scheme, BlankNode, Iri, Literal, Node, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RdfFormat {
    Turtle,
    NTriples,
}

impl std::str::FromStr for RdfFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "turtle" | "ttl" => Ok(RdfFormat::Turtle),
            "ntriples" | "n-triples" | "nt" => Ok(RdfFormat::NTriples),
            other => Err(format!("unknown RDF format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown prefix {prefix:?} at line {line}, column {column}")]
    UnknownPrefix { prefix: String, line: usize, column: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::UnknownPrefix { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::UnknownPrefix { column, .. } => *column,
        }
    }
}

/// A parsed document: its triples plus the prefix table in force at the end.
#[derive(Debug, Clone, Default)]
pub struct ParsedDocument {
    pub graph: Graph,
    pub prefixes: BTreeMap<String, Iri>,
    pub base: Option<Iri>,
}

impl ParsedDocument {
    /// Expands `prefix:local` using the document's prefixes. Returns `None`
    /// when the text is not a prefixed name with a declared prefix.
    pub fn expand_curie(&self, text: &str) -> Option<Iri> {
        let (prefix, local) = text.split_once(':')?;
        if local.starts_with("//") {
            return None;
        }
        let ns = self.prefixes.get(prefix)?;
        Iri::new(format!("{}{}", ns.as_str(), local)).ok()
    }

    /// Reads user-supplied node text: `_:label`, a prefixed name declared by
    /// this document, or an absolute IRI.
    pub fn resolve_node(&self, text: &str) -> Option<Node> {
        if text.starts_with("_:") {
            return Node::from_key(text).ok();
        }
        match self.expand_curie(text) {
            Some(iri) => Some(Node::Iri(iri)),
            None => Iri::new(text).ok().map(Node::Iri),
        }
    }
}

/// Parses a complete document into a graph.
pub fn parse_rdf(input: &str, format: RdfFormat) -> Result<Graph, ParseError> {
    parse_document(input, format, None).map(|doc| doc.graph)
}

/// Parses raw bytes, rejecting invalid UTF-8 with a positioned syntax error.
pub fn parse_rdf_bytes(input: &[u8], format: RdfFormat, base: Option<&Iri>) -> Result<ParsedDocument, ParseError> {
    match std::str::from_utf8(input) {
        Ok(text) => parse_document(text, format, base),
        Err(err) => {
            let valid = std::str::from_utf8(&input[..err.valid_up_to()]).unwrap_or_default();
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(ParseError::Syntax { line, column, message: "invalid UTF-8 sequence".into() })
        }
    }
}

/// Parses a document, resolving relative IRIs against `base` (Turtle only).
pub fn parse_document(input: &str, format: RdfFormat, base: Option<&Iri>) -> Result<ParsedDocument, ParseError> {
    let input = input.strip_prefix('\u{feff}').unwrap_or(input);
    let mut parser = Parser {
        chars: input.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        format,
        base: base.map(|b| b.as_str().to_owned()),
        prefixes: BTreeMap::new(),
        bnodes: HashMap::new(),
        next_bnode: 0,
        graph: Graph::new(),
    };
    match format {
        RdfFormat::Turtle => parser.turtle_document()?,
        RdfFormat::NTriples => parser.ntriples_document()?,
    }
    Ok(ParsedDocument {
        graph: parser.graph,
        prefixes: parser.prefixes.into_iter().map(|(k, v)| (k, Iri::from_trusted(v))).collect(),
        base: parser.base.map(Iri::from_trusted),
    })
}

#[derive(Clone, Copy)]
struct Mark {
    line: usize,
    column: usize,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    format: RdfFormat,
    base: Option<String>,
    prefixes: BTreeMap<String, String>,
    bnodes: HashMap<String, BlankNode>,
    next_bnode: usize,
    graph: Graph,
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_alphabetic() && !c.is_ascii_digit()
        || matches!(c, '\u{00C0}'..='\u{00D6}' | '\u{00D8}'..='\u{00F6}' | '\u{00F8}'..='\u{02FF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c.is_numeric()
        || c == '\u{00B7}'
        || ('\u{0300}'..='\u{036F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
        || is_combining(c)
}

// Marks used by Arabic and other scripts inside words.
fn is_combining(c: char) -> bool {
    matches!(c, '\u{0610}'..='\u{061A}' | '\u{064B}'..='\u{065F}' | '\u{0670}' | '\u{06D6}'..='\u{06ED}' | '\u{200C}' | '\u{200D}')
}

const LOCAL_ESCAPES: &str = "_~.-!$&'()*+,;=/?#@%";

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn mark(&self) -> Mark {
        Mark { line: self.line, column: self.column }
    }

    fn error_at<T>(&self, mark: Mark, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: mark.line, column: mark.column, message: message.into() })
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        self.error_at(self.mark(), message)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {c:?}, found {}", self.describe_next()))
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn starts_with_keyword_ci(&self, kw: &str) -> bool {
        let n = kw.chars().count();
        kw.chars().enumerate().all(|(i, c)| self.peek_at(i).is_some_and(|x| x.eq_ignore_ascii_case(&c)))
            && !self.peek_at(n).is_some_and(|c| is_pn_chars(c) || c == ':')
    }

    /// Skips whitespace and comments, newlines included.
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    self.bump();
                }
                '#' => self.skip_comment(),
                _ => break,
            }
        }
    }

    fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    fn skip_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' || c == '\r' {
                break;
            }
            self.bump();
        }
    }

    fn fresh_bnode(&mut self) -> BlankNode {
        let b = BlankNode::new(format!("b{}", self.next_bnode));
        self.next_bnode += 1;
        b
    }

    fn labelled_bnode(&mut self, label: String) -> BlankNode {
        if let Some(b) = self.bnodes.get(&label) {
            return b.clone();
        }
        let b = self.fresh_bnode();
        self.bnodes.insert(label, b.clone());
        b
    }

    fn emit(&mut self, subject: Node, predicate: Iri, object: Term) {
        self.graph.insert(Triple { subject, predicate, object });
    }

    // ---- N-Triples -------------------------------------------------------

    fn ntriples_document(&mut self) -> Result<(), ParseError> {
        loop {
            self.skip_inline_ws();
            match self.peek() {
                None => return Ok(()),
                Some('\n' | '\r') => {
                    self.bump();
                }
                Some('#') => self.skip_comment(),
                Some(_) => self.ntriples_statement()?,
            }
        }
    }

    fn ntriples_statement(&mut self) -> Result<(), ParseError> {
        let subject = match self.peek() {
            Some('<') => Node::Iri(self.iri_ref()?),
            Some('_') => Node::Blank(self.blank_node_label()?),
            _ => return self.error(format!("expected subject, found {}", self.describe_next())),
        };
        self.skip_inline_ws();
        if self.peek() != Some('<') {
            return self.error(format!("expected predicate IRI, found {}", self.describe_next()));
        }
        let predicate = self.iri_ref()?;
        self.skip_inline_ws();
        let object = match self.peek() {
            Some('<') => Term::Iri(self.iri_ref()?),
            Some('_') => Term::Blank(self.blank_node_label()?),
            Some('"') => Term::Literal(self.rdf_literal()?),
            _ => return self.error(format!("expected object, found {}", self.describe_next())),
        };
        self.skip_inline_ws();
        self.expect('.')?;
        self.skip_inline_ws();
        match self.peek() {
            None | Some('\n' | '\r') => {}
            Some('#') => self.skip_comment(),
            _ => return self.error(format!("expected end of line, found {}", self.describe_next())),
        }
        self.emit(subject, predicate, object);
        Ok(())
    }

    // ---- Turtle ----------------------------------------------------------

    fn turtle_document(&mut self) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.turtle_statement()?;
        }
    }

    fn turtle_statement(&mut self) -> Result<(), ParseError> {
        if self.starts_with("@prefix") {
            self.advance(7);
            self.prefix_body()?;
            self.skip_ws();
            return self.expect('.');
        }
        if self.starts_with("@base") {
            self.advance(5);
            self.base_body()?;
            self.skip_ws();
            return self.expect('.');
        }
        if self.starts_with_keyword_ci("PREFIX") {
            self.advance(6);
            return self.prefix_body();
        }
        if self.starts_with_keyword_ci("BASE") {
            self.advance(4);
            return self.base_body();
        }
        if self.peek() == Some('@') {
            return self.error("unknown directive");
        }
        self.triples()?;
        self.skip_ws();
        self.expect('.')
    }

    fn advance(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn prefix_body(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let mark = self.mark();
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if is_pn_chars(c) || c == '.' {
                prefix.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if prefix.ends_with('.') || prefix.starts_with(|c: char| !is_pn_chars_base(c)) {
            return self.error_at(mark, format!("invalid prefix name {prefix:?}"));
        }
        self.expect(':')?;
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.prefixes.insert(prefix, iri.into_string());
        Ok(())
    }

    fn base_body(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.base = Some(iri.into_string());
        Ok(())
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some('[') {
            let subject = self.blank_node_property_list()?;
            self.skip_ws();
            if self.peek() == Some('.') {
                return Ok(());
            }
            return self.predicate_object_list(&subject);
        }
        let subject = self.subject()?;
        self.skip_ws();
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some('<') => Ok(Node::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Node::Blank(self.blank_node_label()?)),
            Some('(') => self.error("collections are not supported"),
            Some('"' | '\'') => self.error("literal in subject position"),
            Some(c) if is_pn_chars_base(c) || c == ':' => {
                let mark = self.mark();
                match self.name_token()? {
                    NameToken::Iri(iri) => Ok(Node::Iri(iri)),
                    _ => self.error_at(mark, "expected subject"),
                }
            }
            _ => self.error(format!("expected subject, found {}", self.describe_next())),
        }
    }

    fn predicate_object_list(&mut self, subject: &Node) -> Result<(), ParseError> {
        loop {
            let predicate = self.verb()?;
            self.skip_ws();
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, ParseError> {
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some(c) if is_pn_chars_base(c) || c == ':' => {
                let mark = self.mark();
                match self.name_token()? {
                    NameToken::Iri(iri) => Ok(iri),
                    NameToken::A => Ok(Iri::from_trusted(vocab::RDF_TYPE)),
                    NameToken::Boolean(_) => self.error_at(mark, "expected predicate"),
                }
            }
            _ => self.error(format!("expected predicate, found {}", self.describe_next())),
        }
    }

    fn object_list(&mut self, subject: &Node, predicate: &Iri) -> Result<(), ParseError> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object);
            self.skip_ws();
            if self.peek() != Some(',') {
                return Ok(());
            }
            self.bump();
            self.skip_ws();
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::Blank(self.blank_node_label()?)),
            Some('[') => Ok(self.blank_node_property_list()?.into()),
            Some('(') => self.error("collections are not supported"),
            Some('"' | '\'') => Ok(Term::Literal(self.rdf_literal()?)),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => {
                Ok(Term::Literal(self.numeric_literal()?))
            }
            Some(c) if is_pn_chars_base(c) || c == ':' => {
                let mark = self.mark();
                match self.name_token()? {
                    NameToken::Iri(iri) => Ok(Term::Iri(iri)),
                    NameToken::Boolean(b) => Ok(Term::Literal(Literal::typed(
                        b.to_string(),
                        Iri::from_trusted(vocab::XSD_BOOLEAN),
                    ))),
                    NameToken::A => self.error_at(mark, "keyword 'a' is only allowed as a predicate"),
                }
            }
            _ => self.error(format!("expected object, found {}", self.describe_next())),
        }
    }

    fn blank_node_property_list(&mut self) -> Result<Node, ParseError> {
        self.expect('[')?;
        self.skip_ws();
        let node = Node::Blank(self.fresh_bnode());
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.skip_ws();
        self.expect(']')?;
        Ok(node)
    }

    /// A prefixed name, or one of the bare keywords `a`, `true`, `false`.
    fn name_token(&mut self) -> Result<NameToken, ParseError> {
        let mark = self.mark();
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                prefix.push(c);
                self.bump();
            } else {
                break;
            }
        }
        // A trailing dot belongs to the statement, not the name.
        while prefix.ends_with('.') {
            prefix.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        if self.peek() != Some(':') {
            return match prefix.as_str() {
                "a" => Ok(NameToken::A),
                "true" => Ok(NameToken::Boolean(true)),
                "false" => Ok(NameToken::Boolean(false)),
                _ => self.error_at(mark, format!("unexpected name {prefix:?}")),
            };
        }
        self.bump();
        let local = self.local_name()?;
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(ParseError::UnknownPrefix { prefix, line: mark.line, column: mark.column });
        };
        let full = format!("{ns}{local}");
        self.absolute(full, mark).map(NameToken::Iri)
    }

    fn local_name(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        // Number of chars of `out` that cannot be dropped as trailing dots.
        let mut raw_len = 0usize;
        let mut first = true;
        while let Some(c) = self.peek() {
            let allowed = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() || c == '%' || c == '\\'
            } else {
                is_pn_chars(c) || c == '.' || c == ':' || c == '%' || c == '\\'
            };
            if !allowed {
                break;
            }
            first = false;
            match c {
                '%' => {
                    let mark = self.mark();
                    self.bump();
                    let (Some(h1), Some(h2)) = (self.peek(), self.peek_at(1)) else {
                        return self.error_at(mark, "truncated percent escape");
                    };
                    if !h1.is_ascii_hexdigit() || !h2.is_ascii_hexdigit() {
                        return self.error_at(mark, "invalid percent escape");
                    }
                    self.bump();
                    self.bump();
                    out.push('%');
                    out.push(h1);
                    out.push(h2);
                    raw_len = out.chars().count();
                }
                '\\' => {
                    let mark = self.mark();
                    self.bump();
                    match self.peek() {
                        Some(e) if LOCAL_ESCAPES.contains(e) => {
                            self.bump();
                            out.push(e);
                            raw_len = out.chars().count();
                        }
                        _ => return self.error_at(mark, "invalid escape in local name"),
                    }
                }
                _ => {
                    self.bump();
                    out.push(c);
                    if c != '.' {
                        raw_len = out.chars().count();
                    }
                }
            }
        }
        let total = out.chars().count();
        if total > raw_len {
            // Unconsume trailing dots.
            let drop = total - raw_len;
            for _ in 0..drop {
                out.pop();
                self.pos -= 1;
                self.column -= 1;
            }
        }
        Ok(out)
    }

    fn iri_ref(&mut self) -> Result<Iri, ParseError> {
        let mark = self.mark();
        self.expect('<')?;
        let mut value = String::new();
        loop {
            let Some(c) = self.peek() else {
                return self.error_at(mark, "unterminated IRI");
            };
            match c {
                '>' => {
                    self.bump();
                    break;
                }
                '\\' => {
                    let esc = self.mark();
                    self.bump();
                    let ch = match self.bump() {
                        Some('u') => self.hex_escape(4, esc)?,
                        Some('U') => self.hex_escape(8, esc)?,
                        _ => return self.error_at(esc, "invalid escape in IRI"),
                    };
                    if ch <= ' ' || "<>\"{}|^`\\".contains(ch) {
                        return self.error_at(esc, format!("escaped character {ch:?} not allowed in IRI"));
                    }
                    value.push(ch);
                }
                c if c <= ' ' || "<\"{}|^`".contains(c) => {
                    return self.error(format!("character {c:?} not allowed in IRI"));
                }
                c => {
                    self.bump();
                    value.push(c);
                }
            }
        }
        self.absolute(value, mark)
    }

    fn absolute(&self, value: String, mark: Mark) -> Result<Iri, ParseError> {
        if has_scheme(&value) {
            return Ok(Iri::from_trusted(value));
        }
        if self.format == RdfFormat::NTriples {
            return self.error_at(mark, format!("relative IRI {value:?} not allowed in N-Triples"));
        }
        match &self.base {
            Some(base) => Ok(Iri::from_trusted(resolve_iri(base, &value))),
            None => self.error_at(mark, format!("relative IRI {value:?} without a base")),
        }
    }

    fn hex_escape(&mut self, digits: usize, mark: Mark) -> Result<char, ParseError> {
        let mut code = 0u32;
        for _ in 0..digits {
            match self.peek().and_then(|c| c.to_digit(16)) {
                Some(d) => {
                    code = code * 16 + d;
                    self.bump();
                }
                None => return self.error_at(mark, "invalid unicode escape"),
            }
        }
        char::from_u32(code).map_or_else(|| self.error_at(mark, "escape is not a valid code point"), Ok)
    }

    fn blank_node_label(&mut self) -> Result<BlankNode, ParseError> {
        let mark = self.mark();
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return self.error_at(mark, "empty blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        Ok(self.labelled_bnode(label))
    }

    fn rdf_literal(&mut self) -> Result<Literal, ParseError> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                let mark = self.mark();
                self.bump();
                let tag = self.language_tag(mark)?;
                Ok(Literal::lang_string(lexical, &tag))
            }
            Some('^') => {
                let mark = self.mark();
                self.bump();
                if self.peek() != Some('^') {
                    return self.error_at(mark, "expected '^^'");
                }
                self.bump();
                self.skip_inline_ws();
                let datatype = match self.peek() {
                    Some('<') => self.iri_ref()?,
                    Some(c) if self.format == RdfFormat::Turtle && (is_pn_chars_base(c) || c == ':') => {
                        let m = self.mark();
                        match self.name_token()? {
                            NameToken::Iri(iri) => iri,
                            _ => return self.error_at(m, "expected datatype IRI"),
                        }
                    }
                    _ => return self.error("expected datatype IRI"),
                };
                if datatype.as_str() == vocab::RDF_LANG_STRING {
                    return self.error_at(mark, "rdf:langString requires a language tag");
                }
                Ok(Literal::typed(lexical, datatype))
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    fn language_tag(&mut self, mark: Mark) -> Result<String, ParseError> {
        let mut tag = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                tag.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if tag.is_empty() {
            return self.error_at(mark, "empty language tag");
        }
        while self.peek() == Some('-') && self.peek_at(1).is_some_and(|c| c.is_ascii_alphanumeric()) {
            tag.push('-');
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() {
                    tag.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
        }
        Ok(tag.to_ascii_lowercase())
    }

    fn string(&mut self) -> Result<String, ParseError> {
        let mark = self.mark();
        let quote = self.bump().expect("caller checked for a quote");
        if quote == '\'' && self.format == RdfFormat::NTriples {
            return self.error_at(mark, "single-quoted strings are not allowed in N-Triples");
        }
        let long = self.format == RdfFormat::Turtle && self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut out = String::new();
        loop {
            let Some(c) = self.peek() else {
                return self.error_at(mark, "unterminated string literal");
            };
            if c == quote {
                if !long {
                    self.bump();
                    return Ok(out);
                }
                if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                    // Up to two extra quotes may precede the closing triple.
                    if self.peek_at(3) == Some(quote) {
                        self.bump();
                        out.push(quote);
                        continue;
                    }
                    self.advance(3);
                    return Ok(out);
                }
                self.bump();
                out.push(c);
                continue;
            }
            match c {
                '\\' => {
                    let esc = self.mark();
                    self.bump();
                    let ch = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4, esc)?,
                        Some('U') => self.hex_escape(8, esc)?,
                        _ => return self.error_at(esc, "invalid escape sequence in string"),
                    };
                    out.push(ch);
                }
                '\n' | '\r' if !long => {
                    return self.error("newline in string literal");
                }
                _ => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    fn numeric_literal(&mut self) -> Result<Literal, ParseError> {
        let mark = self.mark();
        let mut text = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            text.push(sign);
            self.bump();
        }
        let int_digits = self.digits(&mut text);
        let mut fraction_digits = 0;
        let mut is_decimal = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            text.push('.');
            self.bump();
            fraction_digits = self.digits(&mut text);
            is_decimal = true;
        }
        if int_digits == 0 && fraction_digits == 0 {
            return self.error_at(mark, "invalid numeric literal");
        }
        let mut is_double = false;
        if matches!(self.peek(), Some('e' | 'E')) {
            let exp_mark = self.mark();
            text.push(self.bump().unwrap_or('e'));
            if let Some(sign @ ('+' | '-')) = self.peek() {
                text.push(sign);
                self.bump();
            }
            if self.digits(&mut text) == 0 {
                return self.error_at(exp_mark, "missing exponent digits");
            }
            is_double = true;
        }
        let datatype = if is_double {
            vocab::XSD_DOUBLE
        } else if is_decimal {
            vocab::XSD_DECIMAL
        } else {
            vocab::XSD_INTEGER
        };
        Ok(Literal::typed(text, Iri::from_trusted(datatype)))
    }

    fn digits(&mut self, out: &mut String) -> usize {
        let mut n = 0;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                out.push(c);
                self.bump();
                n += 1;
            } else {
                break;
            }
        }
        n
    }
}

enum NameToken {
    Iri(Iri),
    A,
    Boolean(bool),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn turtle(s: &str) -> Result<Graph, ParseError> {
        parse_rdf(s, RdfFormat::Turtle)
    }

    #[test]
    fn empty_documents() {
        assert!(parse_rdf("", RdfFormat::NTriples).unwrap().is_empty());
        assert!(turtle("  # only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn language_tag_lowercased() {
        let g = parse_rdf("<a:s> <a:p> \"x\"@EN .", RdfFormat::NTriples).unwrap();
        let t = g.iter().next().unwrap();
        let lit = t.object.as_literal().unwrap();
        assert_eq!(lit.lexical(), "x");
        assert_eq!(lit.language(), Some("en"));
        assert_eq!(lit.datatype().as_str(), vocab::RDF_LANG_STRING);
    }

    #[test]
    fn predicate_and_object_lists() {
        let g = turtle(
            "@prefix ex: <http://ex.org/> .\n\
             ex:s a ex:C ; ex:p ex:o1 , ex:o2 ; ex:q \"v\" ;.\n",
        )
        .unwrap();
        assert_eq!(g.len(), 4);
    }

    #[test]
    fn blank_node_property_lists() {
        let g = turtle(
            "@prefix ex: <http://ex.org/> .\n\
             ex:s ex:p [ ex:q 1 ; ex:r [] ] .\n\
             [ ex:q 2 ] .\n\
             [ ex:q 3 ] ex:r ex:o .\n",
        )
        .unwrap();
        assert_eq!(g.len(), 6);
    }

    #[test]
    fn numeric_and_boolean_literals() {
        let g = turtle("@prefix ex: <http://ex.org/> . ex:s ex:p 42, -1.5, 2e3, true, .5 .").unwrap();
        let mut types: Vec<_> = g
            .iter()
            .map(|t| {
                let l = t.object.as_literal().unwrap().clone();
                (l.lexical().to_owned(), crate::rdf::local_name(l.datatype()).to_owned())
            })
            .collect();
        types.sort();
        assert_eq!(
            types,
            vec![
                ("-1.5".into(), "decimal".into()),
                (".5".into(), "decimal".into()),
                ("2e3".into(), "double".into()),
                ("42".into(), "integer".into()),
                ("true".into(), "boolean".into()),
            ]
        );
    }

    #[test]
    fn integer_followed_by_statement_dot() {
        let g = turtle("@prefix ex: <http://ex.org/> . ex:s ex:p 42.").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.object.as_literal().unwrap().lexical(), "42");
    }

    #[test]
    fn base_resolution() {
        let g = turtle("@base <http://ex.org/a/b> . <c> <#p> <../d> .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject.key(), "http://ex.org/a/c");
        assert_eq!(t.predicate.as_str(), "http://ex.org/a/b#p");
        assert_eq!(t.object.as_iri().unwrap().as_str(), "http://ex.org/d");
    }

    #[test]
    fn sparql_style_directives() {
        let g = turtle("PREFIX ex: <http://ex.org/>\nBASE <http://ex.org/>\nex:s ex:p <o> .").unwrap();
        assert_eq!(g.iter().next().unwrap().object.as_iri().unwrap().as_str(), "http://ex.org/o");
    }

    #[test]
    fn unknown_prefix_reported() {
        let err = turtle("ex:s <a:p> <a:o> .").unwrap_err();
        assert_eq!(err, ParseError::UnknownPrefix { prefix: "ex".into(), line: 1, column: 1 });
    }

    #[test]
    fn collections_rejected() {
        let err = turtle("<a:s> <a:p> ( <a:o> ) .").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, column: 13, .. }), "{err:?}");
    }

    #[test]
    fn blank_labels_are_document_scoped() {
        let g = turtle("_:x <a:p> _:y . _:y <a:p> _:x .").unwrap();
        let labels: Vec<_> = g.iter().map(|t| t.subject.key()).collect();
        assert_eq!(labels, vec!["_:b0", "_:b1"]);
    }

    #[test]
    fn long_strings_and_escapes() {
        let g = turtle("<a:s> <a:p> \"\"\"line1\n\"quoted\" \\u00e9\"\"\" .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.object.as_literal().unwrap().lexical(), "line1\n\"quoted\" é");
    }

    #[test]
    fn prefixed_names_with_trailing_dot_and_escapes() {
        let g = turtle("@prefix ex: <http://ex.org/> . ex:a.b ex:p ex:c\\,d.").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject.key(), "http://ex.org/a.b");
        assert_eq!(t.object.as_iri().unwrap().as_str(), "http://ex.org/c,d");
    }

    #[test]
    fn multilingual_literals_and_names() {
        let g = turtle("@prefix ex: <http://ex.org/> . ex:مكان ex:p \"地点\"@zh .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject.key(), "http://ex.org/مكان");
        assert_eq!(t.object.as_literal().unwrap().lexical(), "地点");
    }

    #[test]
    fn invalid_utf8_is_a_syntax_error() {
        let err = parse_rdf_bytes(b"<a:s> <a:p> \"x\" .\n<a:s> <a:p> \"\xff\" .", RdfFormat::NTriples, None).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, column: 14, .. }), "{err:?}");
    }

    #[test]
    fn ntriples_rejects_turtle_only_syntax() {
        for doc in [
            "@prefix ex: <http://ex.org/> .",
            "<a:s> <a:p> 42 .",
            "<a:s> <a:p> <a:o> ; <a:q> <a:o> .",
            "<a:s> <a:p> <a:o> . <a:s> <a:p> <a:x> .",
            "<rel> <a:p> <a:o> .",
        ] {
            assert!(parse_rdf(doc, RdfFormat::NTriples).is_err(), "{doc}");
        }
    }

    #[test]
    fn curie_expansion() {
        let doc = parse_document("@prefix ex: <http://ex.org/> .", RdfFormat::Turtle, None).unwrap();
        assert_eq!(doc.expand_curie("ex:man1").unwrap().as_str(), "http://ex.org/man1");
        assert!(doc.expand_curie("http://ex.org/x").is_none());
        assert!(doc.expand_curie("zz:x").is_none());
        assert_eq!(doc.resolve_node("ex:man1"), doc.resolve_node("http://ex.org/man1"));
        assert_eq!(doc.resolve_node("_:b3"), Some(Node::Blank(BlankNode::new("b3"))));
        // undeclared prefixes read as IRI schemes
        assert_eq!(doc.resolve_node("zz:x").unwrap().key(), "zz:x");
        assert_eq!(doc.resolve_node("not an iri"), None);
        assert_eq!(doc.resolve_node("_:"), None);
    }
}
