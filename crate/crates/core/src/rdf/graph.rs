use std::collections::{BTreeMap, BTreeSet};

use super::term::{Iri, Node, Term, Triple};

type Index<A, B, C> = BTreeMap<A, BTreeMap<B, BTreeSet<C>>>;

fn index_insert<A: Ord, B: Ord, C: Ord>(index: &mut Index<A, B, C>, a: A, b: B, c: C) -> bool {
    index.entry(a).or_default().entry(b).or_default().insert(c)
}

/// An in-memory set of triples with three sorted indexes.
///
/// `spo` is the primary ordering and the one used for unbound scans. `pos`
/// serves predicate-led patterns and `osp` serves object-led patterns.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    spo: Index<Node, Iri, Term>,
    pos: Index<Iri, Term, Node>,
    osp: Index<Term, Node, Iri>,
    len: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.spo == other.spo
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a triple. Returns false if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let Triple { subject, predicate, object } = triple;
        if !index_insert(&mut self.spo, subject.clone(), predicate.clone(), object.clone()) {
            return false;
        }
        index_insert(&mut self.pos, predicate.clone(), object.clone(), subject.clone());
        index_insert(&mut self.osp, object, subject, predicate);
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.spo
            .get(&triple.subject)
            .and_then(|m| m.get(&triple.predicate))
            .is_some_and(|objects| objects.contains(&triple.object))
    }

    /// All triples in subject, predicate, object order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().flat_map(|(s, by_p)| {
            by_p.iter().flat_map(move |(p, objects)| {
                objects.iter().map(move |o| Triple::new(s.clone(), p.clone(), o.clone()))
            })
        })
    }

    /// Distinct subjects, sorted.
    pub fn subjects(&self) -> impl Iterator<Item = &Node> + '_ {
        self.spo.keys()
    }

    /// True if the node occurs as a subject or as an object.
    pub fn mentions(&self, node: &Node) -> bool {
        self.spo.contains_key(node) || self.osp.contains_key(&Term::from(node.clone()))
    }

    /// Objects of `(subject, predicate, ?)`, sorted.
    pub fn objects<'a>(&'a self, subject: &Node, predicate: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.spo
            .get(subject)
            .and_then(|m| m.get(predicate))
            .into_iter()
            .flat_map(|objects| objects.iter())
    }

    /// Subjects of `(?, predicate, object)`, sorted.
    pub fn subjects_with<'a>(&'a self, predicate: &Iri, object: &Term) -> impl Iterator<Item = &'a Node> + 'a {
        self.pos
            .get(predicate)
            .and_then(|m| m.get(object))
            .into_iter()
            .flat_map(|subjects| subjects.iter())
    }

    /// Pattern match. Unbound positions are wildcards.
    ///
    /// The result is ordered by the index that serves the pattern: `spo` when
    /// the subject is bound (or nothing is), `pos` when only the predicate (and
    /// possibly the object) is bound, `osp` when the object is bound without
    /// the predicate.
    pub fn matching(&self, s: Option<&Node>, p: Option<&Iri>, o: Option<&Term>) -> Vec<Triple> {
        let mut out = Vec::new();
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                let t = Triple::new(s.clone(), p.clone(), o.clone());
                if self.contains(&t) {
                    out.push(t);
                }
            }
            (Some(s), Some(p), None) => {
                for o in self.objects(s, p) {
                    out.push(Triple::new(s.clone(), p.clone(), o.clone()));
                }
            }
            (Some(s), None, Some(o)) => {
                if let Some(preds) = self.osp.get(o).and_then(|m| m.get(s)) {
                    for p in preds {
                        out.push(Triple::new(s.clone(), p.clone(), o.clone()));
                    }
                }
            }
            (Some(s), None, None) => {
                if let Some(by_p) = self.spo.get(s) {
                    for (p, objects) in by_p {
                        for o in objects {
                            out.push(Triple::new(s.clone(), p.clone(), o.clone()));
                        }
                    }
                }
            }
            (None, Some(p), Some(o)) => {
                for s in self.subjects_with(p, o) {
                    out.push(Triple::new(s.clone(), p.clone(), o.clone()));
                }
            }
            (None, Some(p), None) => {
                if let Some(by_o) = self.pos.get(p) {
                    for (o, subjects) in by_o {
                        for s in subjects {
                            out.push(Triple::new(s.clone(), p.clone(), o.clone()));
                        }
                    }
                }
            }
            (None, None, Some(o)) => {
                if let Some(by_s) = self.osp.get(o) {
                    for (s, preds) in by_s {
                        for p in preds {
                            out.push(Triple::new(s.clone(), p.clone(), o.clone()));
                        }
                    }
                }
            }
            (None, None, None) => out.extend(self.iter()),
        }
        out
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::term::Literal;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn duplicate_insert_keeps_size() {
        let mut g = Graph::new();
        let t = Triple::new(iri("a:s"), iri("a:p"), Literal::string("x"));
        assert!(g.insert(t.clone()));
        assert!(!g.insert(t));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn empty_graph_matches_nothing() {
        let g = Graph::new();
        assert!(g.matching(None, None, None).is_empty());
    }

    #[test]
    fn fully_bound_absent_triple() {
        let mut g = Graph::new();
        g.insert(Triple::new(iri("a:s"), iri("a:p"), iri("a:o")));
        let s = Node::Iri(iri("a:s"));
        let o = Term::Iri(iri("a:other"));
        assert!(g.matching(Some(&s), Some(&iri("a:p")), Some(&o)).is_empty());
    }
}
