//! Seeded random graphs and ontologies.

use std::collections::BTreeSet;

use kgatlas_core::ontology::{LabelBundle, OntologyClass, OntologyProperty, PropertyKind};
use kgatlas_core::{BlankNode, Graph, Iri, Literal, Node, Ontology, Term, Triple};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NS: &str = "http://corpus.test/d#";
pub const ONTO: &str = "http://corpus.test/o#";
pub const LANGUAGES: [&str; 4] = ["en", "fr", "ar", "zh"];

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

/// A random instance graph with the ontology describing its vocabulary.
pub struct Sample {
    pub graph: Graph,
    pub ontology: Ontology,
    /// Every node that can act as a subject.
    pub nodes: Vec<Node>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const LABEL_WORDS: [[&str; 4]; 6] = [
    ["person", "personne", "شخص", "人物"],
    ["place", "lieu", "مكان", "地点"],
    ["event", "événement", "حدث", "事件"],
    ["link", "lien", "رابط", "链接"],
    ["value", "valeur", "قيمة", "数值"],
    ["date", "date", "تاريخ", "日期"],
];

fn random_bundle(rng: &mut ChaCha8Rng, base: usize, id: usize) -> LabelBundle {
    let mut bundle = LabelBundle::new();
    for (i, lang) in LANGUAGES.iter().enumerate() {
        // English is usually present, the others about two times in three.
        let keep = if *lang == "en" { rng.random_bool(0.9) } else { rng.random_bool(0.66) };
        if keep {
            bundle.insert(lang, &format!("{} {id}", LABEL_WORDS[base % LABEL_WORDS.len()][i]));
        }
    }
    bundle
}

/// Ontology with `classes` classes and a mix of object and datatype properties.
pub fn random_ontology(rng: &mut ChaCha8Rng) -> Ontology {
    let class_count = rng.random_range(1..=5);
    let classes: Vec<OntologyClass> = (0..class_count)
        .map(|i| OntologyClass {
            iri: iri(&format!("{ONTO}C{i}")),
            labels: random_bundle(rng, i, i),
            parents: BTreeSet::new(),
            icon_key: rng.random_bool(0.5).then(|| format!("icon{i}")),
        })
        .collect();
    let mut properties = Vec::new();
    for i in 0..4 {
        properties.push(OntologyProperty {
            iri: iri(&format!("{ONTO}p{i}")),
            kind: PropertyKind::Object,
            labels: random_bundle(rng, 3, i),
            domain: None,
            range: None,
        });
    }
    for i in 0..3 {
        properties.push(OntologyProperty {
            iri: iri(&format!("{ONTO}q{i}")),
            kind: PropertyKind::Datatype,
            labels: random_bundle(rng, 4, i),
            domain: None,
            range: None,
        });
    }
    Ontology::from_parts(classes, properties)
}

fn random_literal(rng: &mut ChaCha8Rng) -> Literal {
    const TEXTS: [&str; 8] = ["armed", "2012", "9", "US", "with \"quotes\"", "back\\slash", "مسلح", "line\nbreak"];
    let text = *TEXTS.choose(rng).unwrap();
    match rng.random_range(0..4) {
        0 => Literal::string(text),
        1 => Literal::lang_string(text, LANGUAGES.choose(rng).unwrap()),
        2 => Literal::typed(rng.random_range(0..3000).to_string(), iri("http://www.w3.org/2001/XMLSchema#integer")),
        _ => Literal::string(format!("{text} {}", rng.random_range(0..10))),
    }
}

/// A graph with at most `max_nodes` nodes and `max_triples` triples.
///
/// Predicates include declared object properties, declared datatype
/// properties (sometimes pointing at resources), undeclared predicates with
/// either kind of object, `rdf:type`, `rdfs:label` and `viz:` annotations.
pub fn random_sample(rng: &mut ChaCha8Rng, max_nodes: usize, max_triples: usize) -> Sample {
    let ontology = random_ontology(rng);
    let class_count = ontology.classes().count();
    let node_count = rng.random_range(1..=max_nodes);
    let nodes: Vec<Node> = (0..node_count)
        .map(|i| {
            if rng.random_bool(0.1) {
                Node::Blank(BlankNode::new(format!("n{i}")))
            } else {
                Node::Iri(iri(&format!("{NS}n{i}")))
            }
        })
        .collect();
    let triple_count = rng.random_range(0..=max_triples);
    let mut graph = Graph::new();
    let mut attempts = 0;
    while graph.len() < triple_count && attempts < triple_count * 4 {
        attempts += 1;
        let s = nodes.choose(rng).unwrap().clone();
        let triple = match rng.random_range(0..100) {
            0..=14 => Triple::new(s, iri(RDF_TYPE), iri(&format!("{ONTO}C{}", rng.random_range(0..class_count)))),
            15..=49 => Triple::new(
                s,
                iri(&format!("{ONTO}p{}", rng.random_range(0..4))),
                Term::from(nodes.choose(rng).unwrap().clone()),
            ),
            50..=69 => Triple::new(s, iri(&format!("{ONTO}q{}", rng.random_range(0..3))), random_literal(rng)),
            70..=74 => Triple::new(
                s,
                iri(&format!("{ONTO}q{}", rng.random_range(0..3))),
                Term::from(nodes.choose(rng).unwrap().clone()),
            ),
            75..=82 => Triple::new(s, iri(&format!("{ONTO}u{}", rng.random_range(0..2))), Term::from(nodes.choose(rng).unwrap().clone())),
            83..=87 => Triple::new(s, iri(&format!("{ONTO}u{}", rng.random_range(0..2))), random_literal(rng)),
            88..=93 => Triple::new(s, iri(RDFS_LABEL), random_literal(rng)),
            94..=96 => Triple::new(s, iri("http://kg-atlas.dev/viz#icon"), Literal::string("x")),
            _ => Triple::new(s, iri(&format!("{ONTO}p{}", rng.random_range(0..4))), random_literal(rng)),
        };
        graph.insert(triple);
    }
    Sample { graph, ontology, nodes }
}

/// A graph exercising every lexical feature the serializer must escape.
pub fn random_roundtrip_graph(rng: &mut ChaCha8Rng) -> Graph {
    const IRIS: [&str; 6] = [
        "http://ex.org/a",
        "http://ex.org/مكان",
        "urn:x:y",
        "http://ex.org/path/with%20escape",
        "http://ex.org/q?x=1#frag",
        "http://例子.测试/节点",
    ];
    const TEXTS: [&str; 7] = ["plain", "", "quote \" inside", "back \\ slash", "new\nline\r", "tab\there", "中文 عربي"];
    let n = rng.random_range(0..40);
    let mut g = Graph::new();
    for _ in 0..n {
        let subject = if rng.random_bool(0.3) {
            Node::Blank(BlankNode::new(format!("x{}", rng.random_range(0..6))))
        } else {
            Node::Iri(iri(IRIS.choose(rng).unwrap()))
        };
        let predicate = iri(IRIS.choose(rng).unwrap());
        let object: Term = match rng.random_range(0..5) {
            0 => Term::Iri(iri(IRIS.choose(rng).unwrap())),
            1 => Term::Blank(BlankNode::new(format!("x{}", rng.random_range(0..6)))),
            2 => Literal::lang_string(*TEXTS.choose(rng).unwrap(), ["en", "fr-ca", "ar", "zh-hans"].choose(rng).unwrap()).into(),
            3 => Literal::typed(*TEXTS.choose(rng).unwrap(), iri("http://ex.org/dt")).into(),
            _ => Literal::string(*TEXTS.choose(rng).unwrap()).into(),
        };
        g.insert(Triple::new(subject, predicate, object));
    }
    g
}
