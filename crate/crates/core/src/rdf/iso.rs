//! Graph isomorphism modulo blank-node relabelling.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::graph::Graph;
use super::term::{BlankNode, Node, Term, Triple};

fn blank_of_node(n: &Node) -> Option<&BlankNode> {
    match n {
        Node::Blank(b) => Some(b),
        Node::Iri(_) => None,
    }
}

fn blank_of_term(t: &Term) -> Option<&BlankNode> {
    match t {
        Term::Blank(b) => Some(b),
        _ => None,
    }
}

fn is_ground(t: &Triple) -> bool {
    blank_of_node(&t.subject).is_none() && blank_of_term(&t.object).is_none()
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Colour refinement: each blank node's colour summarises its incident
/// triples, with blank neighbours replaced by their previous colour.
fn colours(triples: &[Triple]) -> HashMap<BlankNode, u64> {
    let mut colour: HashMap<BlankNode, u64> = HashMap::new();
    for t in triples {
        for b in blank_of_node(&t.subject).into_iter().chain(blank_of_term(&t.object)) {
            colour.insert(b.clone(), 0);
        }
    }
    for _ in 0..4 {
        let mut next: HashMap<BlankNode, Vec<u64>> = colour.keys().map(|b| (b.clone(), Vec::new())).collect();
        for t in triples {
            let subj = match &t.subject {
                Node::Blank(b) => (true, colour[b]),
                Node::Iri(i) => (false, hash_of(i)),
            };
            let obj = match &t.object {
                Term::Blank(b) => (true, colour[b]),
                other => (false, hash_of(other)),
            };
            let pred = hash_of(&t.predicate);
            if let Some(b) = blank_of_node(&t.subject) {
                next.get_mut(b).unwrap().push(hash_of(&(0u8, pred, obj)));
            }
            if let Some(b) = blank_of_term(&t.object) {
                next.get_mut(b).unwrap().push(hash_of(&(1u8, pred, subj)));
            }
        }
        colour = next
            .into_iter()
            .map(|(b, mut sig)| {
                sig.sort_unstable();
                let prev = colour[&b];
                (b, hash_of(&(prev, sig)))
            })
            .collect();
    }
    colour
}

fn map_triple(t: &Triple, mapping: &HashMap<BlankNode, BlankNode>) -> Option<Triple> {
    let subject = match &t.subject {
        Node::Blank(b) => Node::Blank(mapping.get(b)?.clone()),
        n => n.clone(),
    };
    let object = match &t.object {
        Term::Blank(b) => Term::Blank(mapping.get(b)?.clone()),
        o => o.clone(),
    };
    Some(Triple { subject, predicate: t.predicate.clone(), object })
}

/// True when some bijection between blank nodes maps `a` onto `b`.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ta: Vec<Triple> = a.iter().collect();
    let tb: Vec<Triple> = b.iter().collect();
    let ground_a: HashSet<&Triple> = ta.iter().filter(|t| is_ground(t)).collect();
    let ground_b: HashSet<&Triple> = tb.iter().filter(|t| is_ground(t)).collect();
    if ground_a != ground_b {
        return false;
    }
    let ca = colours(&ta);
    let cb = colours(&tb);
    let mut hist_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u64, usize> = BTreeMap::new();
    for c in ca.values() {
        *hist_a.entry(*c).or_default() += 1;
    }
    for c in cb.values() {
        *hist_b.entry(*c).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }

    let mut incident: HashMap<&BlankNode, Vec<&Triple>> = HashMap::new();
    for t in ta.iter().filter(|t| !is_ground(t)) {
        for bn in blank_of_node(&t.subject).into_iter().chain(blank_of_term(&t.object)) {
            incident.entry(bn).or_default().push(t);
        }
    }
    // Most constrained first: rare colours before common ones.
    let mut order: Vec<&BlankNode> = ca.keys().collect();
    order.sort_by_key(|bn| (hist_a[&ca[*bn]], ca[*bn], (*bn).clone()));

    let mut by_colour: HashMap<u64, Vec<&BlankNode>> = HashMap::new();
    for (bn, c) in &cb {
        by_colour.entry(*c).or_default().push(bn);
    }
    for v in by_colour.values_mut() {
        v.sort();
    }

    let mut mapping = HashMap::new();
    let mut used = HashSet::new();
    search(0, &order, &ca, &by_colour, &incident, b, &mut mapping, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search<'a>(
    depth: usize,
    order: &[&'a BlankNode],
    ca: &HashMap<BlankNode, u64>,
    by_colour: &HashMap<u64, Vec<&'a BlankNode>>,
    incident: &HashMap<&BlankNode, Vec<&Triple>>,
    target: &Graph,
    mapping: &mut HashMap<BlankNode, BlankNode>,
    used: &mut HashSet<&'a BlankNode>,
) -> bool {
    let Some(&current) = order.get(depth) else {
        return true;
    };
    let Some(candidates) = by_colour.get(&ca[current]) else {
        return false;
    };
    for &cand in candidates {
        if used.contains(cand) {
            continue;
        }
        mapping.insert(current.clone(), cand.clone());
        let consistent = incident.get(current).into_iter().flatten().all(|t| match map_triple(t, mapping) {
            Some(mapped) => target.contains(&mapped),
            None => true,
        });
        if consistent {
            used.insert(cand);
            if search(depth + 1, order, ca, by_colour, incident, target, mapping, used) {
                return true;
            }
            used.remove(cand);
        }
        mapping.remove(current);
    }
    false
}
