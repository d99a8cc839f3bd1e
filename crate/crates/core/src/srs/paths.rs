use std::collections::HashMap;

use super::{word_to_instance, Word};
use crate::model::{Atom, Instance, Term};

fn letter_of(t: &Term) -> Option<u8> {
    match t {
        Term::Const(c) if &**c == "0" => Some(0),
        Term::Const(c) if &**c == "1" => Some(1),
        _ => None,
    }
}

fn is_edge(a: &Atom) -> bool {
    &*a.rel == "E" && a.arity() == 3 && a.args[0].is_null() && a.args[2].is_null() && letter_of(&a.args[1]).is_some()
}

/// All max-paths of `instance`: chains of `E(x,a,y)` atoms with letters in
/// {0,1} and pairwise distinct null connectors, not contained in a longer
/// chain. Each path is listed from its first edge.
pub fn paths(instance: &Instance) -> Vec<Vec<Atom>> {
    let mut out_edges: HashMap<&Term, Vec<&Atom>> = HashMap::new();
    let mut in_edges: HashMap<&Term, Vec<&Atom>> = HashMap::new();
    for a in instance.iter().filter(|a| is_edge(a) && a.args[0] != a.args[2]) {
        out_edges.entry(&a.args[0]).or_default().push(a);
        in_edges.entry(&a.args[2]).or_default().push(a);
    }
    let mut starts: Vec<&Term> = Vec::new();
    for a in instance.iter().filter(|a| is_edge(a)) {
        if !starts.contains(&&a.args[0]) {
            starts.push(&a.args[0]);
        }
    }
    let mut result = Vec::new();
    for s in starts {
        let mut chain: Vec<&Atom> = Vec::new();
        let mut visited: Vec<&Term> = vec![s];
        extend(s, &out_edges, &in_edges, &mut chain, &mut visited, &mut result);
    }
    result
}

fn extend<'a>(
    at: &'a Term,
    out_edges: &HashMap<&'a Term, Vec<&'a Atom>>,
    in_edges: &HashMap<&'a Term, Vec<&'a Atom>>,
    chain: &mut Vec<&'a Atom>,
    visited: &mut Vec<&'a Term>,
    result: &mut Vec<Vec<Atom>>,
) {
    let mut extended = false;
    for e in out_edges.get(at).into_iter().flatten() {
        let next = &e.args[2];
        if visited.contains(&next) {
            continue;
        }
        extended = true;
        chain.push(e);
        visited.push(next);
        extend(next, out_edges, in_edges, chain, visited, result);
        visited.pop();
        chain.pop();
    }
    if extended || chain.is_empty() {
        return;
    }
    let first = visited[0];
    let left_open = in_edges
        .get(first)
        .into_iter()
        .flatten()
        .any(|e| !visited.contains(&&e.args[0]));
    if !left_open {
        result.push(chain.iter().map(|a| (*a).clone()).collect());
    }
}

pub fn word_of_path(path: &[Atom]) -> Word {
    Word::from_letters(path.iter().map(|a| letter_of(&a.args[1]).expect("path edge")).collect())
}

pub fn words(instance: &Instance) -> Vec<Word> {
    let mut out: Vec<Word> = paths(instance).iter().map(|p| word_of_path(p)).collect();
    out.sort();
    out.dedup();
    out
}

/// `I* = ⋃ I_word(π)` over the max-paths, each line built from fresh nulls.
pub fn star_instance(instance: &Instance) -> Instance {
    let mut out = Instance::new();
    for p in paths(instance) {
        out.extend(word_to_instance(&word_of_path(&p)).iter().cloned());
    }
    out
}
