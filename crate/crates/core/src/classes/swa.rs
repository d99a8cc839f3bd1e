//! Super-weak acyclicity over the semi-oblivious Skolemization.

use std::collections::HashMap;
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{require_tgds, ClassError, Verdict};
use crate::model::{Dependency, Sym};
use crate::rewrite::{skolemize, Flavor, SkAtom, SkRule, SkTerm};

/// An argument slot `(A,i)` of an atom in a Skolemized rule, 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place {
    pub atom: SkAtom,
    pub index: usize,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.atom, self.index)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type Subst = HashMap<Sym, SkTerm>;

fn walk<'a>(t: &'a SkTerm, s: &'a Subst) -> &'a SkTerm {
    let mut t = t;
    while let SkTerm::Var(v) = t {
        match s.get(v) {
            Some(u) => t = u,
            None => break,
        }
    }
    t
}

fn occurs(v: &Sym, t: &SkTerm, s: &Subst) -> bool {
    match walk(t, s) {
        SkTerm::Var(w) => w == v,
        SkTerm::Const(_) => false,
        SkTerm::Func { args, .. } => args.iter().any(|a| occurs(v, a, s)),
    }
}

fn unify(a: &SkTerm, b: &SkTerm, s: &mut Subst) -> bool {
    let (a, b) = (walk(a, s).clone(), walk(b, s).clone());
    match (&a, &b) {
        (SkTerm::Var(x), SkTerm::Var(y)) if x == y => true,
        (SkTerm::Var(x), t) | (t, SkTerm::Var(x)) => {
            if occurs(x, t, s) {
                return false;
            }
            s.insert(x.clone(), t.clone());
            true
        }
        (SkTerm::Const(c), SkTerm::Const(d)) => c == d,
        (SkTerm::Func { name: f, args: xs }, SkTerm::Func { name: g, args: ys }) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify(x, y, s))
        }
        _ => false,
    }
}

fn rename_apart(t: &SkTerm) -> SkTerm {
    match t {
        SkTerm::Var(v) => SkTerm::Var(format!("{v}'").into()),
        SkTerm::Const(_) => t.clone(),
        SkTerm::Func { name, args } => SkTerm::Func {
            name: name.clone(),
            args: args.iter().map(rename_apart).collect(),
        },
    }
}

/// Do the two atoms unify once their variables are renamed apart?
pub fn unifiable(a: &SkAtom, b: &SkAtom) -> bool {
    if a.rel != b.rel || a.args.len() != b.args.len() {
        return false;
    }
    let mut s = Subst::new();
    a.args
        .iter()
        .zip(&b.args)
        .all(|(x, y)| unify(x, &rename_apart(y), &mut s))
}

fn place_unifies(p: &Place, q: &Place) -> bool {
    p.index == q.index && unifiable(&p.atom, &q.atom)
}

/// `P ⊑ Q`: every place of `P` unifies with some place of `Q`.
fn covered(p: &[Place], q: &[Place]) -> bool {
    p.iter().all(|a| q.iter().any(|b| place_unifies(a, b)))
}

/// Places of `atoms` holding exactly `term`.
fn places_of(atoms: &[SkAtom], term: &SkTerm) -> Vec<Place> {
    let mut out = Vec::new();
    for a in atoms {
        for (i, t) in a.args.iter().enumerate() {
            if t == term {
                let p = Place {
                    atom: a.clone(),
                    index: i + 1,
                };
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn skolem_terms(rule: &SkRule) -> Vec<SkTerm> {
    let mut out = Vec::new();
    for a in &rule.head {
        for t in &a.args {
            if matches!(t, SkTerm::Func { .. }) && !out.contains(t) {
                out.push(t.clone());
            }
        }
    }
    out
}

fn frontier(rule: &SkRule) -> Vec<SkTerm> {
    let mut out = Vec::new();
    for a in &rule.body {
        for t in &a.args {
            if matches!(t, SkTerm::Var(_)) && !out.contains(t) && rule.head.iter().any(|h| h.args.contains(t)) {
                out.push(t.clone());
            }
        }
    }
    out
}

/// The least superset of `start` closed under copying: whenever every body
/// place of a frontier variable is covered, its head places are added.
pub fn move_places(rules: &[SkRule], start: Vec<Place>) -> Vec<Place> {
    let mut m = start;
    loop {
        let mut grew = false;
        for r in rules {
            for x in frontier(r) {
                if covered(&places_of(&r.body, &x), &m) {
                    for p in places_of(&r.head, &x) {
                        if !m.contains(&p) {
                            m.push(p);
                            grew = true;
                        }
                    }
                }
            }
        }
        if !grew {
            return m;
        }
    }
}

/// Pairs `(k, l)` such that a null invented by rule `k` may reach every body
/// place of some frontier variable of rule `l`.
pub fn trigger_relation(deps: &[Dependency]) -> Result<Vec<(usize, usize)>, ClassError> {
    require_tgds(deps)?;
    let rules = skolemize(deps, Flavor::SemiOblivious).expect("tgds only");
    let moves: Vec<Vec<Vec<Place>>> = rules
        .iter()
        .map(|r| {
            skolem_terms(r)
                .iter()
                .map(|f| move_places(&rules, places_of(&r.head, f)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (k, mk) in moves.iter().enumerate() {
        for (l, r) in rules.iter().enumerate() {
            let hit = frontier(r)
                .iter()
                .any(|x| mk.iter().any(|m| covered(&places_of(&r.body, x), m)));
            if hit {
                out.push((k, l));
            }
        }
    }
    Ok(out)
}

/// A cycle of dependency indices `[k0, k1, ..., k0]` in the relation.
fn relation_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    if let Some(&(k, _)) = edges.iter().find(|(a, b)| a == b) {
        return Some(vec![k, k]);
    }
    let mut g: DiGraph<usize, ()> = DiGraph::new();
    let nodes: Vec<_> = (0..n).map(|k| g.add_node(k)).collect();
    for &(a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let scc = tarjan_scc(&g).into_iter().find(|c| c.len() > 1)?;
    let start = scc[0];
    let mut prev = HashMap::new();
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if w == start {
                let mut path = vec![g[start]];
                let mut cur = v;
                while cur != start {
                    path.push(g[cur]);
                    cur = prev[&cur];
                }
                path.push(g[start]);
                path.reverse();
                return Some(path);
            }
            if scc.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a strongly connected component of size > 1 has a cycle through each vertex")
}

/// Super-weak acyclicity: the trigger relation has no cycle. The witness is
/// a cycle of dependency indices.
pub fn is_swa(deps: &[Dependency]) -> Result<Verdict<Vec<usize>>, ClassError> {
    let rel = trigger_relation(deps)?;
    Ok(match relation_cycle(deps.len(), &rel) {
        Some(c) => Verdict::no(c),
        None => Verdict::yes(),
    })
}
