//! Terms, atoms, instances, homomorphism search and cores.

mod core;
mod dependency;
mod hom;
mod instance;
mod term;

use std::collections::{BTreeSet, HashMap};

use indexmap::{IndexMap, IndexSet};
use petgraph::graph::DiGraph;

pub use self::core::{core, proper_retraction, retraction_avoiding};
pub use self::dependency::{constants_of, schema_of, DepKind, Dependency, Head};
pub use self::hom::{
    exists_homomorphism, find_homomorphism, find_homomorphisms, for_each_homomorphism, hom_equivalent,
    instance_hom, isomorphic, Homomorphism,
};
pub use self::instance::Instance;
pub use self::term::{vars_of, Atom, NullId, Position, Sym, Term};

pub(crate) use self::term::is_digits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("relation {rel} used with arity {found}, but it was first used with arity {expected}")]
pub struct ArityError {
    pub rel: String,
    pub expected: usize,
    pub found: usize,
}

/// Relation symbols with arities fixed at first use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schema {
    arities: IndexMap<Sym, usize>,
}

impl Schema {
    pub fn new() -> Schema {
        Schema::default()
    }

    pub fn observe(&mut self, atom: &Atom) -> Result<(), ArityError> {
        match self.arities.get(&atom.rel) {
            Some(&k) if k != atom.arity() => Err(ArityError {
                rel: atom.rel.to_string(),
                expected: k,
                found: atom.arity(),
            }),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(atom.rel.clone(), atom.arity());
                Ok(())
            }
        }
    }

    pub fn with(mut self, rel: &str, arity: usize) -> Schema {
        self.arities.insert(rel.into(), arity);
        self
    }

    pub fn arity(&self, rel: &str) -> Option<usize> {
        self.arities.get(rel).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, usize)> {
        self.arities.iter().map(|(r, &k)| (r, k))
    }

    pub fn contains(&self, rel: &str) -> bool {
        self.arities.contains_key(rel)
    }

    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    /// All positions `(R,i)`, relation by relation.
    pub fn positions(&self) -> Vec<Position> {
        self.iter()
            .flat_map(|(r, k)| (1..=k).map(move |i| Position { rel: r.clone(), index: i }))
            .collect()
    }
}

/// Every atom over `schema` built from the constants of `instance` plus
/// `extra_constants`.
pub fn herbrand_base(instance: &Instance, schema: &Schema, extra_constants: &[Term]) -> Instance {
    let mut consts: IndexSet<Term> = instance.constants();
    for c in extra_constants {
        assert!(c.is_const(), "herbrand_base takes constants, got {c}");
        consts.insert(c.clone());
    }
    let consts: Vec<Term> = consts.into_iter().collect();
    let mut out = Instance::new();
    for (rel, k) in schema.iter() {
        if k > 0 && consts.is_empty() {
            continue;
        }
        let total = consts.len().pow(k as u32);
        for code in 0..total {
            let mut rest = code;
            let mut args = vec![consts[0].clone(); k];
            for slot in args.iter_mut().rev() {
                *slot = consts[rest % consts.len()].clone();
                rest /= consts.len();
            }
            out.insert(Atom { rel: rel.clone(), args });
        }
    }
    out
}

/// The graph of an instance over `{E, L, R, D, Estar}`: `E(x,z,y)` gives the
/// edge `(x,y)`; `L`, `R` and `Estar` atoms give their two arguments.
pub fn instance_graph(instance: &Instance) -> BTreeSet<(Term, Term)> {
    let mut out = BTreeSet::new();
    for a in instance.iter() {
        match (&*a.rel, a.args.as_slice()) {
            ("E", [x, _, y]) => {
                out.insert((x.clone(), y.clone()));
            }
            ("L" | "R" | "Estar", [x, y]) => {
                out.insert((x.clone(), y.clone()));
            }
            _ => {}
        }
    }
    out
}

/// Does the directed graph given by `edges` contain a cycle (self-loops count)?
pub fn is_cyclic<T: Clone + Eq + std::hash::Hash>(edges: &BTreeSet<(T, T)>) -> bool {
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let mut idx = HashMap::new();
    let mut node = |g: &mut DiGraph<(), ()>, t: &T| *idx.entry(t.clone()).or_insert_with(|| g.add_node(()));
    for (a, b) in edges {
        let (x, y) = (node(&mut g, a), node(&mut g, b));
        g.add_edge(x, y, ());
    }
    petgraph::algo::is_cyclic_directed(&g)
}
