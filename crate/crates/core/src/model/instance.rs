use std::collections::{BTreeMap, HashMap};
use std::fmt;

use indexmap::{IndexMap, IndexSet};

use super::hom::Homomorphism;
use super::term::{Atom, Position, Sym, Term};

/// A finite set of ground atoms kept in insertion order, with per-relation and
/// per-position indexes for homomorphism search.
#[derive(Clone, Default)]
pub struct Instance {
    atoms: IndexSet<Atom>,
    by_rel: HashMap<Sym, Vec<usize>>,
    by_pos: HashMap<(Sym, usize, Term), Vec<usize>>,
}

impl Instance {
    pub fn new() -> Instance {
        Instance::default()
    }

    /// Adds `atom`; returns false if it was already present.
    pub fn insert(&mut self, atom: Atom) -> bool {
        debug_assert!(atom.is_ground(), "instances hold no variables: {atom}");
        if self.atoms.contains(&atom) {
            return false;
        }
        let idx = self.atoms.len();
        self.by_rel.entry(atom.rel.clone()).or_default().push(idx);
        for (i, t) in atom.args.iter().enumerate() {
            self.by_pos
                .entry((atom.rel.clone(), i, t.clone()))
                .or_default()
                .push(idx);
        }
        self.atoms.insert(atom);
        true
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }

    pub fn get(&self, idx: usize) -> &Atom {
        &self.atoms[idx]
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.get_index_of(atom)
    }

    pub(crate) fn rel_postings(&self, rel: &Sym) -> &[usize] {
        self.by_rel.get(rel).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn pos_postings(&self, rel: &Sym, i: usize, t: &Term) -> &[usize] {
        // The key clone is cheap: symbols and labels are reference counted.
        self.by_pos
            .get(&(rel.clone(), i, t.clone()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// dom(I): every term occurring, in order of first occurrence.
    pub fn dom(&self) -> IndexSet<Term> {
        self.atoms.iter().flat_map(|a| a.args.iter().cloned()).collect()
    }

    pub fn nulls(&self) -> IndexSet<Term> {
        self.dom().into_iter().filter(Term::is_null).collect()
    }

    pub fn constants(&self) -> IndexSet<Term> {
        self.dom().into_iter().filter(Term::is_const).collect()
    }

    /// Relation symbols with their arities, in order of first occurrence.
    pub fn schema(&self) -> IndexMap<Sym, usize> {
        let mut out = IndexMap::new();
        for a in &self.atoms {
            out.entry(a.rel.clone()).or_insert(a.arity());
        }
        out
    }

    /// The image h(I), keeping the order of first occurrence.
    pub fn map(&self, h: &Homomorphism) -> Instance {
        self.atoms.iter().map(|a| h.apply_atom(a)).collect()
    }

    /// Keeps the atoms satisfying `keep`, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&Atom) -> bool) -> Instance {
        self.atoms.iter().filter(|a| keep(a)).cloned().collect()
    }

    pub fn union(&self, other: &Instance) -> Instance {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    pub fn is_subset(&self, other: &Instance) -> bool {
        self.atoms.iter().all(|a| other.contains(a))
    }

    /// Positions in which each term occurs.
    pub fn positions_of(&self, term: &Term) -> Vec<Position> {
        let mut out: Vec<Position> = Vec::new();
        for a in &self.atoms {
            for (i, t) in a.args.iter().enumerate() {
                if t == term {
                    let p = Position {
                        rel: a.rel.clone(),
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

    /// Atoms grouped by relation, sorted; handy for stable comparisons.
    pub fn sorted(&self) -> BTreeMap<Sym, Vec<Atom>> {
        let mut out: BTreeMap<Sym, Vec<Atom>> = BTreeMap::new();
        for a in &self.atoms {
            out.entry(a.rel.clone()).or_default().push(a.clone());
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }
}

impl PartialEq for Instance {
    /// Set equality; insertion order is ignored.
    fn eq(&self, other: &Instance) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl Eq for Instance {}

impl FromIterator<Atom> for Instance {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Instance {
        let mut out = Instance::new();
        out.extend(iter);
        out
    }
}

impl Extend<Atom> for Instance {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        for a in iter {
            self.insert(a);
        }
    }
}

impl<'a> IntoIterator for &'a Instance {
    type Item = &'a Atom;
    type IntoIter = indexmap::set::Iter<'a, Atom>;
    fn into_iter(self) -> Self::IntoIter {
        self.atoms.iter()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Term {
        Term::constant(s)
    }

    #[test]
    fn set_semantics() {
        let mut i = Instance::new();
        assert!(i.insert(Atom::new("R", vec![c("a"), c("b")])));
        assert!(!i.insert(Atom::new("R", vec![c("a"), c("b")])));
        assert_eq!(i.len(), 1);
    }

    #[test]
    fn equality_ignores_order() {
        let a = Atom::new("R", vec![c("a")]);
        let b = Atom::new("R", vec![c("b")]);
        let i: Instance = [a.clone(), b.clone()].into_iter().collect();
        let j: Instance = [b, a].into_iter().collect();
        assert_eq!(i, j);
    }

    #[test]
    fn dom_and_positions() {
        let n = Term::null("inst_pos");
        let i: Instance = [
            Atom::new("R", vec![c("a"), n.clone()]),
            Atom::new("S", vec![n.clone()]),
        ]
        .into_iter()
        .collect();
        assert_eq!(i.dom().len(), 2);
        assert_eq!(i.nulls().len(), 1);
        assert_eq!(
            i.positions_of(&n),
            vec![Position::new("R", 2), Position::new("S", 1)]
        );
    }

    #[test]
    fn postings_follow_insertion_order() {
        let i: Instance = [
            Atom::new("R", vec![c("a"), c("b")]),
            Atom::new("S", vec![c("a")]),
            Atom::new("R", vec![c("a"), c("c")]),
        ]
        .into_iter()
        .collect();
        let rel: Sym = "R".into();
        assert_eq!(i.rel_postings(&rel), &[0, 2]);
        assert_eq!(i.pos_postings(&rel, 0, &c("a")), &[0, 2]);
        assert_eq!(i.pos_postings(&rel, 1, &c("c")), &[2]);
    }
}
