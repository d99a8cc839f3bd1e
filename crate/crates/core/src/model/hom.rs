use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;

use super::instance::Instance;
use super::term::{Atom, Term};

/// A finite partial map on terms, identity on constants and on every term
/// outside its domain.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    map: BTreeMap<Term, Term>,
}

impl Homomorphism {
    pub fn new() -> Homomorphism {
        Homomorphism::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Term, Term)>) -> Homomorphism {
        let mut h = Homomorphism::new();
        for (k, v) in pairs {
            h.insert(k, v);
        }
        h
    }

    /// Binds `from` to `to`. Constants are never keys.
    pub fn insert(&mut self, from: Term, to: Term) {
        assert!(!from.is_const(), "homomorphisms are the identity on constants");
        self.map.insert(from, to);
    }

    pub fn get(&self, t: &Term) -> Option<&Term> {
        self.map.get(t)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.map.contains_key(t)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Term)> {
        self.map.iter()
    }

    pub fn apply(&self, t: &Term) -> Term {
        self.map.get(t).cloned().unwrap_or_else(|| t.clone())
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom {
            rel: a.rel.clone(),
            args: a.args.iter().map(|t| self.apply(t)).collect(),
        }
    }

    pub fn apply_atoms<'a>(&self, atoms: impl IntoIterator<Item = &'a Atom>) -> Vec<Atom> {
        atoms.into_iter().map(|a| self.apply_atom(a)).collect()
    }

    /// `self` followed by `then`: t ↦ then(self(t)).
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        let mut out = Homomorphism::new();
        for (k, v) in &self.map {
            out.map.insert(k.clone(), then.apply(v));
        }
        for (k, v) in &then.map {
            if !self.map.contains_key(k) {
                out.map.insert(k.clone(), v.clone());
            }
        }
        out
    }

    /// The restriction to `keys` (keys absent from the map are skipped).
    pub fn restrict<'a>(&self, keys: impl IntoIterator<Item = &'a Term>) -> Homomorphism {
        let mut out = Homomorphism::new();
        for k in keys {
            if let Some(v) = self.map.get(k) {
                out.map.insert(k.clone(), v.clone());
            }
        }
        out
    }

    /// Images of `keys`, in the given order.
    pub fn images<'a>(&self, keys: impl IntoIterator<Item = &'a Term>) -> Vec<Term> {
        keys.into_iter().map(|k| self.apply(k)).collect()
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}/{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All extensions of `base` mapping `source` into `target`, at most `limit`.
///
/// Variables and nulls of `source` are mappable; constants must match. The
/// search is backtracking with the most constrained atom expanded first and
/// candidates tried in the target's insertion order.
pub fn find_homomorphisms(
    source: &[Atom],
    target: &Instance,
    base: &Homomorphism,
    limit: Option<usize>,
) -> Vec<Homomorphism> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    for_each_homomorphism(source, target, base, None, |h| {
        out.push(h.clone());
        if Some(out.len()) == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

pub fn find_homomorphism(source: &[Atom], target: &Instance, base: &Homomorphism) -> Option<Homomorphism> {
    find_homomorphisms(source, target, base, Some(1)).pop()
}

pub fn exists_homomorphism(source: &[Atom], target: &Instance, base: &Homomorphism) -> bool {
    find_homomorphism(source, target, base).is_some()
}

/// Homomorphism from instance `a` to instance `b` (nulls mappable).
pub fn instance_hom(a: &Instance, b: &Instance) -> Option<Homomorphism> {
    let atoms: Vec<Atom> = a.iter().cloned().collect();
    find_homomorphism(&atoms, b, &Homomorphism::new())
}

/// True iff homomorphisms exist in both directions.
pub fn hom_equivalent(a: &Instance, b: &Instance) -> bool {
    instance_hom(a, b).is_some() && instance_hom(b, a).is_some()
}

/// Isomorphism up to renaming of nulls: a bijective null renaming mapping one
/// instance onto the other.
pub fn isomorphic(a: &Instance, b: &Instance) -> bool {
    if a.len() != b.len() || a.nulls().len() != b.nulls().len() {
        return false;
    }
    let atoms: Vec<Atom> = a.iter().cloned().collect();
    let mut found = false;
    for_each_homomorphism(&atoms, b, &Homomorphism::new(), None, |h| {
        let image = a.map(h);
        if image.len() == b.len() {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Callback-driven search; `exclude` removes one target atom from the
/// candidates (used when looking for retractions).
pub fn for_each_homomorphism(
    source: &[Atom],
    target: &Instance,
    base: &Homomorphism,
    exclude: Option<&Atom>,
    f: impl FnMut(&Homomorphism) -> ControlFlow<()>,
) {
    let exclude = exclude.and_then(|a| target.index_of(a));
    let binding: HashMap<Term, Term> = base.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    let mut s = Search {
        target,
        exclude,
        atoms: source,
        done: vec![false; source.len()],
        binding,
        trail: Vec::new(),
        f,
        stop: false,
    };
    s.rec(source.len());
}

struct Search<'a, F> {
    target: &'a Instance,
    exclude: Option<usize>,
    atoms: &'a [Atom],
    done: Vec<bool>,
    binding: HashMap<Term, Term>,
    trail: Vec<Term>,
    f: F,
    stop: bool,
}

impl<'a, F: FnMut(&Homomorphism) -> ControlFlow<()>> Search<'a, F> {
    fn image<'b>(&'b self, t: &'b Term) -> Option<&'b Term> {
        if t.is_const() {
            Some(t)
        } else {
            self.binding.get(t)
        }
    }

    /// The pending atom with the shortest candidate list.
    fn pick(&self) -> (usize, &'a [usize]) {
        let mut best: Option<(usize, &'a [usize])> = None;
        for (i, a) in self.atoms.iter().enumerate() {
            if self.done[i] {
                continue;
            }
            let mut list = self.target.rel_postings(&a.rel);
            for (p, t) in a.args.iter().enumerate() {
                if let Some(v) = self.image(t) {
                    let l = self.target.pos_postings(&a.rel, p, v);
                    if l.len() < list.len() {
                        list = l;
                    }
                }
            }
            if best.is_none_or(|(_, b)| list.len() < b.len()) {
                best = Some((i, list));
                if list.is_empty() {
                    break;
                }
            }
        }
        best.expect("pick called with no pending atoms")
    }

    fn rec(&mut self, remaining: usize) {
        if remaining == 0 {
            let h = Homomorphism {
                map: self.binding.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            };
            if (self.f)(&h).is_break() {
                self.stop = true;
            }
            return;
        }
        let (ai, list) = self.pick();
        let atom = &self.atoms[ai];
        self.done[ai] = true;
        for &ci in list {
            if Some(ci) == self.exclude {
                continue;
            }
            let cand = self.target.get(ci);
            if cand.args.len() != atom.args.len() {
                continue;
            }
            let mark = self.trail.len();
            let mut ok = true;
            for (s, v) in atom.args.iter().zip(&cand.args) {
                match self.image(s) {
                    Some(x) => {
                        if x != v {
                            ok = false;
                            break;
                        }
                    }
                    None => {
                        self.binding.insert(s.clone(), v.clone());
                        self.trail.push(s.clone());
                    }
                }
            }
            if ok {
                self.rec(remaining - 1);
            }
            for t in self.trail.drain(mark..) {
                self.binding.remove(&t);
            }
            if self.stop {
                break;
            }
        }
        self.done[ai] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> Term {
        Term::constant(s)
    }
    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn two_images_in_insertion_order() {
        let target: Instance = [
            Atom::new("R", vec![c("a"), c("b")]),
            Atom::new("R", vec![c("a"), c("c")]),
        ]
        .into_iter()
        .collect();
        let hs = find_homomorphisms(&[Atom::new("R", vec![v("x"), v("y")])], &target, &Homomorphism::new(), None);
        assert_eq!(hs.len(), 2);
        assert_eq!(hs[0].to_string(), "{x/'a', y/'b'}");
        assert_eq!(hs[1].to_string(), "{x/'a', y/'c'}");
    }

    #[test]
    fn gadget_negation_pairs() {
        let target: Instance = [
            Atom::new("N", vec![c("0"), c("1")]),
            Atom::new("N", vec![c("1"), c("0")]),
        ]
        .into_iter()
        .collect();
        let hs = find_homomorphisms(&[Atom::new("N", vec![v("x"), v("x'")])], &target, &Homomorphism::new(), None);
        assert_eq!(hs.len(), 2);
    }

    fn triangle() -> Instance {
        let mut k3 = Instance::new();
        for a in ["r", "g", "b"] {
            for b in ["r", "g", "b"] {
                if a != b {
                    k3.insert(Atom::new("E", vec![c(a), c(b)]));
                }
            }
        }
        k3
    }

    #[test]
    fn symmetric_edge_into_triangle() {
        let src = [Atom::new("E", vec![v("x"), v("y")]), Atom::new("E", vec![v("y"), v("x")])];
        let hs = find_homomorphisms(&src, &triangle(), &Homomorphism::new(), None);
        assert_eq!(hs.len(), 6);
    }

    #[test]
    fn limit_and_base() {
        let src = [Atom::new("E", vec![v("x"), v("y")])];
        let base = Homomorphism::from_pairs([(v("x"), c("r"))]);
        let hs = find_homomorphisms(&src, &triangle(), &base, None);
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| h.get(&v("x")) == Some(&c("r"))));
        assert_eq!(find_homomorphisms(&src, &triangle(), &base, Some(1)).len(), 1);
    }

    #[test]
    fn hom_equivalence_examples() {
        let i: Instance = [Atom::new("R", vec![c("a"), Term::null("he1")])].into_iter().collect();
        let j: Instance = [Atom::new("R", vec![c("a"), Term::null("he2")])].into_iter().collect();
        let k: Instance = [Atom::new("R", vec![c("a"), c("b")])].into_iter().collect();
        assert!(hom_equivalent(&i, &i));
        assert!(hom_equivalent(&i, &j));
        assert!(!hom_equivalent(&k, &i));
    }

    #[test]
    fn composition_is_associative() {
        let f = Homomorphism::from_pairs([(v("x"), v("y"))]);
        let g = Homomorphism::from_pairs([(v("y"), v("z")), (v("w"), c("a"))]);
        let h = Homomorphism::from_pairs([(v("z"), c("b"))]);
        assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
        assert_eq!(f.then(&g).then(&h).apply(&v("x")), c("b"));
    }

    /// Brute force: every assignment of the source variables into dom(target).
    fn brute(source: &[Atom], target: &Instance) -> Vec<Homomorphism> {
        let vars = crate::model::vars_of(source);
        let dom: Vec<Term> = target.dom().into_iter().collect();
        let mut out = Vec::new();
        let n = vars.len() as u32;
        if dom.is_empty() {
            if source.is_empty() {
                out.push(Homomorphism::new());
            }
            return out;
        }
        for code in 0..dom.len().pow(n) {
            let mut rest = code;
            let mut h = Homomorphism::new();
            for x in &vars {
                h.insert(x.clone(), dom[rest % dom.len()].clone());
                rest /= dom.len();
            }
            if source.iter().all(|a| target.contains(&h.apply_atom(a))) {
                out.push(h);
            }
        }
        out
    }

    fn arb_case() -> impl Strategy<Value = (Vec<Atom>, Instance)> {
        let var_names = ["x", "y", "z", "w"];
        let consts = ["a", "b", "c", "d", "e"];
        let src_term = prop_oneof![
            4 => (0..4usize).prop_map(move |i| Term::var(var_names[i])),
            1 => (0..2usize).prop_map(move |i| Term::constant(consts[i])),
        ];
        let src_atom = (0..2usize, proptest::collection::vec(src_term, 2))
            .prop_map(|(r, args)| Atom::new(["R", "S"][r], args));
        let tgt_atom = (0..2usize, proptest::collection::vec(0..5usize, 2)).prop_map(move |(r, args)| {
            Atom::new(["R", "S"][r], args.into_iter().map(|i| Term::constant(consts[i])).collect())
        });
        (
            proptest::collection::vec(src_atom, 1..4),
            proptest::collection::vec(tgt_atom, 0..10).prop_map(|v| v.into_iter().collect::<Instance>()),
        )
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force((source, target) in arb_case()) {
            let mut got = find_homomorphisms(&source, &target, &Homomorphism::new(), None);
            let mut want = brute(&source, &target);
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}
