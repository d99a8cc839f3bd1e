//! Decision procedures for the orders ≺ (Str), ≺_c (CStr) and ≺_P (IR).
//!
//! A witness is built from an assignment sending each body atom of `ξ2`
//! either into the pre-instance `I` or onto a head atom of `ξ1`, followed by
//! the most general unifier of the chosen pairs. Every condition of the
//! definitions is preserved under identifying more terms in reverse, so the
//! most general witness of each assignment is the only one worth testing.

use std::collections::{BTreeSet, HashMap};

use crate::model::{exists_homomorphism, Atom, Dependency, Homomorphism, Instance, Position, Term};

/// `ξ1 ≺ ξ2` witness: the instance `I`, the (extended) trigger map of `ξ1`,
/// the instantiation of `ξ2`, and an atom `t` of the head of `ξ1` whose image
/// is new in `J` and used by `h2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecedenceWitness {
    pub t: Atom,
    /// Universal variables of `ξ1` to `dom(I)`, existential ones to fresh nulls.
    pub h1: Homomorphism,
    /// Universal variables of `ξ2` to `dom(J)`.
    pub h2: Homomorphism,
    pub instance: Instance,
}

impl PrecedenceWitness {
    /// `J = I ∪ h1(β1)`.
    pub fn result(&self, xi1: &Dependency) -> Instance {
        let mut j = self.instance.clone();
        for a in self.h1.apply_atoms(xi1.head_atoms()) {
            j.insert(a);
        }
        j
    }
}

/// Which order to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order<'p> {
    /// Active trigger of `ξ1` required.
    Str,
    /// Oblivious step, any trigger.
    CStr,
    /// Oblivious step plus the null-position condition over `P`.
    Restricted(&'p BTreeSet<Position>),
}

/// Most general pairs `(h1,h2)` with `h1(t) = h2(t')` for each `t'` in
/// `alpha2` over the relation of `t`. Variables of `t` and `alpha2` are
/// assumed disjoint; each class is represented by a constant if it holds
/// one, else by its first variable from `t`, else from `t'`.
pub fn mgu_pairs(t: &Atom, alpha2: &[Atom]) -> Vec<(Homomorphism, Homomorphism)> {
    let mut out = Vec::new();
    for t2 in alpha2 {
        if t2.rel != t.rel || t2.arity() != t.arity() {
            continue;
        }
        let mut uf = TermUf::default();
        let ok = t.args.iter().zip(&t2.args).all(|(a, b)| uf.union(a, b));
        if !ok {
            continue;
        }
        let rep = |uf: &mut TermUf, v: &Term| -> Term {
            let r = uf.find(v);
            if let Some(c) = uf.constant(r) {
                return c;
            }
            let members = uf.members(r);
            t.args
                .iter()
                .chain(&t2.args)
                .find(|x| x.is_var() && members.contains(x))
                .cloned()
                .unwrap_or_else(|| v.clone())
        };
        let mut h1 = Homomorphism::new();
        for v in t.vars() {
            let r = rep(&mut uf, v);
            h1.insert(v.clone(), r);
        }
        let mut h2 = Homomorphism::new();
        for v in t2.vars() {
            let r = rep(&mut uf, v);
            h2.insert(v.clone(), r);
        }
        out.push((h1, h2));
    }
    out
}

/// Union-find over terms where two distinct constants never merge.
#[derive(Default)]
struct TermUf {
    ids: HashMap<Term, usize>,
    terms: Vec<Term>,
    parent: Vec<usize>,
}

impl TermUf {
    fn id(&mut self, t: &Term) -> usize {
        if let Some(&i) = self.ids.get(t) {
            return i;
        }
        let i = self.terms.len();
        self.ids.insert(t.clone(), i);
        self.terms.push(t.clone());
        self.parent.push(i);
        i
    }

    fn find(&mut self, t: &Term) -> usize {
        let mut i = self.id(t);
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn members(&mut self, r: usize) -> Vec<Term> {
        (0..self.terms.len())
            .filter(|&i| {
                let mut j = i;
                while self.parent[j] != j {
                    j = self.parent[j];
                }
                j == r
            })
            .map(|i| self.terms[i].clone())
            .collect()
    }

    fn constant(&mut self, r: usize) -> Option<Term> {
        self.members(r).into_iter().find(Term::is_const)
    }

    fn union(&mut self, a: &Term, b: &Term) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        if self.constant(ra).is_some() && self.constant(rb).is_some() {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

/// Variables of the two rules kept apart by side.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Side {
    One,
    Two,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Univ1,
    Exist1,
    Univ2,
    Const,
}

/// Union-find over the variables of both rules and their constants.
#[derive(Clone)]
struct Classes {
    kind: Vec<Node>,
    parent: Vec<usize>,
}

impl Classes {
    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        let kinds = |c: &Classes, r: usize| -> Vec<Node> {
            (0..c.kind.len()).filter(|&i| c.find(i) == r).map(|i| c.kind[i]).collect()
        };
        let mut merged = kinds(self, ra);
        merged.extend(kinds(self, rb));
        let count = |k: Node| merged.iter().filter(|&&x| x == k).count();
        // Fresh nulls are pairwise distinct and differ from dom(I).
        if count(Node::Const) > 1 || count(Node::Exist1) > 1 {
            return false;
        }
        if count(Node::Exist1) == 1 && (count(Node::Const) > 0 || count(Node::Univ1) > 0) {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

/// The two rules flattened onto shared node indices.
struct Frame<'a> {
    xi1: &'a Dependency,
    xi2: &'a Dependency,
    index: HashMap<(Option<Side>, Term), usize>,
    terms: Vec<Term>,
    kinds: Vec<Node>,
}

impl<'a> Frame<'a> {
    fn new(xi1: &'a Dependency, xi2: &'a Dependency) -> Frame<'a> {
        let mut f = Frame {
            xi1,
            xi2,
            index: HashMap::new(),
            terms: Vec::new(),
            kinds: Vec::new(),
        };
        for v in xi1.universal_vars() {
            f.add(Some(Side::One), v, Node::Univ1);
        }
        for v in xi1.existential_vars() {
            f.add(Some(Side::One), v, Node::Exist1);
        }
        for v in xi2.universal_vars() {
            f.add(Some(Side::Two), v, Node::Univ2);
        }
        for a in xi1.atoms().chain(xi2.atoms()) {
            for t in &a.args {
                if t.is_const() {
                    f.add(None, t.clone(), Node::Const);
                }
            }
        }
        f
    }

    fn add(&mut self, side: Option<Side>, t: Term, kind: Node) {
        let key = (side, t.clone());
        if !self.index.contains_key(&key) {
            self.index.insert(key, self.terms.len());
            self.terms.push(t);
            self.kinds.push(kind);
        }
    }

    fn node(&self, side: Side, t: &Term) -> usize {
        if t.is_const() {
            self.index[&(None, t.clone())]
        } else {
            self.index[&(Some(side), t.clone())]
        }
    }

    fn classes(&self) -> Classes {
        Classes {
            kind: self.kinds.clone(),
            parent: (0..self.kinds.len()).collect(),
        }
    }
}

/// Concrete values for the classes of a unifier.
struct Valuation {
    value: Vec<Term>,
    fresh: BTreeSet<Term>,
}

impl Valuation {
    fn new(frame: &Frame, cls: &Classes) -> Valuation {
        let mut by_root: HashMap<usize, Term> = HashMap::new();
        let mut fresh = BTreeSet::new();
        for i in 0..frame.kinds.len() {
            let r = cls.find(i);
            if frame.kinds[i] == Node::Const {
                by_root.insert(r, frame.terms[i].clone());
            }
        }
        let mut value = Vec::with_capacity(frame.kinds.len());
        for i in 0..frame.kinds.len() {
            let r = cls.find(i);
            let v = by_root.entry(r).or_insert_with(Term::fresh_null).clone();
            if frame.kinds[i] == Node::Exist1 {
                fresh.insert(v.clone());
            }
            value.push(v);
        }
        Valuation { value, fresh }
    }

    fn map(&self, frame: &Frame, side: Side, vars: &[Term]) -> Homomorphism {
        Homomorphism::from_pairs(vars.iter().map(|v| (v.clone(), self.value[frame.node(side, v)].clone())))
    }
}

fn head_of(h: &Homomorphism, d: &Dependency) -> Vec<Atom> {
    h.apply_atoms(d.head_atoms())
}

/// Does some extension of `h` (fixing its images) send the head of `d` into `target`?
fn satisfied(h: &Homomorphism, d: &Dependency, target: &Instance) -> bool {
    let head = head_of(h, d);
    let mut base = Homomorphism::new();
    for a in &head {
        for t in &a.args {
            if t.is_null() {
                base.insert(t.clone(), t.clone());
            }
        }
    }
    exists_homomorphism(&head, target, &base)
}

fn positions_in(instance: &Instance, v: &Term) -> BTreeSet<Position> {
    instance.positions_of(v).into_iter().collect()
}

/// Decides `ξ1 ≺ ξ2` under `order`, returning a witness when it holds.
pub fn precedes(xi1: &Dependency, xi2: &Dependency, order: Order<'_>) -> Option<PrecedenceWitness> {
    if !xi1.is_tgd() || !xi2.is_tgd() {
        return None;
    }
    let frame = Frame::new(xi1, xi2);
    let mut choice = vec![None; xi2.body.len()];
    search(&frame, order, 0, frame.classes(), &mut choice)
}

fn search(
    frame: &Frame,
    order: Order<'_>,
    k: usize,
    cls: Classes,
    choice: &mut Vec<Option<usize>>,
) -> Option<PrecedenceWitness> {
    let body2 = &frame.xi2.body;
    if k == body2.len() {
        return check(frame, order, &cls, choice);
    }
    choice[k] = None;
    if let Some(w) = search(frame, order, k + 1, cls.clone(), choice) {
        return Some(w);
    }
    for (j, b) in frame.xi1.head_atoms().iter().enumerate() {
        let a = &body2[k];
        if a.rel != b.rel || a.arity() != b.arity() {
            continue;
        }
        let mut next = cls.clone();
        let ok = a
            .args
            .iter()
            .zip(&b.args)
            .all(|(x, y)| next.union(frame.node(Side::Two, x), frame.node(Side::One, y)));
        if ok {
            choice[k] = Some(j);
            if let Some(w) = search(frame, order, k + 1, next, choice) {
                return Some(w);
            }
        }
    }
    choice[k] = None;
    None
}

fn check(frame: &Frame, order: Order<'_>, cls: &Classes, choice: &[Option<usize>]) -> Option<PrecedenceWitness> {
    let (xi1, xi2) = (frame.xi1, frame.xi2);
    let val = Valuation::new(frame, cls);
    let mut vars1 = xi1.universal_vars();
    vars1.extend(xi1.existential_vars());
    let h1 = val.map(frame, Side::One, &vars1);
    let h2 = val.map(frame, Side::Two, &xi2.universal_vars());

    let mut inst = Instance::new();
    for a in h1.apply_atoms(&xi1.body) {
        inst.insert(a);
    }
    for (a, c) in xi2.body.iter().zip(choice) {
        if c.is_none() {
            let img = h2.apply_atom(a);
            if img.args.iter().any(|t| val.fresh.contains(t)) {
                return None;
            }
            inst.insert(img);
        }
    }
    let body2 = h2.apply_atoms(&xi2.body);
    let t = choice
        .iter()
        .zip(&body2)
        .filter_map(|(c, img)| c.filter(|_| !inst.contains(img)))
        .next()?;
    let mut j = inst.clone();
    for a in head_of(&h1, xi1) {
        j.insert(a);
    }
    if satisfied(&h2, xi2, &j) {
        return None;
    }
    match order {
        Order::CStr => {}
        Order::Str => {
            let h1u = h1.restrict(&xi1.universal_vars());
            if satisfied(&h1u, xi1, &inst) {
                return None;
            }
        }
        Order::Restricted(p) => {
            let ok = xi2.frontier().iter().any(|x| {
                let v = h2.apply(x);
                v.is_null() && positions_in(&inst, &v).is_subset(p)
            });
            if !ok {
                return None;
            }
        }
    }
    Some(PrecedenceWitness {
        t: xi1.head_atoms()[t].clone(),
        h1,
        h2,
        instance: inst,
    })
}

/// `ξ1 ≺_c ξ2`.
pub fn precedes_c(xi1: &Dependency, xi2: &Dependency) -> Option<PrecedenceWitness> {
    precedes(xi1, xi2, Order::CStr)
}

/// `ξ1 ≺ ξ2` with an active trigger of `ξ1`.
pub fn precedes_str(xi1: &Dependency, xi2: &Dependency) -> Option<PrecedenceWitness> {
    precedes(xi1, xi2, Order::Str)
}

/// `ξ1 ≺_P ξ2`.
pub fn precedes_p(xi1: &Dependency, xi2: &Dependency, p: &BTreeSet<Position>) -> Option<PrecedenceWitness> {
    precedes(xi1, xi2, Order::Restricted(p))
}
