use std::collections::HashMap;

use super::hom::Homomorphism;
use super::instance::Instance;
use super::term::{Atom, Term};

/// The core of `instance`.
///
/// Atoms carrying a null are visited once, in insertion order; whenever an
/// endomorphism avoiding the atom exists, the instance is replaced by its
/// image. An atom that cannot be avoided stays unavoidable in every retract,
/// so a single pass suffices.
pub fn core(instance: &Instance) -> Instance {
    let order: Vec<Atom> = instance.iter().filter(|a| a.has_null()).cloned().collect();
    let mut cur = instance.clone();
    for t in &order {
        if !cur.contains(t) {
            continue;
        }
        if let Some(h) = retraction_avoiding(&cur, t) {
            let image = cur.map(&h);
            cur = cur.filter(|a| image.contains(a));
        }
    }
    cur
}

/// An endomorphism `h` with `h(I) ⊊ I`, if one exists.
pub fn proper_retraction(instance: &Instance) -> Option<Homomorphism> {
    instance
        .iter()
        .filter(|a| a.has_null())
        .find_map(|t| retraction_avoiding(instance, t))
}

/// An endomorphism of `instance` whose image misses `t`.
///
/// Nulls default to the identity. Only atoms touching a null that moves (and
/// `t` itself) need an image, so the search stays near `t`.
pub fn retraction_avoiding(instance: &Instance, t: &Atom) -> Option<Homomorphism> {
    let excluded = instance.index_of(t)?;
    let mut by_null: HashMap<Term, Vec<usize>> = HashMap::new();
    for (i, a) in instance.iter().enumerate() {
        for n in a.args.iter().filter(|x| x.is_null()) {
            let v = by_null.entry(n.clone()).or_default();
            if v.last() != Some(&i) {
                v.push(i);
            }
        }
    }
    let mut s = Local {
        instance,
        excluded,
        by_null,
        binding: HashMap::new(),
        trail: Vec::new(),
        placed: vec![false; instance.len()],
        placed_trail: Vec::new(),
        moved: Vec::new(),
    };
    if s.rec() {
        Some(Homomorphism::from_pairs(
            s.binding.into_iter().filter(|(k, v)| k != v),
        ))
    } else {
        None
    }
}

struct Local<'a> {
    instance: &'a Instance,
    excluded: usize,
    by_null: HashMap<Term, Vec<usize>>,
    binding: HashMap<Term, Term>,
    trail: Vec<Term>,
    placed: Vec<bool>,
    placed_trail: Vec<usize>,
    moved: Vec<Term>,
}

impl Local<'_> {
    fn image<'b>(&'b self, x: &'b Term) -> Option<&'b Term> {
        if x.is_null() {
            self.binding.get(x)
        } else {
            Some(x)
        }
    }

    /// Atoms that still need an image: `t`, and every atom with a moved null.
    fn open(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if !self.placed[self.excluded] {
            out.push(self.excluded);
        }
        for n in &self.moved {
            for &i in &self.by_null[n] {
                if !self.placed[i] && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out
    }

    fn candidates(&self, i: usize) -> Vec<usize> {
        let a = self.instance.get(i);
        let mut list = self.instance.rel_postings(&a.rel);
        for (p, x) in a.args.iter().enumerate() {
            if let Some(v) = self.image(x) {
                let l = self.instance.pos_postings(&a.rel, p, v);
                if l.len() < list.len() {
                    list = l;
                }
            }
        }
        let mut out: Vec<(usize, usize)> = Vec::new();
        'cand: for &c in list {
            if c == self.excluded || self.instance.get(c).arity() != a.arity() {
                continue;
            }
            let b = self.instance.get(c);
            let mut local: Vec<(&Term, &Term)> = Vec::new();
            let mut fresh_moves = 0;
            for (x, y) in a.args.iter().zip(&b.args) {
                match self.image(x) {
                    Some(v) if v != y => continue 'cand,
                    Some(_) => {}
                    None => {
                        if let Some((_, v)) = local.iter().find(|(k, _)| *k == x) {
                            if *v != y {
                                continue 'cand;
                            }
                        } else {
                            if x != y {
                                fresh_moves += 1;
                            }
                            local.push((x, y));
                        }
                    }
                }
            }
            out.push((fresh_moves, c));
        }
        out.sort_by_key(|&(m, _)| m);
        out.into_iter().map(|(_, c)| c).collect()
    }

    fn rec(&mut self) -> bool {
        let open = self.open();
        if open.is_empty() {
            return true;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for i in open {
            let c = self.candidates(i);
            if best.as_ref().is_none_or(|(_, b)| c.len() < b.len()) {
                let empty = c.is_empty();
                best = Some((i, c));
                if empty {
                    break;
                }
            }
        }
        let (i, cands) = best.expect("open is non-empty");
        let a = self.instance.get(i);
        for c in cands {
            let b = self.instance.get(c);
            let (mark, pmark, mmark) = (self.trail.len(), self.placed_trail.len(), self.moved.len());
            for (x, y) in a.args.iter().zip(&b.args) {
                if x.is_null() && !self.binding.contains_key(x) {
                    self.binding.insert(x.clone(), y.clone());
                    self.trail.push(x.clone());
                    if x != y {
                        self.moved.push(x.clone());
                    }
                }
            }
            self.placed[i] = true;
            self.placed_trail.push(i);
            if self.rec() {
                return true;
            }
            for x in self.trail.drain(mark..) {
                self.binding.remove(&x);
            }
            for p in self.placed_trail.drain(pmark..) {
                self.placed[p] = false;
            }
            self.moved.truncate(mmark);
        }
        false
    }
}
