//! Witness search for the precedence orders, written from the definitions
//! alone: an instance `I`, a trigger `(ξ1,h1)` on `I`, one oblivious step to
//! `J`, and values `ā` over `dom(J)` with `I ⊨ ξ2(ā)` and `J ⊭ ξ2(ā)`.
//!
//! Values are taken up to renaming: every universal variable is sent to a
//! dependency constant, to an anonymous element (numbered in order of first
//! use), or, for `ξ2`, to a null invented by the step. Candidate instances
//! are `h1(α1)` plus any subset of the atoms of `ā(α2)` that avoid invented
//! nulls; other atoms can only make `ξ2(ā)` or the head of `ξ1` satisfied,
//! so they never help. Every candidate has at most `|α1|+|α2|` atoms.

use std::collections::{BTreeSet, HashMap};

use chasekit::model::{Atom, Dependency, Sym, Term};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    /// Any trigger for the first dependency.
    C,
    /// The trigger for the first dependency must be active on `I`.
    Str,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Val {
    Const(Sym),
    Elem(usize),
    Fresh(usize),
}

type Fact = (Sym, Vec<Val>);

fn universal(d: &Dependency) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::new();
    for a in &d.body {
        for t in &a.args {
            if let Term::Var(v) = t {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
    }
    out
}

fn existential(d: &Dependency) -> Vec<Sym> {
    let u = universal(d);
    let mut out: Vec<Sym> = Vec::new();
    for a in d.head_atoms() {
        for t in &a.args {
            if let Term::Var(v) = t {
                if !u.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
    }
    out
}

fn constants(ds: &[&Dependency]) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::new();
    for d in ds {
        for a in d.body.iter().chain(d.head_atoms()) {
            for t in &a.args {
                if let Term::Const(c) = t {
                    if !out.contains(c) {
                        out.push(c.clone());
                    }
                }
            }
        }
    }
    out
}

fn ground(a: &Atom, env: &HashMap<Sym, Val>) -> Option<Fact> {
    let mut args = Vec::new();
    for t in &a.args {
        args.push(match t {
            Term::Const(c) => Val::Const(c.clone()),
            Term::Var(v) => env.get(v)?.clone(),
            Term::Null(_) => panic!("dependencies carry no nulls"),
        });
    }
    Some((a.rel.clone(), args))
}

/// Does some extension of `env` send every atom of `head` into `facts`?
fn satisfied(head: &[Atom], env: &HashMap<Sym, Val>, facts: &BTreeSet<Fact>) -> bool {
    let open: Vec<Sym> = {
        let mut v: Vec<Sym> = Vec::new();
        for a in head {
            for t in &a.args {
                if let Term::Var(x) = t {
                    if !env.contains_key(x) && !v.contains(x) {
                        v.push(x.clone());
                    }
                }
            }
        }
        v
    };
    let dom: Vec<Val> = facts
        .iter()
        .flat_map(|(_, args)| args.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut env = env.clone();
    fn go(k: usize, open: &[Sym], dom: &[Val], env: &mut HashMap<Sym, Val>, head: &[Atom], facts: &BTreeSet<Fact>) -> bool {
        if k == open.len() {
            return head.iter().all(|a| facts.contains(&ground(a, env).unwrap()));
        }
        for v in dom {
            env.insert(open[k].clone(), v.clone());
            if go(k + 1, open, dom, env, head, facts) {
                return true;
            }
        }
        env.remove(&open[k]);
        false
    }
    go(0, &open, &dom, &mut env, head, facts)
}

/// All assignments of `vars` up to renaming of anonymous elements, starting
/// with `used` elements already in play.
fn assignments(vars: &[Sym], consts: &[Sym], used: usize, fresh: usize) -> Vec<(HashMap<Sym, Val>, usize)> {
    let mut out = Vec::new();
    fn go(
        k: usize,
        vars: &[Sym],
        consts: &[Sym],
        fresh: usize,
        used: usize,
        env: &mut HashMap<Sym, Val>,
        out: &mut Vec<(HashMap<Sym, Val>, usize)>,
    ) {
        if k == vars.len() {
            out.push((env.clone(), used));
            return;
        }
        let mut choices: Vec<(Val, usize)> = consts.iter().map(|c| (Val::Const(c.clone()), used)).collect();
        choices.extend((0..used).map(|i| (Val::Elem(i), used)));
        choices.push((Val::Elem(used), used + 1));
        choices.extend((0..fresh).map(|j| (Val::Fresh(j), used)));
        for (v, next) in choices {
            env.insert(vars[k].clone(), v);
            go(k + 1, vars, consts, fresh, next, env, out);
        }
        env.remove(&vars[k]);
    }
    go(0, vars, consts, fresh, used, &mut HashMap::new(), &mut out);
    out
}

/// Searches for a witness of `ξ1` preceding `ξ2` under `kind`.
pub fn precedes_brute(xi1: &Dependency, xi2: &Dependency, kind: Kind) -> bool {
    let consts = constants(&[xi1, xi2]);
    let (u1, z1, u2) = (universal(xi1), existential(xi1), universal(xi2));
    for (h1, used) in assignments(&u1, &consts, 0, 0) {
        let i0: BTreeSet<Fact> = xi1.body.iter().map(|a| ground(a, &h1).unwrap()).collect();
        let mut step = h1.clone();
        for (j, z) in z1.iter().enumerate() {
            step.insert(z.clone(), Val::Fresh(j));
        }
        let new: BTreeSet<Fact> = xi1.head_atoms().iter().map(|a| ground(a, &step).unwrap()).collect();
        for (a2, _) in assignments(&u2, &consts, used, z1.len()) {
            let body2: BTreeSet<Fact> = xi2.body.iter().map(|a| ground(a, &a2).unwrap()).collect();
            let pool: Vec<&Fact> = body2
                .iter()
                .filter(|f| !i0.contains(*f) && !f.1.iter().any(|v| matches!(v, Val::Fresh(_))))
                .collect();
            for mask in 0u32..(1 << pool.len()) {
                let mut inst = i0.clone();
                for (b, f) in pool.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        inst.insert((*f).clone());
                    }
                }
                if kind == Kind::Str && satisfied(xi1.head_atoms(), &h1, &inst) {
                    continue;
                }
                let before = !body2.is_subset(&inst) || satisfied(xi2.head_atoms(), &a2, &inst);
                if !before {
                    continue;
                }
                let mut j = inst.clone();
                j.extend(new.iter().cloned());
                if body2.is_subset(&j) && !satisfied(xi2.head_atoms(), &a2, &j) {
                    return true;
                }
            }
        }
    }
    false
}
