use std::fmt;

use super::{check_tgds, RewriteError};
use crate::model::{Atom, Dependency, Sym, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Skolem functions over all body variables.
    Oblivious,
    /// Skolem functions over the frontier variables.
    SemiOblivious,
}

/// Terms of a Skolemized rule.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkTerm {
    Var(Sym),
    Const(Sym),
    Func { name: Sym, args: Vec<SkTerm> },
}

impl SkTerm {
    pub fn from_term(t: &Term) -> SkTerm {
        match t {
            Term::Var(v) => SkTerm::Var(v.clone()),
            Term::Const(c) => SkTerm::Const(c.clone()),
            Term::Null(_) => panic!("dependencies contain no nulls"),
        }
    }

    pub fn occurs(&self, var: &Sym) -> bool {
        match self {
            SkTerm::Var(v) => v == var,
            SkTerm::Const(_) => false,
            SkTerm::Func { args, .. } => args.iter().any(|a| a.occurs(var)),
        }
    }
}

impl fmt::Display for SkTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkTerm::Var(v) => write!(f, "{v}"),
            SkTerm::Const(c) => write!(f, "{}", Term::Const(c.clone())),
            SkTerm::Func { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for SkTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkAtom {
    pub rel: Sym,
    pub args: Vec<SkTerm>,
}

impl SkAtom {
    pub fn from_atom(a: &Atom) -> SkAtom {
        SkAtom {
            rel: a.rel.clone(),
            args: a.args.iter().map(SkTerm::from_term).collect(),
        }
    }
}

impl fmt::Display for SkAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.rel)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for SkAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Horn rule with function terms in the head.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkRule {
    pub source: usize,
    pub body: Vec<SkAtom>,
    pub head: Vec<SkAtom>,
}

impl fmt::Display for SkRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |atoms: &[SkAtom]| atoms.iter().map(SkAtom::to_string).collect::<Vec<_>>().join(", ");
        if self.body.is_empty() {
            write!(f, "-> {}", join(&self.head))
        } else {
            write!(f, "{} -> {}", join(&self.body), join(&self.head))
        }
    }
}

/// Replaces each existential variable `z` of the k-th tgd by `f<k>_<z>(...)`
/// over the body variables (oblivious) or the frontier (semi-oblivious).
pub fn skolemize(deps: &[Dependency], flavor: Flavor) -> Result<Vec<SkRule>, RewriteError> {
    check_tgds(deps)?;
    let mut out = Vec::new();
    for (k, d) in deps.iter().enumerate() {
        let over: Vec<SkTerm> = match flavor {
            Flavor::Oblivious => d.universal_vars(),
            Flavor::SemiOblivious => d.frontier(),
        }
        .iter()
        .map(SkTerm::from_term)
        .collect();
        let sk = |t: &Term| -> SkTerm {
            if d.is_existential(t) {
                SkTerm::Func {
                    name: format!("f{}_{}", k + 1, t.label()).into(),
                    args: over.clone(),
                }
            } else {
                SkTerm::from_term(t)
            }
        };
        let head = d
            .head_atoms()
            .iter()
            .map(|a| SkAtom {
                rel: a.rel.clone(),
                args: a.args.iter().map(sk).collect(),
            })
            .collect();
        out.push(SkRule {
            source: k,
            body: d.body.iter().map(SkAtom::from_atom).collect(),
            head,
        });
    }
    Ok(out)
}
