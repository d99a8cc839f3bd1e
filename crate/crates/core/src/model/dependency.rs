use std::fmt;

use super::term::{vars_of, Atom, Sym, Term};
use super::{ArityError, Schema};

/// Right-hand side of a dependency.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Head {
    /// `exists z̄ . β`; `exists` lists the existential variable names.
    Atoms { exists: Vec<Sym>, atoms: Vec<Atom> },
    /// `x = y`
    Equal(Term, Term),
    /// `false`
    False,
}

/// A tgd, egd or denial constraint `α → head`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dependency {
    pub body: Vec<Atom>,
    pub head: Head,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepKind {
    Tgd,
    Egd,
    Denial,
}

impl Dependency {
    pub fn tgd(body: Vec<Atom>, exists: &[&str], head: Vec<Atom>) -> Dependency {
        Dependency {
            body,
            head: Head::Atoms {
                exists: exists.iter().map(|s| Sym::from(*s)).collect(),
                atoms: head,
            },
        }
    }

    pub fn egd(body: Vec<Atom>, left: Term, right: Term) -> Dependency {
        Dependency {
            body,
            head: Head::Equal(left, right),
        }
    }

    pub fn denial(body: Vec<Atom>) -> Dependency {
        Dependency { body, head: Head::False }
    }

    pub fn kind(&self) -> DepKind {
        match self.head {
            Head::Atoms { .. } => DepKind::Tgd,
            Head::Equal(..) => DepKind::Egd,
            Head::False => DepKind::Denial,
        }
    }

    pub fn is_tgd(&self) -> bool {
        self.kind() == DepKind::Tgd
    }

    pub fn head_atoms(&self) -> &[Atom] {
        match &self.head {
            Head::Atoms { atoms, .. } => atoms,
            _ => &[],
        }
    }

    /// Universal variables x̄ȳ: the body variables, in order of first occurrence.
    pub fn universal_vars(&self) -> Vec<Term> {
        vars_of(&self.body)
    }

    /// Existential variables z̄ in declaration order.
    pub fn existential_vars(&self) -> Vec<Term> {
        match &self.head {
            Head::Atoms { exists, .. } => exists.iter().map(|s| Term::Var(s.clone())).collect(),
            _ => Vec::new(),
        }
    }

    /// Frontier x̄: body variables that also occur in the head.
    pub fn frontier(&self) -> Vec<Term> {
        let in_head: Vec<Term> = match &self.head {
            Head::Atoms { atoms, .. } => vars_of(atoms),
            Head::Equal(a, b) => vec![a.clone(), b.clone()],
            Head::False => Vec::new(),
        };
        self.universal_vars().into_iter().filter(|v| in_head.contains(v)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.existential_vars().is_empty()
    }

    pub fn is_existential(&self, t: &Term) -> bool {
        matches!((&self.head, t), (Head::Atoms { exists, .. }, Term::Var(v)) if exists.contains(v))
    }

    /// Every atom of body and head.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.body.iter().chain(self.head_atoms())
    }

    /// Renames variables with `f`.
    pub fn rename_vars(&self, f: impl Fn(&Sym) -> Sym) -> Dependency {
        let rt = |t: &Term| match t {
            Term::Var(v) => Term::Var(f(v)),
            other => other.clone(),
        };
        let ra = |a: &Atom| Atom {
            rel: a.rel.clone(),
            args: a.args.iter().map(rt).collect(),
        };
        Dependency {
            body: self.body.iter().map(ra).collect(),
            head: match &self.head {
                Head::Atoms { exists, atoms } => Head::Atoms {
                    exists: exists.iter().map(&f).collect(),
                    atoms: atoms.iter().map(ra).collect(),
                },
                Head::Equal(a, b) => Head::Equal(rt(a), rt(b)),
                Head::False => Head::False,
            },
        }
    }
}

/// Relation arities used by a dependency set.
pub fn schema_of(deps: &[Dependency]) -> Result<Schema, ArityError> {
    let mut s = Schema::new();
    for d in deps {
        for a in d.atoms() {
            s.observe(a)?;
        }
    }
    Ok(s)
}

/// Constants mentioned anywhere in `deps`, in order of first occurrence.
pub fn constants_of(deps: &[Dependency]) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for d in deps {
        let extra: Vec<&Term> = match &d.head {
            Head::Equal(a, b) => vec![a, b],
            _ => Vec::new(),
        };
        for t in d.atoms().flat_map(|a| a.args.iter()).chain(extra) {
            if t.is_const() && !out.contains(t) {
                out.push(t.clone());
            }
        }
    }
    out
}

fn join(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for Dependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(f, &self.body)?;
        if self.body.is_empty() {
            write!(f, "-> ")?;
        } else {
            write!(f, " -> ")?;
        }
        match &self.head {
            Head::Atoms { exists, atoms } => {
                if !exists.is_empty() {
                    write!(f, "exists {} . ", exists.join(","))?;
                }
                join(f, atoms)
            }
            Head::Equal(a, b) => write!(f, "{a} = {b}"),
            Head::False => write!(f, "false"),
        }
    }
}

impl fmt::Debug for Dependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
