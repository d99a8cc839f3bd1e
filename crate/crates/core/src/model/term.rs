use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Interned-ish symbol used for relation names, constants and variables.
pub type Sym = Arc<str>;

/// Identity of a labeled null. Ordering follows creation order, which is the
/// enumeration used when an egd merges two nulls.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NullId(u32);

struct NullTable {
    labels: Vec<Sym>,
    by_label: HashMap<Sym, u32>,
    next_fresh: u64,
}

fn table() -> &'static Mutex<NullTable> {
    static TABLE: OnceLock<Mutex<NullTable>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Mutex::new(NullTable {
            labels: Vec::new(),
            by_label: HashMap::new(),
            next_fresh: 1,
        })
    })
}

impl NullId {
    /// The null carrying `label`, created on first use.
    pub fn named(label: &str) -> NullId {
        let mut t = table().lock().expect("null table poisoned");
        if let Some(&id) = t.by_label.get(label) {
            return NullId(id);
        }
        let id = t.labels.len() as u32;
        let sym: Sym = Arc::from(label);
        t.labels.push(sym.clone());
        t.by_label.insert(sym, id);
        NullId(id)
    }

    /// A null never handed out before. Labels have the form `n<k>`; labels
    /// already taken by parsed nulls are skipped.
    pub fn fresh() -> NullId {
        let mut t = table().lock().expect("null table poisoned");
        loop {
            let label = format!("n{}", t.next_fresh);
            t.next_fresh += 1;
            if t.by_label.contains_key(label.as_str()) {
                continue;
            }
            let id = t.labels.len() as u32;
            let sym: Sym = Arc::from(label.as_str());
            t.labels.push(sym.clone());
            t.by_label.insert(sym, id);
            return NullId(id);
        }
    }

    pub fn label(self) -> Sym {
        let t = table().lock().expect("null table poisoned");
        t.labels[self.0 as usize].clone()
    }
}

/// A term: constant, labeled null, or variable. Variant order puts constants
/// before nulls, so the smaller of two merged terms is a constant whenever one
/// side is.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Sym),
    Null(NullId),
    Var(Sym),
}

impl Term {
    pub fn constant(label: &str) -> Term {
        Term::Const(Arc::from(label))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn null(label: &str) -> Term {
        Term::Null(NullId::named(label))
    }

    pub fn fresh_null() -> Term {
        Term::Null(NullId::fresh())
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Term::Const(_))
    }

    pub fn is_null(&self) -> bool {
        matches!(self, Term::Null(_))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Variables and nulls are the terms a homomorphism may move.
    pub fn is_mappable(&self) -> bool {
        !self.is_const()
    }

    pub fn label(&self) -> Sym {
        match self {
            Term::Const(s) | Term::Var(s) => s.clone(),
            Term::Null(id) => id.label(),
        }
    }
}

pub(crate) fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) if is_digits(c) => write!(f, "{c}"),
            Term::Const(c) => write!(f, "'{c}'"),
            Term::Null(id) => write!(f, "?{}", id.label()),
            Term::Var(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A relational atom `R(t1,...,tk)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub rel: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(rel: &str, args: Vec<Term>) -> Atom {
        Atom {
            rel: Arc::from(rel),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    pub fn has_null(&self) -> bool {
        self.args.iter().any(Term::is_null)
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> impl Iterator<Item = &Term> {
        self.args.iter().filter(|t| t.is_var())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.rel)?;
        for (i, t) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A position `(R,i)`, 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub rel: Sym,
    pub index: usize,
}

impl Position {
    pub fn new(rel: &str, index: usize) -> Position {
        Position {
            rel: Arc::from(rel),
            index,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rel, self.index)
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Distinct variables of a list of atoms, in order of first occurrence.
pub fn vars_of<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for a in atoms {
        for t in a.vars() {
            if !out.contains(t) {
                out.push(t.clone());
            }
        }
    }
    out
}
