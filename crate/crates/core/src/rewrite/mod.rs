//! Dependency-set transforms: egds to tgds, enrichment, semi-enrichment and
//! Skolemization.

mod skolem;

use std::fmt;

use crate::dsl::render_dependencies_with_notes;
use crate::model::{schema_of, ArityError, Atom, DepKind, Dependency, Head, Schema, Sym, Term};

pub use skolem::{skolemize, Flavor, SkAtom, SkRule, SkTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("dependency {index} is a denial constraint; this transform accepts tgds and egds only")]
    Denial { index: usize },
    #[error("dependency {index} is not a tgd")]
    NotTgd { index: usize },
    #[error(transparent)]
    Arity(#[from] ArityError),
}

/// Rule families of the word-rewriting reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RuleGroup {
    Theta,
    LR,
    AD,
    TC,
    SAT,
    Denial,
}

impl RuleGroup {
    pub fn name(self) -> &'static str {
        match self {
            RuleGroup::Theta => "Sigma_Theta",
            RuleGroup::LR => "Sigma_LR",
            RuleGroup::AD => "Sigma_AD",
            RuleGroup::TC => "Sigma_TC",
            RuleGroup::SAT => "Sigma_SAT",
            RuleGroup::Denial => "denial",
        }
    }
}

/// Where an output dependency came from. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Copied(usize),
    EgdEquality(usize),
    Substitution { rel: Sym, position: usize },
    Enriched { source: usize, symbol: Sym },
    SemiEnriched { source: usize, symbol: Sym },
    Reduction { group: RuleGroup, rule: Option<usize>, note: Option<String> },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Copied(k) => write!(f, "copied from dependency {}", k + 1),
            Origin::EgdEquality(k) => write!(f, "egd {} as equality atoms", k + 1),
            Origin::Substitution { rel, position } => write!(f, "substitution rule for ({rel},{position})"),
            Origin::Enriched { source, symbol } => write!(f, "dependency {} enriched with {symbol}", source + 1),
            Origin::SemiEnriched { source, symbol } => {
                write!(f, "dependency {} semi-enriched with {symbol}", source + 1)
            }
            Origin::Reduction { group, rule, note } => {
                write!(f, "{}", group.name())?;
                if let Some(r) = rule {
                    write!(f, " rule {}", r + 1)?;
                }
                if let Some(n) = note {
                    write!(f, ": {n}")?;
                }
                Ok(())
            }
        }
    }
}

/// Output dependencies with one provenance entry each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedSet {
    pub deps: Vec<Dependency>,
    pub provenance: Vec<Origin>,
}

impl TransformedSet {
    pub(crate) fn new() -> TransformedSet {
        TransformedSet {
            deps: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, dep: Dependency, origin: Origin) {
        self.deps.push(dep);
        self.provenance.push(origin);
    }

    pub fn len(&self) -> usize {
        self.deps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deps.is_empty()
    }

    /// Dependency file text with a `#` provenance comment above each rule.
    pub fn render(&self) -> String {
        let notes: Vec<String> = self.provenance.iter().map(Origin::to_string).collect();
        render_dependencies_with_notes(&self.deps, &notes)
    }
}

/// `base`, or `base` with underscores appended until it is not in `schema`.
pub fn fresh_symbol(base: &str, schema: &Schema) -> String {
    let mut s = base.to_string();
    while schema.contains(&s) {
        s.push('_');
    }
    s
}

/// Rewrites egds into tgds over a fresh binary symbol `Eq`.
///
/// Tgds are copied; `α → x=y` becomes `α → Eq(x,y), Eq(y,x)`; and for every
/// relation `R` and position `i` the rule `Eq(x,y), R(..x..) → R(..y..)` is
/// added, with `x` at position `i`. The substitution rules are only emitted
/// when at least one egd is present.
pub fn egds_to_tgds(deps: &[Dependency]) -> Result<TransformedSet, RewriteError> {
    if let Some(index) = deps.iter().position(|d| d.kind() == DepKind::Denial) {
        return Err(RewriteError::Denial { index });
    }
    let schema = schema_of(deps)?;
    let eq = fresh_symbol("Eq", &schema);
    let mut out = TransformedSet::new();
    let mut any_egd = false;
    for (k, d) in deps.iter().enumerate() {
        match &d.head {
            Head::Equal(x, y) => {
                any_egd = true;
                let head = vec![
                    Atom::new(&eq, vec![x.clone(), y.clone()]),
                    Atom::new(&eq, vec![y.clone(), x.clone()]),
                ];
                out.push(Dependency::tgd(d.body.clone(), &[], head), Origin::EgdEquality(k));
            }
            _ => out.push(d.clone(), Origin::Copied(k)),
        }
    }
    if any_egd {
        let (x, y) = (Term::var("x"), Term::var("y"));
        for (rel, arity) in schema.iter() {
            for i in 1..=arity {
                let others: Vec<Term> = (1..=arity).map(|j| Term::var(&format!("x{j}"))).collect();
                let with = |t: &Term| {
                    let mut args = others.clone();
                    args[i - 1] = t.clone();
                    Atom { rel: rel.clone(), args }
                };
                let dep = Dependency::tgd(
                    vec![Atom::new(&eq, vec![x.clone(), y.clone()]), with(&x)],
                    &[],
                    vec![with(&y)],
                );
                out.push(
                    dep,
                    Origin::Substitution {
                        rel: rel.clone(),
                        position: i,
                    },
                );
            }
        }
    }
    Ok(out)
}

fn check_tgds(deps: &[Dependency]) -> Result<Schema, RewriteError> {
    if let Some(index) = deps.iter().position(|d| !d.is_tgd()) {
        return Err(RewriteError::NotTgd { index });
    }
    Ok(schema_of(deps)?)
}

/// Adds `H<k>(x̄,ȳ)` over all body variables to the head of the k-th tgd.
pub fn enrich(deps: &[Dependency]) -> Result<TransformedSet, RewriteError> {
    add_marker(deps, false)
}

/// Adds `H<k>(x̄)` over the frontier variables to the head of the k-th tgd.
pub fn semi_enrich(deps: &[Dependency]) -> Result<TransformedSet, RewriteError> {
    add_marker(deps, true)
}

fn add_marker(deps: &[Dependency], frontier_only: bool) -> Result<TransformedSet, RewriteError> {
    let mut schema = check_tgds(deps)?;
    let mut out = TransformedSet::new();
    for (k, d) in deps.iter().enumerate() {
        let symbol = fresh_symbol(&format!("H{}", k + 1), &schema);
        let args = if frontier_only { d.frontier() } else { d.universal_vars() };
        let marker = Atom::new(&symbol, args);
        schema = schema.with(&symbol, marker.arity());
        let Head::Atoms { exists, atoms } = &d.head else {
            unreachable!("checked to be a tgd")
        };
        let mut head = atoms.clone();
        head.push(marker);
        let dep = Dependency {
            body: d.body.clone(),
            head: Head::Atoms {
                exists: exists.clone(),
                atoms: head,
            },
        };
        let symbol: Sym = symbol.into();
        let origin = if frontier_only {
            Origin::SemiEnriched { source: k, symbol }
        } else {
            Origin::Enriched { source: k, symbol }
        };
        out.push(dep, origin);
    }
    Ok(out)
}
