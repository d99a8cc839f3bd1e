//! Triggers, single chase steps and the standard, oblivious, semi-oblivious
//! and core chase drivers.
//!
//! A run is bounded by `fuel`, the number of fired triggers (core chase: the
//! number of progressing core steps). Failure is an ordinary outcome.

mod branches;
mod core_chase;
mod engine;

use std::fmt;
use std::str::FromStr;

use crate::model::{find_homomorphisms, exists_homomorphism, Atom, Dependency, Head, Homomorphism, Instance, Term};

pub use branches::{explore_branches, BranchOutcome, BranchReport};
pub use core_chase::{core_chase_step, CoreStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Std,
    Obl,
    Sobl,
    Core,
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Variant, String> {
        match s {
            "std" => Ok(Variant::Std),
            "obl" => Ok(Variant::Obl),
            "sobl" => Ok(Variant::Sobl),
            "core" => Ok(Variant::Core),
            _ => Err(format!("unknown variant `{s}` (expected std, obl, sobl or core)")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Std => "std",
            Variant::Obl => "obl",
            Variant::Sobl => "sobl",
            Variant::Core => "core",
        })
    }
}

/// Order in which eligible triggers are fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Oldest discovered trigger first.
    #[default]
    Fifo,
    /// Uniform choice among eligible triggers, reproducible from the seed.
    Random(u64),
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Strategy, String> {
        if s == "fifo" {
            return Ok(Strategy::Fifo);
        }
        match s.strip_prefix("random:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(Strategy::Random(seed)),
            _ => Err(format!("unknown strategy `{s}` (expected fifo or random:SEED)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Fifo => write!(f, "fifo"),
            Strategy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChaseConfig {
    pub variant: Variant,
    pub strategy: Strategy,
    pub fuel: usize,
    pub trace: bool,
}

impl ChaseConfig {
    pub fn new(variant: Variant, fuel: usize) -> ChaseConfig {
        ChaseConfig {
            variant,
            strategy: Strategy::Fifo,
            fuel,
            trace: false,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> ChaseConfig {
        self.strategy = strategy;
        self
    }

    pub fn with_trace(mut self) -> ChaseConfig {
        self.trace = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChaseStatus {
    Terminated,
    Failed,
    FuelExhausted,
}

impl fmt::Display for ChaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChaseStatus::Terminated => "terminated",
            ChaseStatus::Failed => "failed",
            ChaseStatus::FuelExhausted => "fuel_exhausted",
        })
    }
}

/// A trigger `(ξ,h)`: `dep` indexes the dependency list, `hom` is defined on
/// the body variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trigger {
    pub dep: usize,
    pub hom: Homomorphism,
}

impl Trigger {
    /// `(ξ, h(x̄))` for the frontier `x̄`: triggers with equal keys are fired at
    /// most once by the semi-oblivious chase.
    pub fn sobl_key(&self, deps: &[Dependency]) -> (usize, Vec<Term>) {
        (self.dep, self.hom.images(&deps[self.dep].frontier()))
    }

    /// `(ξ, h(ū))` over all body variables.
    pub fn obl_key(&self, deps: &[Dependency]) -> (usize, Vec<Term>) {
        (self.dep, self.hom.images(&deps[self.dep].universal_vars()))
    }
}

impl fmt::Display for Trigger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(dependency {}, {})", self.dep + 1, self.hom)
    }
}

/// One entry of a run trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub trigger: Trigger,
    /// Atoms added by a tgd.
    pub added: Vec<Atom>,
    /// `(replaced, replacement)` for an egd.
    pub merged: Option<(Term, Term)>,
}

#[derive(Debug, Clone)]
pub struct ChaseOutcome {
    pub status: ChaseStatus,
    /// Final instance, or the instance reached when the run stopped.
    pub result: Instance,
    pub steps: usize,
    pub trace: Option<Vec<TraceStep>>,
    /// Accumulated egd substitution on nulls of earlier instances.
    pub merges: Homomorphism,
}

/// Every trigger for `deps` on `instance`: dependency order, then the
/// enumeration order of homomorphisms.
pub fn triggers(instance: &Instance, deps: &[Dependency]) -> Vec<Trigger> {
    let mut out = Vec::new();
    for (d, dep) in deps.iter().enumerate() {
        for hom in find_homomorphisms(&dep.body, instance, &Homomorphism::new(), None) {
            out.push(Trigger { dep: d, hom });
        }
    }
    out
}

/// Tgd: no extension of `h` maps the head into `instance`. Egd: the two sides
/// have different images. Denial: always.
pub fn is_active(trigger: &Trigger, deps: &[Dependency], instance: &Instance) -> bool {
    match &deps[trigger.dep].head {
        Head::Atoms { atoms, .. } => !exists_homomorphism(atoms, instance, &trigger.hom),
        Head::Equal(l, r) => trigger.hom.apply(l) != trigger.hom.apply(r),
        Head::False => true,
    }
}

/// The chase failed: an egd equated two constants, or a denial fired.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChaseFailure {
    #[error("egd equates distinct constants {0} and {1}")]
    ConstantClash(Term, Term),
    #[error("denial constraint {0} fired")]
    Denial(usize),
}

pub(crate) enum Effect {
    Added(Vec<Atom>),
    Merged { from: Term, to: Term },
    Unchanged,
}

/// Fires in place. On an egd the larger term is replaced everywhere by the
/// smaller one (constants precede nulls, nulls by creation order).
pub(crate) fn apply_trigger(
    trigger: &Trigger,
    deps: &[Dependency],
    instance: &mut Instance,
) -> Result<Effect, ChaseFailure> {
    match &deps[trigger.dep].head {
        Head::Atoms { atoms, .. } => {
            let dep = &deps[trigger.dep];
            let mut h = trigger.hom.clone();
            for z in dep.existential_vars() {
                h.insert(z, Term::fresh_null());
            }
            let added = atoms.iter().map(|a| h.apply_atom(a)).filter(|a| instance.insert(a.clone())).collect();
            Ok(Effect::Added(added))
        }
        Head::Equal(l, r) => {
            let (a, b) = (trigger.hom.apply(l), trigger.hom.apply(r));
            if a == b {
                return Ok(Effect::Unchanged);
            }
            if a.is_const() && b.is_const() {
                return Err(ChaseFailure::ConstantClash(a, b));
            }
            let (to, from) = if a < b { (a, b) } else { (b, a) };
            let s = Homomorphism::from_pairs([(from.clone(), to.clone())]);
            *instance = instance.map(&s);
            Ok(Effect::Merged { from, to })
        }
        Head::False => Err(ChaseFailure::Denial(trigger.dep)),
    }
}

/// The instance obtained by firing `trigger`.
pub fn fire(trigger: &Trigger, deps: &[Dependency], instance: &Instance) -> Result<Instance, ChaseFailure> {
    let mut out = instance.clone();
    apply_trigger(trigger, deps, &mut out)?;
    Ok(out)
}

/// Triggers a variant may fire on `instance` with no firing history: active
/// ones for std and core, all tgd triggers plus active egd and denial
/// triggers for obl, and one representative per frontier key for sobl.
pub fn eligible_triggers(instance: &Instance, deps: &[Dependency], variant: Variant) -> Vec<Trigger> {
    let mut keys = std::collections::HashSet::new();
    triggers(instance, deps)
        .into_iter()
        .filter(|t| match (variant, deps[t.dep].is_tgd()) {
            (Variant::Std | Variant::Core, _) | (_, false) => is_active(t, deps, instance),
            (Variant::Obl, true) => true,
            (Variant::Sobl, true) => keys.insert(t.sobl_key(deps)),
        })
        .collect()
}

/// Runs the chase variant selected by `config`.
pub fn run(instance: &Instance, deps: &[Dependency], config: &ChaseConfig) -> ChaseOutcome {
    match config.variant {
        Variant::Core => core_chase::run_core(instance, deps, config),
        _ => engine::Engine::new(instance, deps, config).run(),
    }
}
