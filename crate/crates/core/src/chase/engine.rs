use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_trigger, is_active, triggers, ChaseConfig, ChaseOutcome, ChaseStatus, Effect, Strategy, TraceStep, Trigger, Variant};
use crate::model::{for_each_homomorphism, Atom, Dependency, Homomorphism, Instance, Term};

type Key = (usize, Vec<Term>);

/// Semi-naive driver for std, obl and sobl. Triggers are discovered from
/// newly added atoms and queued; ineligible triggers are dropped for good,
/// which is sound because none of them can become eligible again.
pub(super) struct Engine<'a> {
    deps: &'a [Dependency],
    variant: Variant,
    fuel: usize,
    universals: Vec<Vec<Term>>,
    frontiers: Vec<Vec<Term>>,
    instance: Instance,
    pending: VecDeque<Trigger>,
    seen: HashSet<Key>,
    fired: HashSet<Key>,
    merges: Homomorphism,
    steps: usize,
    trace: Option<Vec<TraceStep>>,
    rng: Option<ChaCha8Rng>,
}

fn match_atom(pattern: &Atom, atom: &Atom) -> Option<Homomorphism> {
    if pattern.rel != atom.rel || pattern.arity() != atom.arity() {
        return None;
    }
    let mut h = Homomorphism::new();
    for (p, t) in pattern.args.iter().zip(&atom.args) {
        if p.is_const() {
            if p != t {
                return None;
            }
        } else if let Some(prev) = h.get(p) {
            if prev != t {
                return None;
            }
        } else {
            h.insert(p.clone(), t.clone());
        }
    }
    Some(h)
}

impl<'a> Engine<'a> {
    pub(super) fn new(instance: &Instance, deps: &'a [Dependency], config: &ChaseConfig) -> Engine<'a> {
        let mut e = Engine {
            deps,
            variant: config.variant,
            fuel: config.fuel,
            universals: deps.iter().map(Dependency::universal_vars).collect(),
            frontiers: deps.iter().map(Dependency::frontier).collect(),
            instance: instance.clone(),
            pending: VecDeque::new(),
            seen: HashSet::new(),
            fired: HashSet::new(),
            merges: Homomorphism::new(),
            steps: 0,
            trace: config.trace.then(Vec::new),
            rng: match config.strategy {
                Strategy::Fifo => None,
                Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        };
        e.discover_all();
        e
    }

    fn key(&self, t: &Trigger) -> Key {
        (t.dep, t.hom.images(&self.universals[t.dep]))
    }

    fn fired_key(&self, t: &Trigger) -> Key {
        match self.variant {
            Variant::Sobl => (t.dep, t.hom.images(&self.frontiers[t.dep])),
            _ => self.key(t),
        }
    }

    fn enqueue(&mut self, t: Trigger) {
        if self.seen.insert(self.key(&t)) {
            self.pending.push_back(t);
        }
    }

    fn discover_all(&mut self) {
        for t in triggers(&self.instance, self.deps) {
            self.enqueue(t);
        }
    }

    /// Triggers whose body image uses at least one of `added`.
    fn discover(&mut self, added: &[Atom]) {
        let mut found = Vec::new();
        for (d, dep) in self.deps.iter().enumerate() {
            for pattern in &dep.body {
                for a in added {
                    let Some(base) = match_atom(pattern, a) else { continue };
                    for_each_homomorphism(&dep.body, &self.instance, &base, None, |h| {
                        found.push(Trigger { dep: d, hom: h.clone() });
                        ControlFlow::Continue(())
                    });
                }
            }
        }
        for t in found {
            self.enqueue(t);
        }
    }

    fn eligible(&self, t: &Trigger) -> bool {
        if !self.deps[t.dep].is_tgd() || self.variant == Variant::Std {
            return is_active(t, self.deps, &self.instance);
        }
        !self.fired.contains(&self.fired_key(t))
    }

    fn next_trigger(&mut self) -> Option<Trigger> {
        loop {
            let t = match &mut self.rng {
                None => self.pending.pop_front()?,
                Some(rng) => {
                    if self.pending.is_empty() {
                        return None;
                    }
                    let i = rng.gen_range(0..self.pending.len());
                    self.pending.swap_remove_back(i)?
                }
            };
            if self.eligible(&t) {
                return Some(t);
            }
        }
    }

    /// Renames every stored homomorphism and key after `from` became `to`.
    fn after_merge(&mut self, from: Term, to: Term) {
        let s = Homomorphism::from_pairs([(from, to)]);
        self.merges = self.merges.then(&s);
        let rename = |k: Key| (k.0, k.1.iter().map(|t| s.apply(t)).collect::<Vec<_>>());
        self.seen = self.seen.drain().map(rename).collect();
        self.fired = self.fired.drain().map(rename).collect();
        let old: Vec<Trigger> = self.pending.drain(..).collect();
        let mut keys = HashSet::new();
        for t in old {
            let t = Trigger {
                dep: t.dep,
                hom: t.hom.then(&s).restrict(&self.universals[t.dep]),
            };
            if keys.insert(self.key(&t)) {
                self.pending.push_back(t);
            }
        }
        self.discover_all();
    }

    pub(super) fn run(mut self) -> ChaseOutcome {
        let status = loop {
            let Some(t) = self.next_trigger() else {
                break ChaseStatus::Terminated;
            };
            if self.steps == self.fuel {
                break ChaseStatus::FuelExhausted;
            }
            self.steps += 1;
            if self.deps[t.dep].is_tgd() {
                self.fired.insert(self.fired_key(&t));
            }
            match apply_trigger(&t, self.deps, &mut self.instance) {
                Err(_) => {
                    self.record(t, Vec::new(), None);
                    break ChaseStatus::Failed;
                }
                Ok(Effect::Added(added)) => {
                    self.discover(&added);
                    self.record(t, added, None);
                }
                Ok(Effect::Merged { from, to }) => {
                    self.record(t, Vec::new(), Some((from.clone(), to.clone())));
                    self.after_merge(from, to);
                }
                Ok(Effect::Unchanged) => self.record(t, Vec::new(), None),
            }
        };
        ChaseOutcome {
            status,
            result: self.instance,
            steps: self.steps,
            trace: self.trace,
            merges: self.merges,
        }
    }

    fn record(&mut self, trigger: Trigger, added: Vec<Atom>, merged: Option<(Term, Term)>) {
        if let Some(tr) = &mut self.trace {
            tr.push(TraceStep { trigger, added, merged });
        }
    }
}
