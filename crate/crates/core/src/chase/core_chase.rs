use super::{apply_trigger, is_active, triggers, ChaseConfig, ChaseFailure, ChaseOutcome, ChaseStatus, Effect, TraceStep, Trigger};
use crate::model::{core, Dependency, Homomorphism, Instance, Term};

#[derive(Debug, Clone)]
pub enum CoreStep {
    /// No active trigger is left.
    Fixpoint,
    Progress {
        instance: Instance,
        fired: Vec<Trigger>,
        merged: Option<(Term, Term)>,
    },
    Failed(ChaseFailure),
}

/// One core chase step. An active egd or denial trigger is fired alone (the
/// first in dependency order); otherwise every active tgd trigger is fired
/// against `instance`, each with its own fresh nulls, and the core of the
/// union is returned.
pub fn core_chase_step(instance: &Instance, deps: &[Dependency]) -> CoreStep {
    let active: Vec<Trigger> = triggers(instance, deps)
        .into_iter()
        .filter(|t| is_active(t, deps, instance))
        .collect();
    if let Some(t) = active.iter().find(|t| !deps[t.dep].is_tgd()) {
        let mut next = instance.clone();
        return match apply_trigger(t, deps, &mut next) {
            Err(f) => CoreStep::Failed(f),
            Ok(Effect::Merged { from, to }) => CoreStep::Progress {
                instance: next,
                fired: vec![t.clone()],
                merged: Some((from, to)),
            },
            Ok(_) => unreachable!("active egd triggers merge"),
        };
    }
    if active.is_empty() {
        return CoreStep::Fixpoint;
    }
    let mut union = instance.clone();
    for t in &active {
        let mut alone = instance.clone();
        if let Ok(Effect::Added(atoms)) = apply_trigger(t, deps, &mut alone) {
            union.extend(atoms);
        }
    }
    CoreStep::Progress {
        instance: core(&union),
        fired: active,
        merged: None,
    }
}

pub(super) fn run_core(instance: &Instance, deps: &[Dependency], config: &ChaseConfig) -> ChaseOutcome {
    let mut cur = instance.clone();
    let mut steps = 0;
    let mut merges = Homomorphism::new();
    let mut trace = config.trace.then(Vec::new);
    let status = loop {
        let step = core_chase_step(&cur, deps);
        if matches!(step, CoreStep::Fixpoint) {
            break ChaseStatus::Terminated;
        }
        if steps == config.fuel {
            break ChaseStatus::FuelExhausted;
        }
        steps += 1;
        match step {
            CoreStep::Fixpoint => unreachable!(),
            CoreStep::Failed(_) => break ChaseStatus::Failed,
            CoreStep::Progress { instance, fired, merged } => {
                if let Some((from, to)) = &merged {
                    merges = merges.then(&Homomorphism::from_pairs([(from.clone(), to.clone())]));
                }
                if let Some(tr) = &mut trace {
                    let added = instance.iter().filter(|a| !cur.contains(a)).cloned().collect::<Vec<_>>();
                    for (k, t) in fired.into_iter().enumerate() {
                        tr.push(TraceStep {
                            trigger: t,
                            added: if k == 0 { added.clone() } else { Vec::new() },
                            merged: merged.clone(),
                        });
                    }
                }
                cur = instance;
            }
        }
    };
    ChaseOutcome {
        status,
        result: cur,
        steps,
        trace,
        merges,
    }
}
