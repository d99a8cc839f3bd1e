use std::collections::HashSet;

use super::{apply_trigger, is_active, run, triggers, ChaseConfig, ChaseStatus, Effect, Trigger, Variant};
use crate::model::{Dependency, Homomorphism, Instance, Term};

#[derive(Debug, Clone)]
pub struct BranchOutcome {
    pub status: ChaseStatus,
    pub steps: usize,
    pub result: Instance,
    /// The triggers fired along the branch.
    pub choices: Vec<Trigger>,
}

#[derive(Debug, Clone, Default)]
pub struct BranchReport {
    pub branches: Vec<BranchOutcome>,
    /// Set when `max_branches` cut the enumeration short.
    pub truncated: bool,
}

impl BranchReport {
    pub fn count(&self, status: ChaseStatus) -> usize {
        self.branches.iter().filter(|b| b.status == status).count()
    }
}

#[derive(Clone)]
struct State {
    instance: Instance,
    fired: HashSet<(usize, Vec<Term>)>,
    choices: Vec<Trigger>,
}

struct Explorer<'a> {
    deps: &'a [Dependency],
    variant: Variant,
    fuel: usize,
    max_branches: usize,
    report: BranchReport,
}

impl Explorer<'_> {
    fn fired_key(&self, t: &Trigger) -> (usize, Vec<Term>) {
        match self.variant {
            Variant::Sobl => t.sobl_key(self.deps),
            _ => t.obl_key(self.deps),
        }
    }

    /// Choices at a node: dependency order, then discovery order. Under sobl
    /// only the first trigger of each frontier key is offered.
    fn eligible(&self, s: &State) -> Vec<Trigger> {
        let mut keys = HashSet::new();
        triggers(&s.instance, self.deps)
            .into_iter()
            .filter(|t| {
                if !self.deps[t.dep].is_tgd() || self.variant == Variant::Std {
                    return is_active(t, self.deps, &s.instance);
                }
                let k = self.fired_key(t);
                !s.fired.contains(&k) && keys.insert(k)
            })
            .collect()
    }

    fn leaf(&mut self, s: State, status: ChaseStatus) {
        self.report.branches.push(BranchOutcome {
            status,
            steps: s.choices.len(),
            result: s.instance,
            choices: s.choices,
        });
    }

    fn dfs(&mut self, s: State) {
        let options = self.eligible(&s);
        if options.is_empty() {
            return self.leaf(s, ChaseStatus::Terminated);
        }
        if s.choices.len() == self.fuel {
            return self.leaf(s, ChaseStatus::FuelExhausted);
        }
        for t in options {
            if self.report.branches.len() >= self.max_branches {
                self.report.truncated = true;
                return;
            }
            let mut next = s.clone();
            next.choices.push(t.clone());
            if self.deps[t.dep].is_tgd() {
                next.fired.insert(self.fired_key(&t));
            }
            match apply_trigger(&t, self.deps, &mut next.instance) {
                Err(_) => self.leaf(next, ChaseStatus::Failed),
                Ok(Effect::Merged { from, to }) => {
                    let m = Homomorphism::from_pairs([(from, to)]);
                    next.fired = next.fired.into_iter().map(|(d, k)| (d, m.images(&k))).collect();
                    self.dfs(next);
                }
                Ok(_) => self.dfs(next),
            }
        }
    }
}

/// Depth-first enumeration of the chase sequences of `variant`, each cut off
/// after `fuel` steps, stopping once `max_branches` leaves are recorded.
/// The core chase is deterministic and yields a single branch.
pub fn explore_branches(
    instance: &Instance,
    deps: &[Dependency],
    variant: Variant,
    fuel: usize,
    max_branches: usize,
) -> BranchReport {
    if variant == Variant::Core {
        let o = run(instance, deps, &ChaseConfig::new(Variant::Core, fuel).with_trace());
        let choices = o.trace.unwrap_or_default().into_iter().map(|s| s.trigger).collect();
        return BranchReport {
            branches: vec![BranchOutcome {
                status: o.status,
                steps: o.steps,
                result: o.result,
                choices,
            }],
            truncated: false,
        };
    }
    let mut ex = Explorer {
        deps,
        variant,
        fuel,
        max_branches,
        report: BranchReport::default(),
    };
    if max_branches > 0 {
        ex.dfs(State {
            instance: instance.clone(),
            fired: HashSet::new(),
            choices: Vec::new(),
        });
    } else {
        ex.report.truncated = true;
    }
    ex.report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_dependencies, parse_instance};
    use crate::model::hom_equivalent;

    #[test]
    fn some_branch_terminates_some_does_not() {
        let d = parse_dependencies("S(x,y) -> exists z . S(y,z); R(x) -> S(x,x)").unwrap();
        let i = parse_instance("S('a','b'); R('b')").unwrap();
        let r = explore_branches(&i, &d, Variant::Std, 10, 100);
        assert!(!r.truncated);
        assert!(r.count(ChaseStatus::Terminated) >= 1);
        assert!(r.count(ChaseStatus::FuelExhausted) >= 1);
        let done: Vec<&BranchOutcome> = r.branches.iter().filter(|b| b.status == ChaseStatus::Terminated).collect();
        assert_eq!(done[0].steps, 1);
        for b in &done {
            assert!(hom_equivalent(&b.result, &done[0].result));
        }
    }

    #[test]
    fn failing_and_infinite_sequences() {
        let d = parse_dependencies("R(x,y) -> T(y,x); T(x,y) -> x = y; R(x,y) -> exists z . R(y,z)").unwrap();
        let i = parse_instance("R('a','b')").unwrap();
        let r = explore_branches(&i, &d, Variant::Std, 6, 1000);
        assert!(r.count(ChaseStatus::Failed) >= 1);
        assert!(r.count(ChaseStatus::FuelExhausted) >= 1);
    }

    #[test]
    fn full_tgds_always_terminate() {
        let d = parse_dependencies("R(x,y) -> R(y,x); R(x,y), R(y,z) -> R(x,z)").unwrap();
        let i = parse_instance("R('a','b'); R('b','c')").unwrap();
        for v in [Variant::Std, Variant::Obl, Variant::Sobl] {
            let r = explore_branches(&i, &d, v, 50, 200);
            assert!(r.branches.iter().all(|b| b.status == ChaseStatus::Terminated), "{v}");
        }
    }

    #[test]
    fn max_branches_caps() {
        let d = parse_dependencies("S(x,y) -> exists z . S(y,z); R(x) -> S(x,x)").unwrap();
        let i = parse_instance("S('a','b'); R('b')").unwrap();
        let r = explore_branches(&i, &d, Variant::Std, 10, 1);
        assert_eq!(r.branches.len(), 1);
        assert!(r.truncated);
    }
}
