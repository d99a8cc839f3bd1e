use super::{require_tgds, ClassError};
use crate::chase::{run, ChaseConfig, ChaseStatus, Variant};
use crate::model::{constants_of, schema_of, Atom, Dependency, Instance, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformTermination {
    TerminatesAll,
    Unknown,
}

/// Every relation of `deps` saturated over one fresh constant (`c`, or
/// `c1`, `c2`, ... if taken) plus the constants of `deps`.
pub fn critical_instance(deps: &[Dependency]) -> Result<Instance, ClassError> {
    require_tgds(deps)?;
    let schema = schema_of(deps)?;
    let mut consts = constants_of(deps);
    let mut fresh = Term::constant("c");
    let mut k = 0;
    while consts.contains(&fresh) {
        k += 1;
        fresh = Term::constant(&format!("c{k}"));
    }
    consts.insert(0, fresh);
    let mut out = Instance::new();
    for (rel, arity) in schema.iter() {
        let mut idx = vec![0usize; arity];
        loop {
            let args = idx.iter().map(|&i| consts[i].clone()).collect();
            out.insert(Atom::new(rel, args));
            let Some(p) = (0..arity).rev().find(|&p| idx[p] + 1 < consts.len()) else {
                break;
            };
            idx[p] += 1;
            idx[p + 1..].fill(0);
        }
    }
    Ok(out)
}

/// Runs the oblivious or semi-oblivious chase on the critical instance.
/// Termination there implies termination on every instance.
pub fn uniform_termination_semidecision(
    deps: &[Dependency],
    variant: Variant,
    fuel: usize,
) -> Result<UniformTermination, ClassError> {
    assert!(
        matches!(variant, Variant::Obl | Variant::Sobl),
        "the critical instance decides only obl and sobl"
    );
    let inst = critical_instance(deps)?;
    let out = run(&inst, deps, &ChaseConfig::new(variant, fuel));
    Ok(match out.status {
        ChaseStatus::Terminated => UniformTermination::TerminatesAll,
        _ => UniformTermination::Unknown,
    })
}
