use std::collections::BTreeSet;

use super::{precedes_p, DepGraph};
use crate::classes::{is_sd, require_tgds, ClassError};
use crate::model::{Dependency, Instance, Position, Term};

/// Positions of `instance` holding one of `nulls`.
pub fn nullpos(nulls: &BTreeSet<Term>, instance: &Instance) -> BTreeSet<Position> {
    nulls.iter().flat_map(|n| instance.positions_of(n)).collect()
}

fn positions_of(atoms: &[crate::model::Atom], x: &Term) -> Vec<Position> {
    let mut out = Vec::new();
    for a in atoms {
        for (i, t) in a.args.iter().enumerate() {
            if t == x {
                out.push(Position {
                    rel: a.rel.clone(),
                    index: i + 1,
                });
            }
        }
    }
    out
}

/// Head positions of `xi` that hold an existential variable, or whose
/// universal variables occur in the body only at positions of `p`. Head
/// positions holding only constants are left out.
pub fn affcl(xi: &Dependency, p: &BTreeSet<Position>) -> BTreeSet<Position> {
    let mut out = BTreeSet::new();
    let head = xi.head_atoms();
    let candidates: BTreeSet<Position> = head
        .iter()
        .flat_map(|a| {
            (1..=a.arity()).map(move |i| Position {
                rel: a.rel.clone(),
                index: i,
            })
        })
        .collect();
    for q in candidates {
        let terms: Vec<&Term> = head
            .iter()
            .filter(|a| a.rel == q.rel)
            .map(|a| &a.args[q.index - 1])
            .collect();
        if terms.iter().any(|t| xi.is_existential(t)) {
            out.insert(q);
            continue;
        }
        let univ: Vec<&&Term> = terms.iter().filter(|t| t.is_var()).collect();
        if !univ.is_empty() && univ.iter().all(|x| positions_of(&xi.body, x).iter().all(|b| p.contains(b))) {
            out.insert(q);
        }
    }
    out
}

/// A dependency graph together with a set of positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSystem {
    pub graph: DepGraph,
    pub positions: BTreeSet<Position>,
}

/// Least system reached from the empty graph and empty position set by
/// adding `ξ1 → ξ2` whenever `ξ1 ≺_P ξ2` and closing `P` under `affcl` of
/// edge endpoints.
pub fn minimal_2restriction(deps: &[Dependency]) -> Result<RestrictionSystem, ClassError> {
    require_tgds(deps)?;
    let mut sys = RestrictionSystem {
        graph: DepGraph {
            size: deps.len(),
            edges: BTreeSet::new(),
        },
        positions: BTreeSet::new(),
    };
    loop {
        let mut grew = false;
        for (a, x1) in deps.iter().enumerate() {
            for (b, x2) in deps.iter().enumerate() {
                if !sys.graph.edges.contains(&(a, b)) && precedes_p(x1, x2, &sys.positions).is_some() {
                    sys.graph.edges.insert((a, b));
                    grew = true;
                }
            }
        }
        let ends: BTreeSet<usize> = sys.graph.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        for k in ends {
            for q in affcl(&deps[k], &sys.positions) {
                grew |= sys.positions.insert(q);
            }
        }
        if !grew {
            return Ok(sys);
        }
    }
}

/// Dependency index sets of the cyclic components of the minimal system.
/// Components without a cycle never fire twice in a row and are left out.
pub fn part2(deps: &[Dependency]) -> Result<Vec<Vec<usize>>, ClassError> {
    Ok(minimal_2restriction(deps)?.graph.cyclic_components())
}

/// Inductive restriction: every part is safe (SD).
pub fn is_ir(deps: &[Dependency]) -> Result<bool, ClassError> {
    for part in part2(deps)? {
        let sub: Vec<Dependency> = part.iter().map(|&k| deps[k].clone()).collect();
        if !is_sd(&sub)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}
