//! Stratification: chase graphs over the precedence orders, the Str and CStr
//! tests, and inductive restriction via minimal 2-restriction systems.

mod precedes;
mod restriction;

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::classes::{is_wa, require_tgds, ClassError, Verdict};
use crate::model::Dependency;

pub use precedes::{mgu_pairs, precedes, precedes_c, precedes_p, precedes_str, Order, PrecedenceWitness};
pub use restriction::{affcl, is_ir, minimal_2restriction, nullpos, part2, RestrictionSystem};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StratError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("undecided: more than {cap} simple cycles in the chase graph")]
    CycleCap { cap: usize },
}

/// Which precedence order labels the chase graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphOrder {
    Str,
    CStr,
}

/// A directed graph over dependency indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DepGraph {
    pub size: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl DepGraph {
    fn petgraph(&self) -> DiGraph<usize, ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..self.size).map(|k| g.add_node(k)).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }

    /// Strongly connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let g = self.petgraph();
        let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| g[n]).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    /// Components with a cycle: more than one vertex or a self-loop.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        self.components()
            .into_iter()
            .filter(|c| c.len() > 1 || self.edges.contains(&(c[0], c[0])))
            .collect()
    }

    /// Simple cycles as vertex lists, each starting at its least vertex.
    /// Fails once more than `cap` have been found.
    pub fn simple_cycles(&self, cap: usize) -> Result<Vec<Vec<usize>>, StratError> {
        let mut out = Vec::new();
        for comp in self.cyclic_components() {
            for (k, &start) in comp.iter().enumerate() {
                let allowed: BTreeSet<usize> = comp[k..].iter().copied().collect();
                let mut path = vec![start];
                self.extend(start, &allowed, &mut path, &mut out, cap)?;
            }
        }
        Ok(out)
    }

    fn extend(
        &self,
        start: usize,
        allowed: &BTreeSet<usize>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), StratError> {
        let last = *path.last().expect("path starts non-empty");
        for &(_, next) in self.edges.range((last, 0)..=(last, usize::MAX)) {
            if next == start {
                if out.len() == cap {
                    return Err(StratError::CycleCap { cap });
                }
                out.push(path.clone());
            } else if allowed.contains(&next) && !path.contains(&next) {
                path.push(next);
                self.extend(start, allowed, path, out, cap)?;
                path.pop();
            }
        }
        Ok(())
    }
}

/// Edges `ξ1 → ξ2` whenever `ξ1 ≺ ξ2` (Str) or `ξ1 ≺_c ξ2` (CStr).
pub fn chase_graph(deps: &[Dependency], order: GraphOrder) -> Result<DepGraph, ClassError> {
    require_tgds(deps)?;
    let mut g = DepGraph {
        size: deps.len(),
        edges: BTreeSet::new(),
    };
    for (a, x1) in deps.iter().enumerate() {
        for (b, x2) in deps.iter().enumerate() {
            let hit = match order {
                GraphOrder::Str => precedes_str(x1, x2),
                GraphOrder::CStr => precedes_c(x1, x2),
            };
            if hit.is_some() {
                g.edges.insert((a, b));
            }
        }
    }
    Ok(g)
}

fn every_cycle_wa(deps: &[Dependency], order: GraphOrder, cap: usize) -> Result<Verdict<Vec<usize>>, StratError> {
    let g = chase_graph(deps, order)?;
    let mut checked: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cycle in g.simple_cycles(cap)? {
        let mut set = cycle.clone();
        set.sort();
        if !checked.insert(set.clone()) {
            continue;
        }
        let sub: Vec<Dependency> = set.iter().map(|&k| deps[k].clone()).collect();
        if !is_wa(&sub)?.member {
            return Ok(Verdict::no(cycle));
        }
    }
    Ok(Verdict::yes())
}

/// Every simple cycle of the ≺ chase graph is weakly acyclic. The witness is
/// an offending cycle of dependency indices.
pub fn is_stratified(deps: &[Dependency]) -> Result<Verdict<Vec<usize>>, StratError> {
    every_cycle_wa(deps, GraphOrder::Str, DEFAULT_CYCLE_CAP)
}

/// Every simple cycle of the ≺_c chase graph is weakly acyclic.
pub fn is_c_stratified(deps: &[Dependency]) -> Result<Verdict<Vec<usize>>, StratError> {
    every_cycle_wa(deps, GraphOrder::CStr, DEFAULT_CYCLE_CAP)
}

/// As [`is_stratified`] or [`is_c_stratified`] with an explicit cycle cap.
pub fn stratified_with_cap(
    deps: &[Dependency],
    order: GraphOrder,
    cap: usize,
) -> Result<Verdict<Vec<usize>>, StratError> {
    every_cycle_wa(deps, order, cap)
}
