//! Acyclicity-based termination classes over position graphs (SW, RA, WA,
//! SD), super-weak acyclicity, and the critical-instance semi-decision.

mod critical;
mod swa;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::model::{schema_of, ArityError, Atom, Dependency, Position, Term};


pub use critical::{critical_instance, uniform_termination_semidecision, UniformTermination};
pub use swa::{is_swa, move_places, trigger_relation, unifiable, Place};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("dependency {index} is not a tgd; rewrite egds first (egds_to_tgds)")]
    NotTgd { index: usize },
    #[error(transparent)]
    Arity(#[from] ArityError),
}

pub(crate) fn require_tgds(deps: &[Dependency]) -> Result<(), ClassError> {
    match deps.iter().position(|d| !d.is_tgd()) {
        Some(index) => Err(ClassError::NotTgd { index }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    Universal,
    Existential,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PositionGraph {
    pub vertices: BTreeSet<Position>,
    pub edges: BTreeSet<(Position, Position, EdgeLabel)>,
}

/// Outcome of a class test; `witness` explains a negative answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<W> {
    pub member: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes() -> Verdict<W> {
        Verdict {
            member: true,
            witness: None,
        }
    }

    pub fn no(witness: W) -> Verdict<W> {
        Verdict {
            member: false,
            witness: Some(witness),
        }
    }
}

fn positions_of(atoms: &[Atom], x: &Term) -> Vec<Position> {
    let mut out = Vec::new();
    for a in atoms {
        for (i, t) in a.args.iter().enumerate() {
            if t == x {
                let p = Position {
                    rel: a.rel.clone(),
                    index: i + 1,
                };
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn existential_positions(d: &Dependency) -> Vec<Position> {
    d.existential_vars()
        .iter()
        .flat_map(|z| positions_of(d.head_atoms(), z))
        .collect()
}

impl PositionGraph {
    fn over(deps: &[Dependency]) -> Result<PositionGraph, ClassError> {
        require_tgds(deps)?;
        Ok(PositionGraph {
            vertices: schema_of(deps)?
                .iter()
                .flat_map(|(r, k)| (1..=k).map(move |i| Position { rel: r.clone(), index: i }))
                .collect(),
            edges: BTreeSet::new(),
        })
    }

    fn add(&mut self, from: &Position, to: &Position, label: EdgeLabel) {
        self.edges.insert((from.clone(), to.clone(), label));
    }

    /// A cycle through an existential edge, as `[p0, p1, ..., p0]`.
    pub fn existential_cycle(&self) -> Option<Vec<Position>> {
        let mut g: DiGraph<Position, ()> = DiGraph::new();
        let idx: HashMap<&Position, NodeIndex> = self.vertices.iter().map(|p| (p, g.add_node(p.clone()))).collect();
        for (a, b, _) in &self.edges {
            g.add_edge(idx[a], idx[b], ());
        }
        let mut comp = HashMap::new();
        for (k, scc) in tarjan_scc(&g).into_iter().enumerate() {
            for n in scc {
                comp.insert(n, k);
            }
        }
        for (a, b, l) in &self.edges {
            if *l != EdgeLabel::Existential || comp[&idx[a]] != comp[&idx[b]] {
                continue;
            }
            let mut cycle = vec![a.clone()];
            cycle.extend(shortest_path(&g, idx[b], idx[a]));
            return Some(cycle);
        }
        None
    }
}

/// Vertex labels along a shortest path from `from` to `to`, both included.
fn shortest_path(g: &DiGraph<Position, ()>, from: NodeIndex, to: NodeIndex) -> Vec<Position> {
    let mut prev: HashMap<NodeIndex, NodeIndex> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(n) = queue.pop_front() {
        if n == to {
            break;
        }
        for m in g.neighbors(n) {
            if seen.insert(m) {
                prev.insert(m, n);
                queue.push_back(m);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[&cur];
        path.push(cur);
    }
    path.reverse();
    path.into_iter().map(|n| g[n].clone()).collect()
}

/// Edges from frontier positions: to the positions of the same variable in
/// the head (universal) and to every existential position (existential).
pub fn dependency_graph(deps: &[Dependency]) -> Result<PositionGraph, ClassError> {
    let mut g = PositionGraph::over(deps)?;
    for d in deps {
        let ex = existential_positions(d);
        for x in d.frontier() {
            for p in positions_of(&d.body, &x) {
                for q in positions_of(d.head_atoms(), &x) {
                    g.add(&p, &q, EdgeLabel::Universal);
                }
                for q in &ex {
                    g.add(&p, q, EdgeLabel::Existential);
                }
            }
        }
    }
    Ok(g)
}

/// Edges from every body variable to every head variable.
pub fn flow_graph(deps: &[Dependency]) -> Result<PositionGraph, ClassError> {
    let mut g = PositionGraph::over(deps)?;
    for d in deps {
        let frontier = d.frontier();
        for u in d.universal_vars() {
            for p in positions_of(&d.body, &u) {
                for v in &frontier {
                    for q in positions_of(d.head_atoms(), v) {
                        g.add(&p, &q, EdgeLabel::Universal);
                    }
                }
                for q in existential_positions(d) {
                    g.add(&p, &q, EdgeLabel::Existential);
                }
            }
        }
    }
    Ok(g)
}

/// Universal edges as in the dependency graph, existential edges from every
/// body variable.
pub fn extended_dependency_graph(deps: &[Dependency]) -> Result<PositionGraph, ClassError> {
    let mut g = PositionGraph::over(deps)?;
    for d in deps {
        for x in d.frontier() {
            for p in positions_of(&d.body, &x) {
                for q in positions_of(d.head_atoms(), &x) {
                    g.add(&p, &q, EdgeLabel::Universal);
                }
            }
        }
        for u in d.universal_vars() {
            for p in positions_of(&d.body, &u) {
                for q in existential_positions(d) {
                    g.add(&p, &q, EdgeLabel::Existential);
                }
            }
        }
    }
    Ok(g)
}

/// Positions where nulls may occur.
///
/// Candidates are the existential positions and everything reachable from
/// them by copying a frontier variable from body to head. Among those we keep
/// the largest set closed under the rule "a head position of a frontier
/// variable is affected when all body positions of that variable are", so a
/// variable that feeds its own position (as in `R(x,x) -> exists y . R(x,y)`)
/// counts as affected.
pub fn affected_positions(deps: &[Dependency]) -> Result<BTreeSet<Position>, ClassError> {
    require_tgds(deps)?;
    let seeds: BTreeSet<Position> = deps.iter().flat_map(existential_positions).collect();
    let mut cand = seeds.clone();
    loop {
        let mut grew = false;
        for d in deps {
            for x in d.frontier() {
                if positions_of(&d.body, &x).iter().any(|p| cand.contains(p)) {
                    for q in positions_of(d.head_atoms(), &x) {
                        grew |= cand.insert(q);
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    loop {
        let keep: BTreeSet<Position> = cand
            .iter()
            .filter(|q| {
                seeds.contains(*q)
                    || deps.iter().any(|d| {
                        d.frontier().iter().any(|x| {
                            positions_of(d.head_atoms(), x).contains(q)
                                && positions_of(&d.body, x).iter().all(|p| cand.contains(p))
                        })
                    })
            })
            .cloned()
            .collect();
        if keep.len() == cand.len() {
            break;
        }
        cand = keep;
    }
    Ok(cand)
}

/// Over the affected positions: edges from frontier variables whose body
/// positions are all affected, universal to affected head positions of the
/// variable and existential to the existential positions.
pub fn propagation_graph(deps: &[Dependency]) -> Result<PositionGraph, ClassError> {
    require_tgds(deps)?;
    let aff = affected_positions(deps)?;
    let mut g = PositionGraph {
        vertices: aff.clone(),
        edges: BTreeSet::new(),
    };
    for d in deps {
        let ex = existential_positions(d);
        for x in d.frontier() {
            let body = positions_of(&d.body, &x);
            if !body.iter().all(|p| aff.contains(p)) {
                continue;
            }
            for p in &body {
                for q in positions_of(d.head_atoms(), &x) {
                    if aff.contains(&q) {
                        g.add(p, &q, EdgeLabel::Universal);
                    }
                }
                for q in &ex {
                    g.add(p, q, EdgeLabel::Existential);
                }
            }
        }
    }
    Ok(g)
}

fn verdict(g: PositionGraph) -> Verdict<Vec<Position>> {
    match g.existential_cycle() {
        Some(c) => Verdict::no(c),
        None => Verdict::yes(),
    }
}

/// Stratified witness: the flow graph has no cycle through an existential edge.
pub fn is_sw(deps: &[Dependency]) -> Result<Verdict<Vec<Position>>, ClassError> {
    flow_graph(deps).map(verdict)
}

/// Rich acyclicity, over the extended dependency graph.
pub fn is_ra(deps: &[Dependency]) -> Result<Verdict<Vec<Position>>, ClassError> {
    extended_dependency_graph(deps).map(verdict)
}

/// Weak acyclicity, over the dependency graph.
pub fn is_wa(deps: &[Dependency]) -> Result<Verdict<Vec<Position>>, ClassError> {
    dependency_graph(deps).map(verdict)
}

/// Safety, over the propagation graph.
pub fn is_sd(deps: &[Dependency]) -> Result<Verdict<Vec<Position>>, ClassError> {
    propagation_graph(deps).map(verdict)
}

/// Renders a position cycle as `(R,1) -> (S,2) -> (R,1)`.
pub fn show_cycle<T: fmt::Display>(cycle: &[T]) -> String {
    cycle.iter().map(T::to_string).collect::<Vec<_>>().join(" -> ")
}
