//! Word rewriting over {0,1}, bounded derivation exploration, and the
//! translation of rewriting systems into dependency sets.

mod paths;
mod reduce;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::model::{Atom, Instance, Term};

pub use paths::{paths, star_instance, word_of_path, words};
pub use reduce::{reduce, ReduceError, ReduceMode};

/// A word over {0,1}; letters are stored as 0 and 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_letters(letters: Vec<u8>) -> Word {
        assert!(letters.iter().all(|&l| l < 2), "letters are 0 or 1");
        Word(letters)
    }

    /// Is `factor` a contiguous piece of `self`?
    pub fn contains_factor(&self, factor: &Word) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor.0.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a letter of {{0,1}}")]
pub struct BadLetter(pub char);

impl FromStr for Word {
    type Err = BadLetter;
    fn from_str(s: &str) -> Result<Word, BadLetter> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(BadLetter(other)),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

/// A rewriting system `({0,1}*, Θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Srs {
    rules: Vec<(Word, Word)>,
}

impl Srs {
    pub fn new(rules: Vec<(Word, Word)>) -> Srs {
        Srs { rules }
    }

    /// Builds a system from `("lhs","rhs")` string pairs.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Srs, BadLetter> {
        let rules = pairs
            .iter()
            .map(|(l, r)| Ok((l.parse()?, r.parse()?)))
            .collect::<Result<_, BadLetter>>()?;
        Ok(Srs { rules })
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn max_rhs_len(&self) -> usize {
        self.rules.iter().map(|(_, r)| r.len()).max().unwrap_or(0)
    }
}

/// One rewrite `u = xℓy ⟶ xry`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: usize,
    /// 0-based offset of the replaced factor.
    pub position: usize,
    pub result: Word,
}

/// Every single-step rewrite of `word`, ordered by position, then rule.
/// An empty left-hand side matches at each of the `|w|+1` boundaries.
pub fn rewrite_steps(word: &Word, srs: &Srs) -> Vec<RewriteStep> {
    let w = word.letters();
    let mut out = Vec::new();
    for p in 0..=w.len() {
        for (k, (l, r)) in srs.rules.iter().enumerate() {
            let l = l.letters();
            if p + l.len() <= w.len() && &w[p..p + l.len()] == l {
                let mut res = w[..p].to_vec();
                res.extend_from_slice(r.letters());
                res.extend_from_slice(&w[p + l.len()..]);
                out.push(RewriteStep {
                    rule: k,
                    position: p,
                    result: Word(res),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub word: Word,
    pub parent: Option<usize>,
    pub depth: usize,
    /// The rewrite producing this node from its parent.
    pub step: Option<(usize, usize)>,
}

/// The level-`depth` derivation tree of a word, built breadth first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub nodes: Vec<TreeNode>,
    /// False when the depth bound or the node cap cut off some derivation.
    pub complete: bool,
}

impl DerivationTree {
    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.parent == Some(i))
            .map(|(j, _)| j)
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Labels of the nodes up to depth `n`.
    pub fn labels_up_to(&self, n: usize) -> Vec<&Word> {
        self.nodes.iter().filter(|x| x.depth <= n).map(|x| &x.word).collect()
    }
}

pub fn derivation_tree(word: &Word, srs: &Srs, depth: usize, node_cap: usize) -> DerivationTree {
    let mut nodes = vec![TreeNode {
        word: word.clone(),
        parent: None,
        depth: 0,
        step: None,
    }];
    let mut complete = true;
    let mut i = 0;
    while i < nodes.len() {
        let steps = rewrite_steps(&nodes[i].word, srs);
        if !steps.is_empty() && nodes[i].depth == depth {
            complete = false;
        } else {
            for s in steps {
                if nodes.len() >= node_cap {
                    complete = false;
                    break;
                }
                nodes.push(TreeNode {
                    word: s.result,
                    parent: Some(i),
                    depth: nodes[i].depth + 1,
                    step: Some((s.rule, s.position)),
                });
            }
        }
        i += 1;
    }
    DerivationTree { nodes, complete }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    AllFinite,
    Unknown,
}

/// Explores the words reachable from `word`, generating at most `fuel`
/// rewrite results. A finite acyclic reachable graph means every derivation
/// is finite.
pub fn terminating_from(word: &Word, srs: &Srs, fuel: usize) -> Termination {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut mark: HashMap<Word, Mark> = HashMap::new();
    let mut stack: Vec<(Word, Vec<Word>)> = Vec::new();
    let mut generated = 0usize;
    let mut succ = |w: &Word| -> Option<Vec<Word>> {
        let steps = rewrite_steps(w, srs);
        generated += steps.len();
        if generated > fuel {
            return None;
        }
        let mut seen = HashSet::new();
        Some(steps.into_iter().map(|s| s.result).filter(|r| seen.insert(r.clone())).collect())
    };
    mark.insert(word.clone(), Mark::Open);
    let Some(first) = succ(word) else {
        return Termination::Unknown;
    };
    stack.push((word.clone(), first));
    while let Some((w, pending)) = stack.last_mut() {
        match pending.pop() {
            Some(next) => match mark.get(&next) {
                Some(Mark::Open) => return Termination::Unknown,
                Some(Mark::Done) => {}
                None => {
                    let Some(s) = succ(&next) else {
                        return Termination::Unknown;
                    };
                    mark.insert(next.clone(), Mark::Open);
                    stack.push((next, s));
                }
            },
            None => {
                mark.insert(w.clone(), Mark::Done);
                stack.pop();
            }
        }
    }
    Termination::AllFinite
}

/// The constant for a letter.
pub fn letter(l: u8) -> Term {
    Term::constant(if l == 0 { "0" } else { "1" })
}

/// `I_w = {E(x0,a1,x1), ..., E(x_{n-1},a_n,x_n)}` with distinct fresh nulls.
pub fn word_to_instance(word: &Word) -> Instance {
    let mut out = Instance::new();
    if word.is_empty() {
        return out;
    }
    let mut prev = Term::fresh_null();
    for &l in word.letters() {
        let next = Term::fresh_null();
        out.insert(Atom::new("E", vec![prev, letter(l), next.clone()]));
        prev = next;
    }
    out
}
