use super::{letter, Srs};
use crate::dsl::parse_dependency;
use crate::model::{Atom, Dependency, Term};
use crate::rewrite::{Origin, RuleGroup, TransformedSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReduceMode {
    /// Σ_Θ ∪ Σ_LR.
    Basic,
    /// Adds Σ_AD, Σ_TC and Σ_SAT.
    Full,
    /// Σ_SAT replaced by `Estar(x,x) -> false`.
    Denial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("rule {index} has an empty left-hand side")]
    EmptyLhs { index: usize },
}

const LR: [&str; 4] = [
    "E(x0,0,x1), L(x1,y1) -> exists y0 . L(x0,y0), E(y0,0,y1)",
    "E(x0,1,x1), L(x1,y1) -> exists y0 . L(x0,y0), E(y0,1,y1)",
    "R(x0,z0), E(x0,0,x1) -> exists z1 . E(z0,0,z1), R(x1,z1)",
    "R(x0,z0), E(x0,1,x1) -> exists z1 . E(z0,1,z1), R(x1,z1)",
];
const LR_NOTES: [&str; 4] = ["L0", "L1", "R0", "R1"];

const AD: [&str; 5] = [
    "-> D(0), D(1)",
    "E(x,z,y) -> D(x), D(z), D(y)",
    "L(x,y) -> D(x), D(y)",
    "R(x,y) -> D(x), D(y)",
    "Estar(x,y) -> D(x), D(y)",
];

const TC: [&str; 4] = [
    "E(x,z,y) -> Estar(x,y)",
    "L(x,y) -> Estar(x,y)",
    "R(x,y) -> Estar(x,y)",
    "Estar(x,y), Estar(y,z) -> Estar(x,z)",
];

const SAT: [&str; 2] = [
    "Estar(v,v), D(x), D(z), D(y) -> E(x,z,y)",
    "Estar(v,v), D(x), D(y) -> L(x,y), R(x,y), Estar(x,y)",
];

fn fixed(out: &mut TransformedSet, group: RuleGroup, rules: &[&str], notes: Option<&[&str]>) {
    for (k, r) in rules.iter().enumerate() {
        let dep = parse_dependency(r).expect("built-in rule parses");
        out.push(
            dep,
            Origin::Reduction {
                group,
                rule: Some(k),
                note: notes.map(|n| n[k].to_string()),
            },
        );
    }
}

/// The tgd of a rule `(a1..an, b1..bm)`: the line for the lhs gets a parallel
/// line for the rhs, tied on by `L` at the left and `R` at the right.
fn theta_rule(lhs: &[u8], rhs: &[u8]) -> Dependency {
    let x = |i: usize| Term::var(&format!("x{i}"));
    let y = |i: usize| Term::var(&format!("y{i}"));
    let body: Vec<Atom> = lhs
        .iter()
        .enumerate()
        .map(|(i, &a)| Atom::new("E", vec![x(i), letter(a), x(i + 1)]))
        .collect();
    let mut head = vec![Atom::new("L", vec![x(0), y(0)])];
    for (i, &b) in rhs.iter().enumerate() {
        head.push(Atom::new("E", vec![y(i), letter(b), y(i + 1)]));
    }
    head.push(Atom::new("R", vec![x(lhs.len()), y(rhs.len())]));
    let names: Vec<String> = (0..=rhs.len()).map(|i| format!("y{i}")).collect();
    let exists: Vec<&str> = names.iter().map(String::as_str).collect();
    Dependency::tgd(body, &exists, head)
}

/// The dependency set simulating `srs` over the schema {E, L, R, D, Estar}.
pub fn reduce(srs: &Srs, mode: ReduceMode) -> Result<TransformedSet, ReduceError> {
    let mut out = TransformedSet::new();
    for (k, (l, r)) in srs.rules().iter().enumerate() {
        if l.is_empty() {
            return Err(ReduceError::EmptyLhs { index: k });
        }
        out.push(
            theta_rule(l.letters(), r.letters()),
            Origin::Reduction {
                group: RuleGroup::Theta,
                rule: Some(k),
                note: Some(format!("{} -> {}", l, r)),
            },
        );
    }
    fixed(&mut out, RuleGroup::LR, &LR, Some(&LR_NOTES));
    if mode == ReduceMode::Basic {
        return Ok(out);
    }
    fixed(&mut out, RuleGroup::AD, &AD, None);
    fixed(&mut out, RuleGroup::TC, &TC, None);
    match mode {
        ReduceMode::Full => fixed(&mut out, RuleGroup::SAT, &SAT, None),
        _ => fixed(&mut out, RuleGroup::Denial, &["Estar(x,x) -> false"], None),
    }
    Ok(out)
}
