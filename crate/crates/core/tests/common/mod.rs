#![allow(dead_code)]

pub mod precedence;

use chasekit::dsl::{parse_dependency, parse_instance};
use chasekit::model::{Dependency, Instance};
use proptest::prelude::*;

const RELS: [&str; 3] = ["R", "S", "T"];
const BODY_VARS: [&str; 3] = ["x", "y", "z"];
const EX_VARS: [&str; 2] = ["u", "v"];

fn atom_text(rel: usize, args: &[String]) -> String {
    format!("{}({})", RELS[rel], args.join(","))
}

/// One tgd over relations with the given arities: 1-2 body atoms over
/// x,y,z and 1-2 head atoms over body variables and existentials u,v.
fn tgd(arities: [usize; 3]) -> impl Strategy<Value = Dependency> {
    let atom = move |pool: Vec<&'static str>| {
        (0..3usize).prop_flat_map(move |r| {
            let pool = pool.clone();
            proptest::collection::vec(proptest::sample::select(pool), arities[r])
                .prop_map(move |args| (r, args.into_iter().map(String::from).collect::<Vec<_>>()))
        })
    };
    let body = proptest::collection::vec(atom(BODY_VARS.to_vec()), 1..=2);
    let mut head_pool = BODY_VARS.to_vec();
    head_pool.extend(EX_VARS);
    let head = proptest::collection::vec(atom(head_pool), 1..=2);
    (body, head).prop_map(|(body, head)| {
        let body_vars: Vec<&String> = body.iter().flat_map(|(_, a)| a).collect();
        // Head variables missing from the body become existential.
        let mut head = head;
        let mut ex: Vec<String> = Vec::new();
        for (_, args) in head.iter_mut() {
            for a in args.iter_mut() {
                if !body_vars.contains(&&*a) && BODY_VARS.contains(&a.as_str()) {
                    *a = "u".to_string();
                }
                if EX_VARS.contains(&a.as_str()) && !ex.contains(a) {
                    ex.push(a.clone());
                }
            }
        }
        let b: Vec<String> = body.iter().map(|(r, a)| atom_text(*r, a)).collect();
        let h: Vec<String> = head.iter().map(|(r, a)| atom_text(*r, a)).collect();
        let text = if ex.is_empty() {
            format!("{} -> {}", b.join(", "), h.join(", "))
        } else {
            format!("{} -> exists {} . {}", b.join(", "), ex.join(","), h.join(", "))
        };
        parse_dependency(&text).unwrap()
    })
}

/// At most four tgds over at most three relations of arity at most three.
pub fn small_sigma() -> impl Strategy<Value = Vec<Dependency>> {
    proptest::array::uniform3(1usize..=3).prop_flat_map(|ar| proptest::collection::vec(tgd(ar), 1..=4))
}

/// Instances of up to `max` atoms over `R/2` and `S/1` with constants a,b,c
/// and nulls ?n1..?n3.
pub fn small_instance(max: usize) -> impl Strategy<Value = Instance> {
    let term = proptest::sample::select(vec!["'a'", "'b'", "'c'", "?p1", "?p2", "?p3"]);
    let atom = prop_oneof![
        (term.clone(), term.clone()).prop_map(|(a, b)| format!("R({a},{b})")),
        term.prop_map(|a| format!("S({a})")),
    ];
    proptest::collection::vec(atom, 0..=max).prop_map(|atoms| parse_instance(&atoms.join(", ")).unwrap())
}
