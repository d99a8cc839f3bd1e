//! The acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use chasekit::chase::{core_chase_step, explore_branches, run, ChaseConfig, ChaseStatus, CoreStep, Variant};
use chasekit::classes::{critical_instance, is_ra, is_sd, is_sw, is_swa, is_wa};
use chasekit::dsl::{parse_dependencies, parse_instance, parse_srs};
use chasekit::model::{
    core, herbrand_base, hom_equivalent, instance_graph, instance_hom, is_cyclic, isomorphic, proper_retraction,
    Atom, Dependency, Head, Instance, Schema, Term,
};
use chasekit::rewrite::{enrich, semi_enrich};
use chasekit::srs::{
    derivation_tree, reduce, terminating_from, word_to_instance, words, ReduceMode, Srs, Termination, Word,
};
use chasekit::strat::{is_c_stratified, is_ir, is_stratified, precedes_c, precedes_str};
use common::precedence::{precedes_brute, Kind};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn deps(text: &str) -> Vec<Dependency> {
    parse_dependencies(text).unwrap()
}

fn inst(text: &str) -> Instance {
    parse_instance(text).unwrap()
}

fn atoms(i: &Instance) -> BTreeSet<Atom> {
    i.iter().cloned().collect()
}

/// Runs `f` and fails it when it takes longer than `limit`.
fn timed(limit: Duration, what: &str, f: impl FnOnce() -> Result<(), String>) -> Result<(), String> {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took <= limit, format!("{what} took {took:.2?}, limit {limit:?}"))
}

fn variant_separation() -> Outcome {
    let second = Duration::from_secs(1);
    let ab = inst("R('a','b')");
    let s3 = deps("R(x,y) -> exists z . R(x,z)");
    timed(second, "obl on R(a,b)", || {
        let o = run(&ab, &s3, &ChaseConfig::new(Variant::Obl, 100));
        ensure(o.status == ChaseStatus::FuelExhausted, format!("obl: {}", o.status))
    })?;
    timed(second, "sobl on R(a,b)", || {
        let o = run(&ab, &s3, &ChaseConfig::new(Variant::Sobl, 100));
        ensure(o.status == ChaseStatus::Terminated && o.steps == 1, format!("sobl: {} after {}", o.status, o.steps))?;
        ensure(isomorphic(&o.result, &inst("R('a','b'), R('a',?m1)")), format!("sobl result {:?}", atoms(&o.result)))
    })?;
    let aa = inst("S('a','a')");
    let chain = deps("S(x,y) -> exists z . S(y,z)");
    timed(second, "std on S(a,a)", || {
        let o = run(&aa, &chain, &ChaseConfig::new(Variant::Std, 100));
        ensure(o.status == ChaseStatus::Terminated && o.steps == 0, format!("std: {} after {}", o.status, o.steps))
    })?;
    timed(second, "sobl on S(a,a)", || {
        let o = run(&aa, &chain, &ChaseConfig::new(Variant::Sobl, 100));
        ensure(o.status == ChaseStatus::FuelExhausted, format!("sobl: {}", o.status))
    })?;
    let mut counts = (0, 0);
    timed(second, "branches", || {
        let r = explore_branches(
            &inst(&fixture("order_matters.inst")),
            &deps(&fixture("order_matters.deps")),
            Variant::Std,
            30,
            64,
        );
        counts = (r.count(ChaseStatus::Terminated), r.count(ChaseStatus::FuelExhausted));
        ensure(counts.0 >= 1 && counts.1 >= 1, format!("branch counts {counts:?}"))
    })?;
    Ok(format!("branches: {} terminated, {} fuel_exhausted", counts.0, counts.1))
}

fn core_beats_standard() -> Outcome {
    let start = Instant::now();
    let i = inst(&fixture("core_wins.inst"));
    let sigma = deps(&fixture("core_wins.deps"));
    let c = run(&i, &sigma, &ChaseConfig::new(Variant::Core, 3));
    ensure(c.status == ChaseStatus::Terminated, format!("core: {}", c.status))?;
    ensure(c.steps <= 3, format!("core took {} steps", c.steps))?;
    ensure(atoms(&c.result) == atoms(&inst("R('a'), S('a')")), format!("core result {:?}", atoms(&c.result)))?;
    let r = explore_branches(&i, &sigma, Variant::Std, 100, 32);
    ensure(!r.branches.is_empty() && r.branches.len() <= 32, "branch count")?;
    ensure(
        r.branches.iter().all(|b| b.status == ChaseStatus::FuelExhausted),
        "some standard branch stopped before fuel ran out",
    )?;
    ensure(start.elapsed() < Duration::from_secs(1), format!("took {:.2?}", start.elapsed()))?;
    Ok(format!("core steps {}, std branches {}", c.steps, r.branches.len()))
}

fn member(class: &str, sigma: &[Dependency]) -> bool {
    match class {
        "sw" => is_sw(sigma).unwrap().member,
        "ra" => is_ra(sigma).unwrap().member,
        "wa" => is_wa(sigma).unwrap().member,
        "sd" => is_sd(sigma).unwrap().member,
        "swa" => is_swa(sigma).unwrap().member,
        "str" => is_stratified(sigma).unwrap().member,
        "cstr" => is_c_stratified(sigma).unwrap().member,
        "ir" => is_ir(sigma).unwrap(),
        other => panic!("unknown class {other}"),
    }
}

fn classification_table() -> Outcome {
    let start = Instant::now();
    let table: &[(&str, &[(&str, bool)])] = &[
        ("sigma3.deps", &[("wa", true), ("sd", true), ("swa", true), ("cstr", true)]),
        ("sigma4.deps", &[("wa", false)]),
        ("sigma5.deps", &[("sd", false)]),
        ("sigma6.deps", &[("swa", false)]),
        ("sigma7.deps", &[("str", true)]),
        ("sigma8.deps", &[("str", false)]),
        ("sigma9.deps", &[("cstr", false), ("ir", true)]),
        ("sd_not_wa.deps", &[("wa", false), ("sd", true)]),
        ("sw_member.deps", &[("sw", true)]),
        ("sw_nonmember.deps", &[("sw", false)]),
        ("ra_member.deps", &[("ra", true)]),
        ("ra_nonmember.deps", &[("ra", false), ("wa", true)]),
        ("example1.deps", &[("wa", false)]),
    ];
    let mut checked = 0;
    for (file, rows) in table {
        let sigma = deps(&fixture(file));
        for (class, want) in rows.iter() {
            let got = member(class, &sigma);
            ensure(got == *want, format!("{file}: {class} is {got}, expected {want}"))?;
            checked += 1;
        }
    }
    ensure(start.elapsed() < Duration::from_secs(5), format!("took {:.2?}", start.elapsed()))?;
    Ok(format!("{checked} memberships"))
}

const POOL: [&str; 20] = [
    "R(x,y) -> exists z . R(y,z)",
    "R(x,y) -> exists z . R(x,z)",
    "R(x,y) -> exists z . R(z,x)",
    "R(x,x) -> exists z . S(x,z)",
    "R(x,y), S(x,z) -> R(z,x)",
    "R(x,y) -> S(x,x)",
    "S(x,y) -> T(x)",
    "T(x) -> exists z . R(x,z), S(z,x)",
    "S(x,y), T(y) -> exists z . S(y,z), T(z)",
    "R(x,y), R(y,z) -> R(x,z)",
    "R(x,'a') -> exists z . R(z,x)",
    "T(x), R(x,y) -> exists z,w . S(z,w), R(w,y)",
    "S(x,y) -> S(y,x)",
    "R(x,y), S(y,x) -> T(x)",
    "T(x) -> R(x,x)",
    "R(x,y) -> exists z . R(x,y), S(y,z)",
    "S(x,y), T(x) -> T(x)",
    "S(x,'b') -> exists z . T(z)",
    "T(x) -> exists y . S(x,y), S(y,'a')",
    "R(x,y), T(y) -> exists z . S(x,z), T(z)",
];

fn precedence_oracle() -> Outcome {
    let start = Instant::now();
    let pool: Vec<Dependency> = POOL.iter().map(|t| deps(t).remove(0)).collect();
    let mut edges = (0, 0);
    for (a, xi1) in pool.iter().enumerate() {
        for (b, xi2) in pool.iter().enumerate() {
            let c = precedes_c(xi1, xi2).is_some();
            ensure(c == precedes_brute(xi1, xi2, Kind::C), format!("≺_c disagrees on ({}, {})", a + 1, b + 1))?;
            let s = precedes_str(xi1, xi2).is_some();
            ensure(s == precedes_brute(xi1, xi2, Kind::Str), format!("≺ disagrees on ({}, {})", a + 1, b + 1))?;
            edges.0 += c as usize;
            edges.1 += s as usize;
        }
    }
    ensure(start.elapsed() < Duration::from_secs(60), format!("took {:.2?}", start.elapsed()))?;
    Ok(format!(
        "{} ordered pairs, {} c-edges, {} str-edges",
        pool.len() * pool.len(),
        edges.0,
        edges.1
    ))
}

/// Fuel for a word whose longest derivation has `d` steps.
fn calibrated_fuel(d: usize, w: &Word, srs: &Srs) -> usize {
    let width = w.len().max(srs.max_rhs_len()) + 2;
    (d + 1) * width * width
}

fn srs_simulation() -> Outcome {
    let start = Instant::now();
    let dec = parse_srs(&fixture("decrement.srs")).unwrap();
    let sigma = reduce(&dec, ReduceMode::Basic).unwrap().deps;
    let mut notes = Vec::new();
    for w in ["1101", "111", "0"] {
        let word: Word = w.parse().unwrap();
        ensure(
            terminating_from(&word, &dec, 10_000) == Termination::AllFinite,
            format!("{w}: derivations not finite"),
        )?;
        let tree = derivation_tree(&word, &dec, 64, 100_000);
        ensure(tree.complete, format!("{w}: derivation tree cut off"))?;
        let fuel = calibrated_fuel(tree.max_depth(), &word, &dec);
        let o = run(&word_to_instance(&word), &sigma, &ChaseConfig::new(Variant::Core, fuel));
        ensure(o.status == ChaseStatus::Terminated, format!("{w}: core chase {} with fuel {fuel}", o.status))?;
        notes.push(format!("{w}: {}/{fuel} steps", o.steps));
    }

    let raise = parse_srs(&fixture("raise.srs")).unwrap();
    let sigma = reduce(&raise, ReduceMode::Basic).unwrap().deps;
    let mut cur = word_to_instance(&"1101".parse().unwrap());
    let target: Word = "1111".parse().unwrap();
    for k in 1..=3 {
        match core_chase_step(&cur, &sigma) {
            CoreStep::Progress { instance, .. } => cur = instance,
            other => return Err(format!("1101 under 0->1: step {k} gave {other:?}")),
        }
        let reached = words(&cur).contains(&target);
        ensure(reached == (k == 3), format!("1111 present after {k} steps: {reached}"))?;
    }
    ensure(
        matches!(core_chase_step(&cur, &sigma), CoreStep::Fixpoint),
        "1101 under 0->1 keeps going after three steps",
    )?;
    notes.push("1101->1111: 3 steps".into());

    // The growing system: wait for 500 steps within what is left of the
    // budget, checking that the run never reaches a fixpoint.
    let grow = parse_srs(&fixture("grow.srs")).unwrap();
    let sigma = reduce(&grow, ReduceMode::Basic).unwrap().deps;
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let mut cur = word_to_instance(&"0".parse().unwrap());
        for k in 1..=500usize {
            match core_chase_step(&cur, &sigma) {
                CoreStep::Progress { instance, .. } => cur = instance,
                _ => {
                    let _ = tx.send(Err(k));
                    return;
                }
            }
            if tx.send(Ok((k, cur.len()))).is_err() {
                return;
            }
        }
    });
    let deadline = start + Duration::from_secs(30);
    let mut last = (0, 1);
    loop {
        let left = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(left) {
            Ok(Ok(p)) => {
                last = p;
                if p.0 == 500 {
                    break;
                }
            }
            Ok(Err(k)) => return Err(format!("0 under 0->00 stopped at step {k}")),
            Err(_) => {
                return Err(format!(
                    "0 under 0->00: fuel 500 not exhausted within the time limit, \
                     reached step {} with {} atoms; {}",
                    last.0,
                    last.1,
                    notes.join(", ")
                ))
            }
        }
    }
    notes.push("0 under 0->00: fuel 500 exhausted".into());
    Ok(notes.join(", "))
}

fn sr_schema() -> Schema {
    Schema::new().with("E", 3).with("L", 2).with("R", 2).with("D", 1).with("Estar", 2)
}

fn random_cyclic_instance(rng: &mut ChaCha8Rng) -> Instance {
    let terms = ["'a'", "'b'", "'c'", "?s1", "?s2"];
    let labels = ["0", "1", "'a'"];
    loop {
        let n = rng.gen_range(1..=6);
        let mut text = Vec::new();
        for _ in 0..n {
            let t = |rng: &mut ChaCha8Rng| terms[rng.gen_range(0..terms.len())];
            text.push(match rng.gen_range(0..5) {
                0 => format!("E({},{},{})", t(rng), labels[rng.gen_range(0..labels.len())], t(rng)),
                1 => format!("L({},{})", t(rng), t(rng)),
                2 => format!("R({},{})", t(rng), t(rng)),
                3 => format!("Estar({},{})", t(rng), t(rng)),
                _ => format!("D({})", t(rng)),
            });
        }
        let i = inst(&text.join(", "));
        if is_cyclic(&instance_graph(&i)) {
            return i;
        }
    }
}

fn saturation() -> Outcome {
    let start = Instant::now();
    let srs = parse_srs(&fixture("raise.srs")).unwrap();
    let sigma = reduce(&srs, ReduceMode::Full).unwrap().deps;
    let delta = [Term::constant("0"), Term::constant("1")];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sizes = Vec::new();
    for k in 0..5 {
        let i = random_cyclic_instance(&mut rng);
        let o = run(&i, &sigma, &ChaseConfig::new(Variant::Core, 50));
        ensure(o.status == ChaseStatus::Terminated, format!("instance {k}: {}", o.status))?;
        let h = herbrand_base(&i, &sr_schema(), &delta);
        ensure(atoms(&o.result) == atoms(&h), format!("instance {k}: result differs from the Herbrand base"))?;
        sizes.push(format!("{}->{}", i.len(), h.len()));
    }
    ensure(start.elapsed() < Duration::from_secs(30), format!("took {:.2?}", start.elapsed()))?;
    Ok(format!("sizes {}", sizes.join(" ")))
}

const ENRICH_FIXTURES: [(&str, &[&str]); 12] = [
    ("R(x,y) -> exists z . R(x,z)", &["R('a','b')", "R('a','a'), R('b','a')"]),
    ("R(x,y) -> exists z . R(y,z)", &["R('a','b')", "R('a','a')"]),
    ("R(x,x) -> exists y . R(x,y)", &["R('a','a')", "R('a','b')"]),
    ("S(x), R(x,y) -> exists z . R(y,z)", &["S('a'), R('a','b')", "S('a'), R('b','a')"]),
    ("R(x,x) -> exists z . S(x,z); R(x,y), S(x,z) -> R(z,x)", &["R('a','a')", "R('a','b'), S('a','c')"]),
    ("R(x,y) -> exists z . R(z,x)", &["R('a','b')", "R('a','a')"]),
    (
        "S(x), E(x,y) -> E(y,x); S(x), E(x,y) -> exists z . E(y,z), E(z,x)",
        &["S('a'), E('a','b')", "S('a'), E('a','a')"],
    ),
    ("S(x,y) -> exists z . S(y,z); R(x) -> S(x,x)", &["S('a','b'), R('b')", "R('a')"]),
    ("R(x) -> exists z . R(z), S(x)", &["R('a')", "S('a')"]),
    ("R(x,y) -> S(y,x); S(x,y), R(y,z) -> R(x,z)", &["R('a','b'), R('b','c')", "R('a','a')"]),
    ("S(x,y) -> exists z . S(y,z)", &["S('a','a')", "S('a','b')"]),
    ("R(x,y,z), S(y) -> exists w . R(y,w,x)", &["R('a','b','c'), S('b')", "R('a','a','a'), S('a')"]),
];

fn enrichment() -> Outcome {
    let start = Instant::now();
    const F: usize = 40;
    let mut seen = [0usize; 2];
    let mut total = 0;
    for (text, instances) in ENRICH_FIXTURES {
        let sigma = deps(text);
        let max_body = sigma.iter().map(|d| d.body.len()).max().unwrap_or(0);
        let f2 = F * (1 + max_body);
        let pairs = [
            (Variant::Obl, enrich(&sigma).unwrap().deps),
            (Variant::Sobl, semi_enrich(&sigma).unwrap().deps),
        ];
        for i in instances.iter().map(|t| inst(t)).chain([critical_instance(&sigma).unwrap()]) {
            total += 1;
            for (variant, rewritten) in &pairs {
                let a = run(&i, &sigma, &ChaseConfig::new(*variant, F)).status == ChaseStatus::Terminated;
                let b = run(&i, rewritten, &ChaseConfig::new(Variant::Std, f2)).status == ChaseStatus::Terminated;
                ensure(a == b, format!("{text} on {:?}: {variant} {a}, std on the rewriting {b}", atoms(&i)))?;
                seen[a as usize] += 1;
            }
        }
    }
    ensure(seen[0] > 0 && seen[1] > 0, "fixtures do not separate terminating from diverging runs")?;
    ensure(start.elapsed() < Duration::from_secs(60), format!("took {:.2?}", start.elapsed()))?;
    Ok(format!("{total} fixtures, {} terminating and {} diverging runs", seen[1], seen[0]))
}

type Env = [(Term, Term)];

/// Calls `f` on every assignment of `vars` into `dom` until it returns true.
fn assignments(vars: &[Term], dom: &[Term], f: &mut dyn FnMut(&Env) -> bool) -> bool {
    fn go(k: usize, vars: &[Term], dom: &[Term], cur: &mut Vec<(Term, Term)>, f: &mut dyn FnMut(&Env) -> bool) -> bool {
        if k == vars.len() {
            return f(cur);
        }
        for v in dom {
            cur.push((vars[k].clone(), v.clone()));
            let stop = go(k + 1, vars, dom, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(0, vars, dom, &mut Vec::new(), f)
}

fn apply(t: &Term, env: &[(Term, Term)]) -> Term {
    env.iter().find(|(v, _)| v == t).map(|(_, x)| x.clone()).unwrap_or_else(|| t.clone())
}

fn subst(a: &Atom, env: &[(Term, Term)]) -> Atom {
    Atom {
        rel: a.rel.clone(),
        args: a.args.iter().map(|t| apply(t, env)).collect(),
    }
}

fn vars(atoms: &[Atom]) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for a in atoms {
        for t in &a.args {
            if t.is_var() && !out.contains(t) {
                out.push(t.clone());
            }
        }
    }
    out
}

/// Model check by exhaustive assignment over the domain of `k`.
fn is_model(k: &BTreeSet<Atom>, sigma: &[Dependency]) -> bool {
    let dom: Vec<Term> = k.iter().flat_map(|a| a.args.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    sigma.iter().all(|d| {
        let bv = vars(&d.body);
        let violated = assignments(&bv, &dom, &mut |env| {
            if !d.body.iter().all(|a| k.contains(&subst(a, env))) {
                return false;
            }
            match &d.head {
                Head::Atoms { atoms, .. } => {
                    let head: Vec<Atom> = atoms.iter().map(|a| subst(a, env)).collect();
                    let ex = vars(&head);
                    !assignments(&ex, &dom, &mut |env2| head.iter().all(|a| k.contains(&subst(a, env2))))
                }
                Head::Equal(l, r) => apply(l, env) != apply(r, env),
                Head::False => true,
            }
        });
        !violated
    })
}

const MODEL_FIXTURES: [(&str, &str, usize); 10] = [
    ("R(x,y) -> exists z . S(y,z)", "R('a','b')", 1),
    ("R(x,y) -> exists z . R(x,z)", "R('a','b')", 1),
    ("R(x,y) -> T(y,x); T(x,y) -> x = y", "R('a','a')", 1),
    ("R(x,y) -> S(y,x); S(x,y), R(y,z) -> R(x,z)", "R('a','b'), R('b','c')", 0),
    ("S(x) -> exists y . R(x,y); R(x,y) -> T(y)", "S('a')", 1),
    ("R(x,y) -> exists z . R(y,z), R(z,y)", "R('a','b')", 1),
    ("R(x,y) -> exists z . S(x,z); R(x,y) -> S(x,y); S(x,y), S(x,z) -> y = z", "R('a','b')", 1),
    ("R(x,x) -> exists z . S(x,z); R(x,y), S(x,z) -> R(z,x)", "R('a','a')", 1),
    ("T(x) -> exists y,z . E(x,y), E(y,z)", "T('a')", 1),
    ("-> D(0), D(1); D(x) -> exists y . P(x,y)", "", 1),
];

fn universal_models() -> Result<usize, String> {
    let mut models = 0;
    for (text, itext, extra) in MODEL_FIXTURES {
        let sigma = deps(text);
        let i = inst(itext);
        let o = run(&i, &sigma, &ChaseConfig::new(Variant::Std, 100));
        ensure(o.status == ChaseStatus::Terminated, format!("{text}: {}", o.status))?;
        let j = atoms(&o.result);
        ensure(is_model(&j, &sigma), format!("{text}: result violates a dependency"))?;
        ensure(i.map(&o.merges).is_subset(&o.result), format!("{text}: input not preserved"))?;

        let mut schema = Schema::new();
        for a in sigma.iter().flat_map(|d| d.atoms()).chain(i.iter()) {
            schema.observe(a).unwrap();
        }
        let mut dom: Vec<Term> = i.constants().into_iter().collect();
        for d in &sigma {
            for a in d.atoms() {
                dom.extend(a.args.iter().filter(|t| t.is_const() && !dom.contains(t)).cloned().collect::<Vec<_>>());
            }
        }
        dom.extend((0..extra).map(|k| Term::constant(&format!("e{k}"))));
        ensure(dom.len() <= o.result.dom().len() + 1, format!("{text}: model domain too large"))?;
        let base: Vec<Atom> = schema
            .iter()
            .flat_map(|(rel, ar)| {
                let mut rows: Vec<Vec<Term>> = vec![vec![]];
                for _ in 0..ar {
                    rows = rows.into_iter().flat_map(|r| dom.iter().map(move |t| [r.clone(), vec![t.clone()]].concat())).collect();
                }
                rows.into_iter().map(move |args| Atom { rel: rel.clone(), args })
            })
            .filter(|a| !i.contains(a))
            .collect();
        ensure(base.len() <= 17, format!("{text}: {} candidate atoms", base.len()))?;
        let j_inst = o.result.clone();
        let mut found = 0;
        for mask in 0u32..(1 << base.len()) {
            let mut k: BTreeSet<Atom> = atoms(&i);
            k.extend(base.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, a)| a.clone()));
            if !is_model(&k, &sigma) {
                continue;
            }
            found += 1;
            let mut kk = Instance::new();
            for a in k {
                kk.insert(a);
            }
            ensure(instance_hom(&j_inst, &kk).is_some(), format!("{text}: no homomorphism into a model"))?;
        }
        ensure(found > 0, format!("{text}: no model enumerated"))?;
        models += found;
    }
    Ok(models)
}

fn deterministic(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    deterministic(200)
        .run(&common::small_instance(8), |i| {
            let c = core(&i);
            proptest::prop_assert!(c.is_subset(&i));
            proptest::prop_assert!(hom_equivalent(&c, &i));
            proptest::prop_assert!(core(&c) == c);
            proptest::prop_assert!(proper_retraction(&c).is_none());
            Ok(())
        })
        .map_err(|e| format!("core: {e}"))?;
    let models = universal_models()?;
    deterministic(100)
        .run(&common::small_sigma().boxed(), |sigma| {
            let m = |c: &str| member(c, &sigma);
            let (sw, ra, wa, sd, swa) = (m("sw"), m("ra"), m("wa"), m("sd"), m("swa"));
            let (st, cst, ir) = (m("str"), m("cstr"), m("ir"));
            proptest::prop_assert!(!sw || ra);
            proptest::prop_assert!(!ra || wa);
            proptest::prop_assert!(!wa || sd);
            proptest::prop_assert!(!sd || swa);
            proptest::prop_assert!(!wa || cst);
            proptest::prop_assert!(!cst || st);
            proptest::prop_assert!(!cst || ir);
            Ok(())
        })
        .map_err(|e| format!("class chain: {e}"))?;
    ensure(start.elapsed() < Duration::from_secs(120), format!("took {:.2?}", start.elapsed()))?;
    Ok(format!("200 cores, {models} models checked, 100 dependency sets"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("variant separation", variant_separation),
        ("core chase beats standard", core_beats_standard),
        ("classification table", classification_table),
        ("precedence oracle equivalence", precedence_oracle),
        ("word-rewriting simulation", srs_simulation),
        ("saturation", saturation),
        ("enrichment", enrichment),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({took:.2?}; {detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}; {why})", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
