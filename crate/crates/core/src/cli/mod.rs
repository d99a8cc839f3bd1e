//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code with the rendered report, so the binary stays thin
//! and the commands are testable in-process.
//!
//! Exit codes: 0 success (chase terminated), 3 chase failed, 2 fuel
//! exhausted, 1 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chase::{explore_branches, run as run_chase, ChaseConfig, ChaseStatus, Strategy, Variant};
use crate::classes::{
    is_ra, is_sd, is_sw, is_swa, is_wa, show_cycle, uniform_termination_semidecision, UniformTermination,
};
use crate::dsl::{parse_dependency_file, parse_instance, parse_srs, render_dependencies_with_notes, ParseError};
use crate::model::{core, Dependency, Instance};
use crate::rewrite::{egds_to_tgds, enrich, semi_enrich, skolemize, Flavor, TransformedSet};
use crate::srs::{derivation_tree, reduce, terminating_from, ReduceMode, Srs, Word};
use crate::strat::{is_c_stratified, is_stratified, part2};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "chasekit", version, about = "Chase runs, termination analysis and rewriting reductions")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one chase sequence.
    Chase {
        #[arg(long)]
        deps: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "std")]
        variant: Variant,
        /// `fifo` or `random:SEED`.
        #[arg(long, default_value = "fifo")]
        strategy: Strategy,
        #[arg(long, env = "CHASEKIT_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Include every fired trigger in the report.
        #[arg(long)]
        trace: bool,
    },
    /// Enumerate chase sequences depth first.
    Branches {
        #[arg(long)]
        deps: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "std")]
        variant: Variant,
        #[arg(long, env = "CHASEKIT_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long, default_value_t = 64)]
        max_branches: usize,
    },
    /// Test termination classes.
    Analyze {
        #[arg(long)]
        deps: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "sw,ra,wa,sd,swa,str,cstr,ir")]
        classes: Vec<Class>,
        /// Replace egds by their tgd simulation first.
        #[arg(long)]
        rewrite_egds: bool,
    },
    /// Transform a dependency file.
    Rewrite {
        #[arg(long)]
        deps: PathBuf,
        #[arg(long)]
        mode: RewriteMode,
    },
    /// Compute the core of an instance.
    Core {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Chase the critical instance (obl or sobl).
    Critical {
        #[arg(long)]
        deps: PathBuf,
        #[arg(long)]
        variant: CriticalVariant,
        #[arg(long, env = "CHASEKIT_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Translate a word rewriting system into dependencies.
    Reduce {
        #[arg(long)]
        srs: PathBuf,
        #[arg(long, default_value = "basic")]
        mode: Mode,
    },
    /// Build the derivation tree of a word.
    Derive {
        #[arg(long)]
        srs: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 10_000)]
        node_cap: usize,
        #[arg(long, env = "CHASEKIT_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Sw,
    Ra,
    Wa,
    Sd,
    Swa,
    Str,
    Cstr,
    Ir,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteMode {
    Egd2tgd,
    Enrich,
    Semienrich,
    SkolemObl,
    SkolemSobl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalVariant {
    Obl,
    Sobl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Basic,
    Full,
    Denial,
}

/// A command result: a JSON tree, its human rendering and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub human: String,
    pub exit: i32,
}

impl Report {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("reports are plain JSON");
            s.push('\n');
            s
        } else {
            self.human.clone()
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Invalid(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn load_deps(path: &Path) -> Result<Vec<Dependency>, CliError> {
    let text = read(path)?;
    Ok(with_path(path, parse_dependency_file(&text))?.dependencies())
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = read(path)?;
    with_path(path, parse_instance(&text))
}

fn load_srs(path: &Path) -> Result<Srs, CliError> {
    let text = read(path)?;
    with_path(path, parse_srs(&text))
}

fn atoms_json(instance: &Instance) -> Value {
    Value::from(instance.iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

fn atoms_text(instance: &Instance) -> String {
    instance.iter().map(|a| format!("  {a}\n")).collect()
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Output {
            code: report.exit,
            stdout: report.render(cli.json),
            stderr: String::new(),
        },
        Err(e) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Executes a parsed command.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Chase {
            deps,
            instance,
            variant,
            strategy,
            fuel,
            trace,
        } => cmd_chase(&load_deps(deps)?, &load_instance(instance)?, *variant, *strategy, *fuel, *trace),
        Command::Branches {
            deps,
            instance,
            variant,
            fuel,
            max_branches,
        } => Ok(cmd_branches(&load_deps(deps)?, &load_instance(instance)?, *variant, *fuel, *max_branches)),
        Command::Analyze {
            deps,
            classes,
            rewrite_egds,
        } => cmd_analyze(&load_deps(deps)?, classes, *rewrite_egds),
        Command::Rewrite { deps, mode } => cmd_rewrite(&load_deps(deps)?, *mode),
        Command::Core { instance } => Ok(cmd_core(&load_instance(instance)?)),
        Command::Critical { deps, variant, fuel } => cmd_critical(&load_deps(deps)?, *variant, *fuel),
        Command::Reduce { srs, mode } => cmd_reduce(&load_srs(srs)?, *mode),
        Command::Derive {
            srs,
            word,
            depth,
            node_cap,
            fuel,
        } => cmd_derive(&load_srs(srs)?, word, *depth, *node_cap, *fuel),
    }
}

fn status_code(status: ChaseStatus) -> i32 {
    match status {
        ChaseStatus::Terminated => 0,
        ChaseStatus::FuelExhausted => 2,
        ChaseStatus::Failed => 3,
    }
}

pub fn cmd_chase(
    deps: &[Dependency],
    instance: &Instance,
    variant: Variant,
    strategy: Strategy,
    fuel: usize,
    trace: bool,
) -> Result<Report, CliError> {
    let mut config = ChaseConfig::new(variant, fuel).with_strategy(strategy);
    if trace {
        config = config.with_trace();
    }
    let out = run_chase(instance, deps, &config);
    let mut human = format!(
        "variant: {variant}\nstrategy: {strategy}\nstatus: {}\nsteps: {}\ninstance ({} atoms):\n{}",
        out.status,
        out.steps,
        out.result.len(),
        atoms_text(&out.result)
    );
    let mut js = json!({
        "command": "chase",
        "variant": variant,
        "strategy": strategy.to_string(),
        "fuel": fuel,
        "status": out.status,
        "steps": out.steps,
        "instance": atoms_json(&out.result),
    });
    if let Some(steps) = &out.trace {
        human.push_str("trace:\n");
        let mut rows = Vec::new();
        for (k, s) in steps.iter().enumerate() {
            let effect = match &s.merged {
                Some((a, b)) => format!("merge {a} into {b}"),
                None => s.added.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "),
            };
            human.push_str(&format!("  {}. {} => {}\n", k + 1, s.trigger, effect));
            rows.push(json!({
                "trigger": s.trigger.to_string(),
                "added": s.added.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "merged": s.merged.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
            }));
        }
        js["trace"] = Value::from(rows);
    }
    Ok(Report {
        json: js,
        human,
        exit: status_code(out.status),
    })
}

pub fn cmd_branches(
    deps: &[Dependency],
    instance: &Instance,
    variant: Variant,
    fuel: usize,
    max_branches: usize,
) -> Report {
    let rep = explore_branches(instance, deps, variant, fuel, max_branches);
    let statuses = [ChaseStatus::Terminated, ChaseStatus::FuelExhausted, ChaseStatus::Failed];
    let mut human = format!("variant: {variant}\nbranches: {}\n", rep.branches.len());
    for s in statuses {
        human.push_str(&format!("{s}: {}\n", rep.count(s)));
    }
    if rep.truncated {
        human.push_str("truncated: yes\n");
    }
    let mut rows = Vec::new();
    for (k, b) in rep.branches.iter().enumerate() {
        let choices: Vec<String> = b.choices.iter().map(|t| t.to_string()).collect();
        human.push_str(&format!("branch {}: {} after {} steps\n", k + 1, b.status, b.steps));
        rows.push(json!({
            "status": b.status,
            "steps": b.steps,
            "choices": choices,
            "instance": atoms_json(&b.result),
        }));
    }
    Report {
        json: json!({
            "command": "branches",
            "variant": variant,
            "fuel": fuel,
            "truncated": rep.truncated,
            "counts": {
                "terminated": rep.count(ChaseStatus::Terminated),
                "fuel_exhausted": rep.count(ChaseStatus::FuelExhausted),
                "failed": rep.count(ChaseStatus::Failed),
            },
            "branches": rows,
        }),
        human,
        exit: 0,
    }
}

fn class_name(c: Class) -> &'static str {
    match c {
        Class::Sw => "sw",
        Class::Ra => "ra",
        Class::Wa => "wa",
        Class::Sd => "sd",
        Class::Swa => "swa",
        Class::Str => "str",
        Class::Cstr => "cstr",
        Class::Ir => "ir",
    }
}

fn dep_cycle(cycle: &[usize]) -> String {
    let mut v: Vec<String> = cycle.iter().map(|k| format!("dependency {}", k + 1)).collect();
    if let Some(first) = v.first().cloned() {
        v.push(first);
    }
    v.join(" -> ")
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

pub fn cmd_analyze(deps: &[Dependency], classes: &[Class], rewrite_egds: bool) -> Result<Report, CliError> {
    let deps: Vec<Dependency> = if rewrite_egds && deps.iter().any(|d| !d.is_tgd()) {
        egds_to_tgds(deps).map_err(invalid)?.deps
    } else {
        deps.to_vec()
    };
    let mut human = String::new();
    let mut results = serde_json::Map::new();
    for &c in classes {
        let (member, certificate): (bool, Option<String>) = match c {
            Class::Sw | Class::Ra | Class::Wa | Class::Sd => {
                let v = match c {
                    Class::Sw => is_sw(&deps),
                    Class::Ra => is_ra(&deps),
                    Class::Wa => is_wa(&deps),
                    _ => is_sd(&deps),
                }
                .map_err(invalid)?;
                (v.member, v.witness.map(|w| show_cycle(&w)))
            }
            Class::Swa => {
                let v = is_swa(&deps).map_err(invalid)?;
                (v.member, v.witness.map(|w| show_cycle(&w.iter().map(|k| format!("dependency {}", k + 1)).collect::<Vec<_>>())))
            }
            Class::Str | Class::Cstr => {
                let v = if c == Class::Str { is_stratified(&deps) } else { is_c_stratified(&deps) }.map_err(invalid)?;
                (v.member, v.witness.map(|w| format!("cycle {} is not weakly acyclic", dep_cycle(&w))))
            }
            Class::Ir => {
                let mut bad = None;
                for part in part2(&deps).map_err(invalid)? {
                    let sub: Vec<Dependency> = part.iter().map(|&k| deps[k].clone()).collect();
                    if !is_sd(&sub).map_err(invalid)?.member {
                        let names: Vec<String> = part.iter().map(|k| format!("{}", k + 1)).collect();
                        bad = Some(format!("part {{{}}} is not safe", names.join(",")));
                        break;
                    }
                }
                (bad.is_none(), bad)
            }
        };
        let name = class_name(c);
        human.push_str(&format!("{name}: {}", if member { "YES" } else { "NO" }));
        if let Some(cert) = &certificate {
            human.push_str(&format!("  ({cert})"));
        }
        human.push('\n');
        results.insert(name.to_string(), json!({ "member": member, "certificate": certificate }));
    }
    Ok(Report {
        json: json!({ "command": "analyze", "dependencies": deps.len(), "classes": results }),
        human,
        exit: 0,
    })
}

fn transformed(mode: &str, t: &TransformedSet) -> Report {
    let notes: Vec<String> = t.provenance.iter().map(|o| o.to_string()).collect();
    Report {
        json: json!({
            "command": mode,
            "rules": t.deps.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "provenance": notes,
        }),
        human: render_dependencies_with_notes(&t.deps, &notes),
        exit: 0,
    }
}

pub fn cmd_rewrite(deps: &[Dependency], mode: RewriteMode) -> Result<Report, CliError> {
    let set = match mode {
        RewriteMode::Egd2tgd => egds_to_tgds(deps),
        RewriteMode::Enrich => enrich(deps),
        RewriteMode::Semienrich => semi_enrich(deps),
        RewriteMode::SkolemObl | RewriteMode::SkolemSobl => {
            let flavor = if mode == RewriteMode::SkolemObl { Flavor::Oblivious } else { Flavor::SemiOblivious };
            let rules = skolemize(deps, flavor).map_err(invalid)?;
            let lines: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
            return Ok(Report {
                json: json!({ "command": "rewrite", "rules": lines }),
                human: lines.iter().map(|l| format!("{l}\n")).collect(),
                exit: 0,
            });
        }
    }
    .map_err(invalid)?;
    Ok(transformed("rewrite", &set))
}

pub fn cmd_core(instance: &Instance) -> Report {
    let c = core(instance);
    Report {
        json: json!({ "command": "core", "size": c.len(), "core": atoms_json(&c) }),
        human: format!("core ({} of {} atoms):\n{}", c.len(), instance.len(), atoms_text(&c)),
        exit: 0,
    }
}

pub fn cmd_critical(deps: &[Dependency], variant: CriticalVariant, fuel: usize) -> Result<Report, CliError> {
    let v = match variant {
        CriticalVariant::Obl => Variant::Obl,
        CriticalVariant::Sobl => Variant::Sobl,
    };
    let r = uniform_termination_semidecision(deps, v, fuel).map_err(invalid)?;
    let name = match r {
        UniformTermination::TerminatesAll => "terminates_all",
        UniformTermination::Unknown => "unknown",
    };
    Ok(Report {
        json: json!({ "command": "critical", "variant": v, "fuel": fuel, "result": r }),
        human: format!("{name}\n"),
        exit: 0,
    })
}

pub fn cmd_reduce(srs: &Srs, mode: Mode) -> Result<Report, CliError> {
    let m = match mode {
        Mode::Basic => ReduceMode::Basic,
        Mode::Full => ReduceMode::Full,
        Mode::Denial => ReduceMode::Denial,
    };
    Ok(transformed("reduce", &reduce(srs, m).map_err(invalid)?))
}

pub fn cmd_derive(srs: &Srs, word: &str, depth: usize, node_cap: usize, fuel: usize) -> Result<Report, CliError> {
    let w: Word = word.parse().map_err(invalid)?;
    let tree = derivation_tree(&w, srs, depth, node_cap);
    let term = terminating_from(&w, srs, fuel);
    let mut human = format!(
        "word: {w:?}\ndepth: {depth}\nnodes: {}\ncomplete: {}\ntermination: {}\n",
        tree.nodes.len(),
        if tree.complete { "yes" } else { "no" },
        serde_json::to_value(term).expect("plain enum").as_str().unwrap_or_default()
    );
    let mut rows = Vec::new();
    for (k, n) in tree.nodes.iter().enumerate() {
        human.push_str(&format!("{}{:?}\n", "  ".repeat(n.depth + 1), n.word));
        rows.push(json!({
            "id": k,
            "word": n.word.to_string(),
            "parent": n.parent,
            "depth": n.depth,
            "rule": n.step.map(|s| s.0 + 1),
            "position": n.step.map(|s| s.1),
        }));
    }
    Ok(Report {
        json: json!({
            "command": "derive",
            "word": w.to_string(),
            "depth": depth,
            "complete": tree.complete,
            "termination": term,
            "nodes": rows,
        }),
        human,
        exit: 0,
    })
}
