//! Chase procedures over tgds, egds and denial constraints, with termination
//! analyzers, dependency transforms and a word-rewriting reduction.

pub mod model;
pub mod dsl;
pub mod rewrite;
pub mod srs;
pub mod chase;
pub mod classes;
pub mod strat;
pub mod cli;
