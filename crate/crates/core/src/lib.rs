//! Learning separating LTL and CTL formulas from examples, with the
//! satisfiability reductions and transformations around the problem.

pub mod formulas;
pub mod learner;
pub mod models;
pub mod properties;
pub mod reductions;
pub mod semantics;
pub mod transforms;
