//! Syntax with variable binding, generated from a signature of arities.

pub mod arity_core;
pub mod cli;
pub mod examples;
pub mod initiality;
pub mod law_suite;
pub mod term_engine;
