//! Exact toughness computations for small graphs: toughness and independence
//! number solvers, recognizers for minimally tough and α-critical graphs,
//! the reduction gadgets built on them, and exhaustive verification sweeps.

pub mod error;
pub mod gadgets;
pub mod graph;
pub mod harness;
pub mod io;
pub mod rational;
pub mod recognizers;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{CutsetWitness, Graph};
pub use rational::{ExactRational, ToughnessValue};
