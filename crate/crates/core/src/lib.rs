//! Solvers and gadgets for the multilevel critical node game.
//!
//! A defender vaccinates vertices, an attacker infects some of the rest, the
//! defender then protects vertices, and the infection spreads along arcs
//! through every vertex that is neither vaccinated nor protected. The
//! defender's score is the total benefit of the vertices left uninfected.

pub mod cli;
pub mod error;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod poly;
pub mod propagation;
pub mod reductions;
pub mod samples;

pub use error::{Error, Level, Result};
pub use graph::{Graph, InducedSubgraph, VertexSet};
pub use instance::{Instance, StrategyTriple};
pub use propagation::{play, PlayOutcome};
