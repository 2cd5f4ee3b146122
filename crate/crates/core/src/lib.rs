//! Optimal hierarchical hubbing for robust network design when the demand
//! universe is given by a capacitated tree over the terminals.
//!
//! The main entry points are [`embed::optimal_t_hubbing`] (cheapest
//! embedding of the universe tree into a network),
//! [`witness::tree_witness`] (the tree-network capacity witness built
//! from nested minimum cuts) and [`witness::compose`]. The [`oracle`] module
//! holds the exhaustive checks used to certify results on small instances.

#[cfg(feature = "cli")]
pub mod cli;
pub mod dot;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod generate;
pub mod io;
pub mod metric;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod witness;

pub use error::{Error, Result};
pub use model::{CapTree, Hubbing, Instance, Network, NodeId};
pub use rational::Rational;
