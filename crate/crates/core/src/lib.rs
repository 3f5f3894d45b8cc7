//! Vanishing and high-weight criteria for iterated lowering operators applied
//! to the restriction of costandard `GL(n)`-modules in characteristic `p`,
//! together with an explicit model used to check them.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod matching;
pub mod nabla;
pub mod poly;
pub mod report;
pub mod seq_graph;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use weights::{BranchingPair, IndexSet, Residue};
