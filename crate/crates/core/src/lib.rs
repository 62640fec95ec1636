//! Fair division of indivisible goods that sit on the vertices of a graph.
//!
//! Every bundle handed to an agent must induce a connected subgraph. The crate
//! covers maximin-share (MMS) guarantees and the price of connectivity, the
//! EFk/EFX family of envy relaxations, the graph machinery both rely on
//! (blocks, ear decompositions, bipolar orderings, linkedness), and
//! exhaustive oracles that check every constructive result at small sizes.
//!
//! All values are exact rationals; no floating point is involved in any
//! fairness decision.

pub mod bench;
pub mod caps;
pub mod checkers;
pub mod dispatch;
pub mod envy;
mod error;
pub mod format;
pub mod graph;
pub mod instances;
pub mod mms;
pub mod oracles;
pub mod summary;
pub mod valuation;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{BipolarOrder, BlockTree, EarDecomposition, Graph};
pub use valuation::{
    AdditiveValuation, Allocation, Instance, Rational, TabulatedValuation, Valuation,
};
