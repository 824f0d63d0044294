//! Game comonads over finite relational structures.
//!
//! The library materializes the Ehrenfeucht-Fraïssé and modal comonads on
//! finite σ-structures, solves the abstract back-and-forth games on their
//! forest-ordered carriers, builds bisimulation spans, decides the
//! resource-indexed equivalence relations (morphism preorder, homomorphism
//! equivalence, strong equivalence, bisimilarity, isomorphism) for the EF,
//! pebbling, and modal covers, and computes coalgebra numbers. Every decision
//! procedure is cross-checkable against independent classical oracles:
//! rank-bounded back-and-forth recursion, k-pebble games, step-bounded
//! bisimulation, bijection games, recursive tree-depth, and elimination-order
//! tree-width.
//!
//! Start with the runnable examples (`cargo run --example ef_game`, etc.) or
//! the `game-comonads` binary, which exposes the same machinery over a small
//! line-oriented structure format.

pub mod cli;
pub mod comonad;
pub mod dot;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod forest;
pub mod game;
pub mod morphism;
pub mod oracle;
pub mod parse;
pub mod path;
pub mod structure;

pub use error::{Error, Result};
