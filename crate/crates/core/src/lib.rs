//! Projective dimension, regularity and depth of powers of edge ideals of
//! vertex-weighted oriented graphs.
//!
//! Closed-form values for disjoint unions of gap-free bipartite graphs
//! oriented away from one side live in [`formulas`]; [`betti`] computes the
//! same invariants from multigraded Betti numbers for any monomial ideal.

pub mod betti;
pub mod formulas;
pub mod graph;
pub mod monomial;

pub use betti::{betti_table, oracle_invariants, BettiConfig, BettiError, BettiTable, OracleInvariants};
pub use graph::{hypothesis_report, GraphError, HypothesisReport, WeightedOrientedGraph};
pub use monomial::{edge_ideal, IdealError, Monomial, MonomialIdeal};
