//! Ordered-hypergraph Turán quantities for tight paths: transversals,
//! packings, their fractional relaxations, and the 3-uniform edge-labeling
//! reformulation, each paired with an exhaustive checker.

pub mod certificate;
pub mod cli;
pub mod combinatorics;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod hypergraph;
pub mod interval;
pub mod labeling;
pub mod lp;
pub mod oracle;
pub mod pattern;
pub mod rational;
pub mod reproduce;

pub use certificate::Certificate;
pub use error::{Error, Result};
pub use hypergraph::{Edge, OrderedHypergraph, Vertex};
pub use interval::IntervalPartition;
pub use labeling::Labeling;
pub use pattern::{PatternKind, PatternSpec};
pub use rational::Rational;
