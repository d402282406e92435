//! Exact branch-and-bound solvers for `τ`, `ν`, `ex` and `f(n, k)`.
//!
//! Searches visit candidates in a fixed order, so the reported witness is
//! the lexicographically least optimum and results do not depend on
//! scheduling. A search that runs out of budget returns its bounds with
//! `status: bounded` instead of a value.

pub mod cover;
pub mod labels;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{OrderedHypergraph, Vertex};
use crate::labeling::{cost, Label, Labeling};
use crate::pattern::PatternSpec;

pub use cover::{exact_ex, exact_nu, exact_tau};
pub use labels::{check_optimum_structure, exact_f, optimal_labelings, OptimaSet};

pub const NODE_LIMIT_VAR: &str = "ORDTURAN_NODE_LIMIT";
pub const TIME_LIMIT_VAR: &str = "ORDTURAN_TIME_LIMIT_SECS";

#[derive(Clone, Debug, PartialEq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    /// Restrict labeling searches to one orbit representative under
    /// reversal-inversion.
    pub symmetry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 100_000_000,
            time_limit: Duration::from_secs(60),
            symmetry: false,
        }
    }
}

impl SearchBudget {
    /// Defaults overridden by `ORDTURAN_NODE_LIMIT` and
    /// `ORDTURAN_TIME_LIMIT_SECS` when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Self::default();
        if let Ok(v) = std::env::var(NODE_LIMIT_VAR) {
            budget.node_limit = v
                .parse()
                .map_err(|_| Error::param(format!("{NODE_LIMIT_VAR}={v} is not a node count")))?;
        }
        if let Ok(v) = std::env::var(TIME_LIMIT_VAR) {
            let secs: f64 = v
                .parse()
                .map_err(|_| Error::param(format!("{TIME_LIMIT_VAR}={v} is not a number of seconds")))?;
            budget.time_limit = Duration::try_from_secs_f64(secs)
                .map_err(|_| Error::param(format!("{TIME_LIMIT_VAR}={v} is not a duration")))?;
        }
        budget.validate()?;
        Ok(budget)
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_limit == 0 || self.time_limit.is_zero() {
            return Err(Error::param("search limits must be positive"));
        }
        Ok(())
    }
}

/// Node and clock accounting for one search.
pub(crate) struct Meter {
    nodes: u64,
    limit: u64,
    deadline: Instant,
    pub(crate) exhausted: bool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            limit: budget.node_limit,
            deadline: Instant::now() + budget.time_limit,
            exhausted: false,
        }
    }

    /// Counts a node; true once a limit is hit.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit || (self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline) {
            self.exhausted = true;
        }
        self.exhausted
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Tau,
    Nu,
    Ex,
    F,
    MonotoneF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Bounded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// A transversal or a pattern-free hypergraph.
    Edges(OrderedHypergraph),
    /// Vertex tuples of edge-disjoint copies.
    Copies(Vec<Vec<Vertex>>),
    Labeling(Labeling),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub kind: Quantity,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern: Option<PatternSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<Label>,
    /// The optimum, or the best value found when bounded.
    pub value: u64,
    pub lower: u64,
    pub upper: u64,
    pub optimal: bool,
    pub status: Status,
    pub witness: Witness,
    pub nodes: u64,
}

impl ExactResult {
    pub(crate) fn finish(mut self) -> Self {
        self.optimal = self.lower == self.upper;
        self.status = if self.optimal { Status::Optimal } else { Status::Bounded };
        self
    }

    /// Re-checks the witness against the definition of the quantity and
    /// that its size or cost equals `value`.
    pub fn verify(&self) -> Result<Certificate> {
        let mut cert = Certificate::new(format!("{:?} witness", self.kind))
            .param("n", self.n)
            .with_value(self.value);
        let fail = |cert: Certificate, why: &str| cert.fail(why);
        match (&self.witness, self.kind) {
            (Witness::Edges(g), Quantity::Tau) => {
                let pattern = self.pattern.ok_or_else(|| Error::param("τ result without pattern"))?;
                let hit = crate::constructions::verify_transversal(g, pattern)?;
                if !hit.verified {
                    return Ok(cert.fail(hit.counterexample));
                }
                if g.edge_count() as u64 != self.value {
                    cert = fail(cert, "witness size differs from value");
                }
            }
            (Witness::Edges(g), Quantity::Ex) => {
                let pattern = self.pattern.ok_or_else(|| Error::param("ex result without pattern"))?;
                if let Some(emb) = find_embedding(g, &pattern.build()?)? {
                    return Ok(cert.fail(emb));
                }
                if g.edge_count() as u64 != self.value {
                    cert = fail(cert, "witness size differs from value");
                }
            }
            (Witness::Copies(copies), Quantity::Nu) => {
                let pattern = self.pattern.ok_or_else(|| Error::param("ν result without pattern"))?;
                let shape = pattern.build()?;
                let mut seen = std::collections::HashSet::new();
                for c in copies {
                    let valid = c.len() == pattern.s
                        && c.windows(2).all(|w| w[0] < w[1])
                        && c.first().is_some_and(|&v| v >= 1)
                        && c.last().is_some_and(|&v| v as usize <= self.n);
                    if !valid {
                        return Ok(cert.fail(c));
                    }
                    for e in shape.edges() {
                        let image: Vec<Vertex> = e.iter().map(|&v| c[v as usize - 1]).collect();
                        if !seen.insert(image.clone()) {
                            return Ok(cert.fail(serde_json::json!({ "shared_edge": image })));
                        }
                    }
                }
                if copies.len() as u64 != self.value {
                    cert = fail(cert, "witness size differs from value");
                }
            }
            (Witness::Labeling(phi), Quantity::F | Quantity::MonotoneF) => {
                if self.kind == Quantity::MonotoneF {
                    if let Some(t) = phi.monotonicity_violation() {
                        return Ok(cert.fail(t));
                    }
                }
                if cost(phi).good != self.value || Some(phi.k()) != self.k || phi.n() != self.n {
                    cert = fail(cert, "witness cost differs from value");
                }
            }
            _ => return Err(Error::Structural(format!("{:?} result carries the wrong witness kind", self.kind))),
        }
        Ok(cert)
    }
}
