use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, colex_rank, subsets};
use crate::error::{Error, Result};

pub type Vertex = u32;

/// A strictly increasing tuple of vertices.
pub type Edge = Vec<Vertex>;

/// An r-uniform hypergraph on the ordered vertex set `1..=n`.
///
/// Edges are kept sorted lexicographically; membership is answered from a
/// dense bitset indexed by colex rank over the edge universe of `K^(r)_n`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct OrderedHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
    members: FixedBitSet,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawHypergraph> for OrderedHypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        OrderedHypergraph::new(raw.n, raw.r, raw.edges)
    }
}

impl From<OrderedHypergraph> for RawHypergraph {
    fn from(g: OrderedHypergraph) -> Self {
        RawHypergraph {
            n: g.n,
            r: g.r,
            edges: g.edges,
        }
    }
}

impl OrderedHypergraph {
    /// Builds a hypergraph, normalizing each edge to increasing order.
    ///
    /// Rejects edges of the wrong size, vertices outside `1..=n`, repeated
    /// vertices within an edge and duplicate edges.
    pub fn new(n: usize, r: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut g = Self::empty(n, r);
        for mut e in edges {
            e.sort_unstable();
            g.validate_edge(&e)?;
            let rank = colex_rank(&e);
            if g.members.contains(rank) {
                return Err(Error::param(format!("duplicate edge {e:?}")));
            }
            g.members.insert(rank);
            g.edges.push(e);
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    /// Like [`OrderedHypergraph::new`] but silently drops duplicate edges.
    pub fn from_edges_dedup(n: usize, r: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = Self::empty(n, r);
        for mut e in edges {
            e.sort_unstable();
            g.validate_edge(&e)?;
            let rank = colex_rank(&e);
            if !g.members.put(rank) {
                g.edges.push(e);
            }
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    pub fn empty(n: usize, r: usize) -> Self {
        OrderedHypergraph {
            n,
            r,
            edges: Vec::new(),
            members: FixedBitSet::with_capacity(binomial(n as u64, r as u64) as usize),
        }
    }

    /// `K^(r)_n`.
    pub fn complete(n: usize, r: usize) -> Self {
        let edges: Vec<Edge> = subsets(n, r).collect();
        let mut members = FixedBitSet::with_capacity(edges.len());
        members.insert_range(..);
        OrderedHypergraph { n, r, edges, members }
    }

    fn validate_edge(&self, e: &[Vertex]) -> Result<()> {
        if e.len() != self.r {
            return Err(Error::param(format!("edge {e:?} does not have {} vertices", self.r)));
        }
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param(format!("edge {e:?} repeats a vertex")));
        }
        if e.iter().any(|&v| v == 0 || v as usize > self.n) {
            return Err(Error::Range(format!("edge {e:?} leaves 1..={}", self.n)));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Membership test for a sorted vertex tuple.
    pub fn contains(&self, e: &[Vertex]) -> bool {
        e.len() == self.r
            && e.iter().all(|&v| v >= 1 && v as usize <= self.n)
            && self.members.contains(colex_rank(e))
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.members.contains(rank)
    }

    /// Colex ranks of the edges, ascending.
    pub fn edge_ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    /// Edges of `K^(r)_n` missing from this graph.
    pub fn complement(&self) -> Self {
        let edges: Vec<Edge> = subsets(self.n, self.r).filter(|e| !self.contains(e)).collect();
        let mut members = self.members.clone();
        members.toggle_range(..);
        OrderedHypergraph {
            n: self.n,
            r: self.r,
            edges,
            members,
        }
    }

    /// Canonical compact JSON: `{"n":..,"r":..,"edges":[[..],..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Debug for OrderedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedHypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}
