use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, OrderedHypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    /// Tight path with vertices in their natural order.
    NaturalPath,
    /// Natural path keeping only its first and last edges.
    LoosePath,
    /// Tight path reordered by the row/column grid scheme.
    CrossingPath,
    /// Ordered tight cycle.
    TightCycle,
    /// Complete r-graph on s vertices.
    Complete,
}

impl PatternKind {
    pub fn name(self) -> &'static str {
        match self {
            PatternKind::NaturalPath => "natural-path",
            PatternKind::LoosePath => "loose-path",
            PatternKind::CrossingPath => "crossing-path",
            PatternKind::TightCycle => "tight-cycle",
            PatternKind::Complete => "complete",
        }
    }
}

impl FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural-path" | "natural" | "path" | "P" => Ok(PatternKind::NaturalPath),
            "loose-path" | "loose" | "LP" => Ok(PatternKind::LoosePath),
            "crossing-path" | "crossing" | "Q" => Ok(PatternKind::CrossingPath),
            "tight-cycle" | "cycle" | "C" => Ok(PatternKind::TightCycle),
            "complete" | "K" => Ok(PatternKind::Complete),
            other => Err(Error::param(format!("unknown pattern kind `{other}`"))),
        }
    }
}

/// A parametric ordered pattern on vertex set `1..=s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternSpec {
    pub kind: PatternKind,
    pub r: usize,
    pub s: usize,
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(r={},s={})", self.kind.name(), self.r, self.s)
    }
}

impl PatternSpec {
    pub fn new(kind: PatternKind, r: usize, s: usize) -> Result<Self> {
        let spec = PatternSpec { kind, r, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn natural_path(r: usize, s: usize) -> Result<Self> {
        Self::new(PatternKind::NaturalPath, r, s)
    }

    pub fn loose_path(r: usize, s: usize) -> Result<Self> {
        Self::new(PatternKind::LoosePath, r, s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 1 || self.s < self.r {
            return Err(Error::param(format!("{self}: need s >= r >= 1")));
        }
        if self.kind == PatternKind::LoosePath && !(self.r < self.s && self.s < 2 * self.r) {
            return Err(Error::param(format!("{self}: loose path needs r < s <= 2r-1")));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<OrderedHypergraph> {
        build_pattern(*self)
    }
}

/// Materializes a pattern on the vertex set `1..=s` in its ordering.
pub fn build_pattern(spec: PatternSpec) -> Result<OrderedHypergraph> {
    spec.validate()?;
    let PatternSpec { kind, r, s } = spec;
    let edges: Vec<Edge> = match kind {
        PatternKind::NaturalPath => windows(&(1..=s as Vertex).collect::<Vec<_>>(), r),
        PatternKind::LoosePath => vec![
            (1..=r as Vertex).collect(),
            ((s - r + 1) as Vertex..=s as Vertex).collect(),
        ],
        PatternKind::CrossingPath => windows(&crossing_path_sequence(r, s), r),
        PatternKind::TightCycle => (0..s)
            .map(|j| (0..r).map(|i| ((j + i) % s) as Vertex + 1).collect())
            .collect(),
        PatternKind::Complete => subsets(s, r).collect(),
    };
    OrderedHypergraph::from_edges_dedup(s, r, edges)
}

/// Consecutive r-windows of a vertex sequence, each sorted.
fn windows(seq: &[Vertex], r: usize) -> Vec<Edge> {
    seq.windows(r)
        .map(|w| {
            let mut e = w.to_vec();
            e.sort_unstable();
            e
        })
        .collect()
}

/// Path order of the crossing path expressed in the vertex ordering.
///
/// Cells of an `r x ceil(s/r)` grid are filled column by column, so empty
/// cells form a suffix of the last column. The vertex order reads rows top to
/// bottom, each row left to right; the path order reads columns left to
/// right, each column top to bottom.
fn crossing_path_sequence(r: usize, s: usize) -> Vec<Vertex> {
    let cols = s.div_ceil(r);
    let occupied = |row: usize, col: usize| col * r + row < s;
    let row_len = |row: usize| (0..cols).filter(|&c| occupied(row, c)).count();
    let row_start: Vec<usize> = (0..r)
        .scan(0, |acc, row| {
            let start = *acc;
            *acc += row_len(row);
            Some(start)
        })
        .collect();
    (0..s)
        .map(|p| {
            let (col, row) = (p / r, p % r);
            (row_start[row] + col + 1) as Vertex
        })
        .collect()
}
