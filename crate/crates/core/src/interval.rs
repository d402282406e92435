//! Interval partitions, interval chromatic number, and the reflection and
//! translation maps on `[n]`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{OrderedHypergraph, Vertex};

/// Consecutive intervals `X_1 < X_2 < ...` of `[n]` given by their sizes.
/// Parts may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    lengths: Vec<usize>,
}

impl IntervalPartition {
    pub fn from_lengths(lengths: Vec<usize>, n: usize) -> Result<Self> {
        let total: usize = lengths.iter().sum();
        if total != n {
            return Err(Error::param(format!("part sizes sum to {total}, expected {n}")));
        }
        Ok(IntervalPartition { lengths })
    }

    /// Partition from the right endpoints `b_1 <= ... <= b_k = n` of the parts.
    pub fn from_boundaries(ends: &[usize]) -> Result<Self> {
        let mut prev = 0;
        let mut lengths = Vec::with_capacity(ends.len());
        for &b in ends {
            if b < prev {
                return Err(Error::param(format!("boundaries {ends:?} are not sorted")));
            }
            lengths.push(b - prev);
            prev = b;
        }
        Ok(IntervalPartition { lengths })
    }

    /// `t` parts, part `l` holding `floor(l n / t) - floor((l-1) n / t)` vertices.
    pub fn balanced(n: usize, t: usize) -> Self {
        let ends: Vec<usize> = (1..=t).map(|l| l * n / t).collect();
        Self::from_boundaries(&ends).expect("balanced boundaries are sorted")
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn part_count(&self) -> usize {
        self.lengths.len()
    }

    /// The vertices of each part as inclusive ranges (empty ranges for empty parts).
    pub fn parts(&self) -> Vec<RangeInclusive<Vertex>> {
        let mut start = 1u32;
        self.lengths
            .iter()
            .map(|&len| {
                let part = start..=start + len as u32 - 1;
                start += len as u32;
                part
            })
            .collect()
    }

    /// 0-based index of the part containing `v`, for every vertex `1..=n`.
    pub fn part_index(&self) -> Vec<usize> {
        self.lengths
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| std::iter::repeat_n(i, len))
            .collect()
    }
}

/// Minimum number of independent intervals covering an ordered graph, by the
/// left-to-right greedy sweep.
pub fn interval_chromatic_number(g: &OrderedHypergraph) -> Result<usize> {
    if g.r() != 2 {
        return Err(Error::param(format!("interval chromatic number needs r=2, got r={}", g.r())));
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let mut neighbors_left = vec![Vec::new(); g.n() + 1];
    for e in g.edges() {
        neighbors_left[e[1] as usize].push(e[0]);
    }
    let mut count = 1;
    let mut start = 1u32;
    for v in 2..=g.n() as u32 {
        if neighbors_left[v as usize].iter().any(|&u| u >= start) {
            count += 1;
            start = v;
        }
    }
    Ok(count)
}

/// Finds an interval partition into `r` parts giving every edge exactly one
/// vertex per part, if one exists.
///
/// Edge `e` needs its j-th vertex in part j, so the j-th cut `c_j` must lie in
/// `[max_e e_j, min_e e_{j+1} - 1]`. The lower ends are nondecreasing in `j`,
/// so taking every cut at its lower end succeeds whenever any choice does.
pub fn is_r_interval_partite(g: &OrderedHypergraph) -> Option<IntervalPartition> {
    let r = g.r();
    let n = g.n();
    let mut cuts = Vec::with_capacity(r);
    for j in 0..r.saturating_sub(1) {
        let lower = g.edges().iter().map(|e| e[j] as usize).max().unwrap_or(0);
        let upper = g.edges().iter().map(|e| e[j + 1] as usize - 1).min().unwrap_or(n);
        if lower > upper {
            return None;
        }
        cuts.push(lower);
    }
    cuts.push(n);
    Some(IntervalPartition::from_boundaries(&cuts).expect("cuts are nondecreasing"))
}

/// `n + 1 - u`.
pub fn reflect(u: Vertex, n: usize) -> Result<Vertex> {
    if u == 0 || u as usize > n {
        return Err(Error::Range(format!("vertex {u} outside 1..={n}")));
    }
    Ok(n as Vertex + 1 - u)
}

/// `S + c`, requiring every shifted vertex to stay in `1..=n`.
pub fn translate(set: &[Vertex], c: i64, n: usize) -> Result<Vec<Vertex>> {
    set.iter()
        .map(|&u| {
            let shifted = i64::from(u) + c;
            if shifted < 1 || shifted > n as i64 {
                Err(Error::Range(format!("{u} + {c} leaves 1..={n}")))
            } else {
                Ok(shifted as Vertex)
            }
        })
        .collect()
}
