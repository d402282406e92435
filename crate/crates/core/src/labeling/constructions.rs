//! Interval-partition labelings for odd and even label counts.

use serde::{Deserialize, Serialize};

use super::{Label, Labeling};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Vertex;
use crate::interval::IntervalPartition;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Odd,
    Even,
}

impl ConstructionKind {
    /// The bad-triple fraction the construction tends to.
    pub fn limit(self, k: Label) -> Rational {
        let k = k as i64;
        match self {
            ConstructionKind::Odd => rational::ratio(4, (k + 1) * (k + 1)),
            ConstructionKind::Even => rational::ratio(4, k * (k + 2)),
        }
    }

    pub fn check_parity(self, k: Label) -> Result<()> {
        let ok = match self {
            ConstructionKind::Odd => k % 2 == 1,
            ConstructionKind::Even => k.is_multiple_of(2) && k >= 2,
        };
        if !ok {
            return Err(Error::param(format!("{self:?} construction cannot use k={k}")));
        }
        Ok(())
    }

    pub fn build(self, n: usize, k: Label) -> Result<Labeling> {
        match self {
            ConstructionKind::Odd => odd_construction(n, k),
            ConstructionKind::Even => even_construction(n, k),
        }
    }

    /// Ledger choices a reader needs to reproduce the labels exactly.
    pub fn choices(self) -> Vec<&'static str> {
        match self {
            ConstructionKind::Odd => vec![
                "t = (k+1)/2 parts, part l ends at floor(l*n/t)",
                "label of a pair in parts i <= j is i + j - 1, so labels run over 1..k",
            ],
            ConstructionKind::Even => vec![
                "parts are the common refinement of floor(l*n/t) and floor(l*n/(t+1)) boundaries, t = k/2",
                "pairs in parts i < j with j - i >= 2 get label i + 1",
                "consecutive parts use exact rational fractional indices; a sum equal to 1 gets the lower label",
            ],
        }
    }
}

/// `t = (k+1)/2` balanced parts.
pub fn odd_partition(n: usize, k: Label) -> Result<IntervalPartition> {
    ConstructionKind::Odd.check_parity(k)?;
    Ok(IntervalPartition::balanced(n, (k as usize).div_ceil(2)))
}

/// Pairs in parts `i <= j` (1-based) get `i + j - 1`; the bad triples are
/// exactly those inside one part.
pub fn odd_construction(n: usize, k: Label) -> Result<Labeling> {
    let part = odd_partition(n, k)?.part_index();
    Labeling::from_fn(n, k, |u, v| (part[u as usize - 1] + part[v as usize - 1] + 1) as Label)
}

/// Common refinement of the balanced `t`- and `(t+1)`-part partitions,
/// `t = k/2`; always exactly `k` (possibly empty) parts.
pub fn even_partition(n: usize, k: Label) -> Result<IntervalPartition> {
    ConstructionKind::Even.check_parity(k)?;
    let t = k as usize / 2;
    let ends: Vec<usize> = (1..=k as usize)
        .map(|b| if b % 2 == 1 { b.div_ceil(2) * n / (t + 1) } else { (b / 2) * n / t })
        .collect();
    IntervalPartition::from_boundaries(&ends)
}

/// `(u + 1 - min X) / |X|` for `u` in the part `X`.
pub fn fractional_index(u: Vertex, part: &std::ops::RangeInclusive<Vertex>) -> Rational {
    let len = (part.end() + 1 - part.start()) as i64;
    rational::ratio((u + 1 - part.start()) as i64, len)
}

/// Within a part `i` the label is `i`; parts two or more apart get `i + 1`;
/// consecutive parts get `i` when the fractional indices sum to at most 1
/// and `i + 1` otherwise.
pub fn even_construction(n: usize, k: Label) -> Result<Labeling> {
    let partition = even_partition(n, k)?;
    let parts = partition.parts();
    let part = partition.part_index();
    let one = rational::one();
    Labeling::from_fn(n, k, |u, v| {
        let (i, j) = (part[u as usize - 1], part[v as usize - 1]);
        let label = if i == j {
            i
        } else if j - i >= 2 {
            i + 1
        } else if fractional_index(u, &parts[i]) + fractional_index(v, &parts[j]) <= one {
            i
        } else {
            i + 1
        };
        label as Label + 1
    })
}

/// `(a + b) b (b + c) C(n, 3)`: the predicted number of bad triples whose
/// middle vertex lies in a part of relative size `b` between parts of
/// relative sizes `a` and `c`.
pub fn badcount_prediction(a: &Rational, b: &Rational, c: &Rational, n: usize) -> Result<Rational> {
    if [a, b, c].iter().any(|x| *x < &rational::zero()) {
        return Err(Error::param("part fractions must be nonnegative"));
    }
    Ok((a + b) * b * (b + c) * rational::int(binomial(n as u64, 3)))
}
