//! Flower packings and the matching fractional transversal for `r | s`.

use super::packing::{PackedCopy, PackingFamily};
use crate::combinatorics::{binomial, subsets};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Vertex};
use crate::interval::IntervalPartition;
use crate::lp::EdgeWeighting;
use crate::rational::ratio;

/// Whether the constructions work on all of `[n]` or on its longest prefix
/// divisible by `k = s / r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisibility {
    Strict,
    Padded,
}

/// Returns `k = s / r` after checking `r | s` and, in strict mode, `k | n`.
fn petals(n: usize, r: usize, s: usize, mode: Divisibility) -> Result<usize> {
    if r == 0 || s < r || !s.is_multiple_of(r) {
        return Err(Error::param(format!("need r | s, got r={r} s={s}")));
    }
    let k = s / r;
    if mode == Divisibility::Strict && !n.is_multiple_of(k) {
        return Err(Error::param(format!("need k = s/r = {k} to divide n={n}")));
    }
    Ok(k)
}

/// One copy per r-subset `e` of the first part, on the vertices
/// `e, e + L, ..., e + (k-1)L` with `L = n / k`.
pub fn flower_packing(n: usize, r: usize, s: usize) -> Result<PackingFamily> {
    flower_packing_with(n, r, s, Divisibility::Strict)
}

pub fn flower_packing_with(n: usize, r: usize, s: usize, mode: Divisibility) -> Result<PackingFamily> {
    let k = petals(n, r, s, mode)?;
    let width = n / k;
    let members = subsets(width, r)
        .map(|e| {
            let vertices = (0..k)
                .flat_map(|j| e.iter().map(move |&v| v + (j * width) as Vertex))
                .collect();
            PackedCopy { generator: e, vertices }
        })
        .collect();
    Ok(PackingFamily {
        n,
        r,
        s,
        members,
        approximate: !n.is_multiple_of(k),
    })
}

/// The flower generator of the copy containing `f`: the residues of `f`
/// modulo the petal width.
pub fn flower_generator(f: &[Vertex], n: usize, s: usize) -> Result<Edge> {
    let r = f.len();
    let k = petals(n, r, s, Divisibility::Padded)?;
    let width = (n / k) as Vertex;
    let mut e: Vec<Vertex> = f.iter().map(|&v| (v - 1) % width + 1).collect();
    e.sort_unstable();
    e.dedup();
    let fam = flower_packing_with(n, r, s, Divisibility::Padded)?;
    let member = e.len() == r && fam.members.iter().any(|q| q.generator == e && q.edges(r).iter().any(|g| g == f));
    if !member {
        return Err(Error::Decode(format!("{f:?} is not an edge of the flower packing in [{n}]")));
    }
    Ok(e)
}

/// Weight `r/s` on every edge inside one of `k` interval parts.
pub fn fractional_transversal_weights(n: usize, r: usize, s: usize) -> Result<EdgeWeighting> {
    fractional_transversal_weights_with(n, r, s, Divisibility::Strict)
}

/// In padded mode the parts are as equal as possible; the weighting stays
/// feasible but its total exceeds `C(n/k, r)`.
pub fn fractional_transversal_weights_with(n: usize, r: usize, s: usize, mode: Divisibility) -> Result<EdgeWeighting> {
    let k = petals(n, r, s, mode)?;
    let parts = IntervalPartition::balanced(n, k);
    let mut w = EdgeWeighting::zero(n, r);
    for part in parts.parts() {
        let offset = part.start() - 1;
        let len = (part.end() + 1 - part.start()) as usize;
        for e in subsets(len, r) {
            let shifted: Vec<Vertex> = e.iter().map(|v| v + offset).collect();
            w.set(&shifted, ratio(r as i64, s as i64))?;
        }
    }
    debug_assert!(mode == Divisibility::Padded || w.total() == crate::rational::int(binomial((n / k) as u64, r as u64)));
    Ok(w)
}
