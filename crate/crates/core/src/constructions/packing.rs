//! Edge-disjoint copies of short natural paths, one per transversal edge,
//! and the decoder that recovers the generating edge from any packed edge.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::bias::is_m_biased;
use super::transversal::{biased_transversal, is_reflecting, short_path_params};
use crate::certificate::Certificate;
use crate::combinatorics::colex_rank;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Vertex};
use crate::interval::{translate, IntervalPartition};

/// A copy of `P^(r)_s` stored by its increasing vertex tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedCopy {
    pub generator: Edge,
    pub vertices: Vec<Vertex>,
}

impl PackedCopy {
    /// The path's edges: consecutive r-windows of the vertex tuple.
    pub fn edges(&self, r: usize) -> Vec<Edge> {
        self.vertices.windows(r).map(|w| w.to_vec()).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PackingFamily {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub members: Vec<PackedCopy>,
    /// Set when the family was built on a truncated vertex range.
    #[serde(default)]
    pub approximate: bool,
}

impl PackingFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks each member is a natural path on `s` vertices of `[n]` and that
    /// members are pairwise edge-disjoint.
    pub fn verify(&self) -> Certificate {
        let cert = Certificate::new(format!("edge-disjoint packing of P^({})_{}", self.r, self.s))
            .param("n", self.n)
            .param("r", self.r)
            .param("s", self.s)
            .with_value(self.len());
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (i, q) in self.members.iter().enumerate() {
            let v = &q.vertices;
            let shaped = v.len() == self.s
                && v.windows(2).all(|w| w[0] < w[1])
                && v.first().is_some_and(|&a| a >= 1)
                && v.last().is_some_and(|&b| b as usize <= self.n);
            if !shaped {
                return cert.fail(serde_json::json!({ "malformed": v }));
            }
            for e in q.edges(self.r) {
                if let Some(&j) = owner.get(&colex_rank(&e)) {
                    return cert.fail(serde_json::json!({
                        "shared_edge": e,
                        "copies": [&self.members[j].vertices, v],
                    }));
                }
                owner.insert(colex_rank(&e), i);
            }
        }
        cert
    }
}

fn counts(set: &[Vertex], n: usize, x: usize) -> (usize, usize, usize) {
    let left = set.iter().filter(|&&v| (v as usize) <= x).count();
    let right = set.iter().filter(|&&v| (v as usize) > n - x).count();
    (left, set.len() - left - right, right)
}

/// `(X, Y, Z)` maximizing `|X| = |Z|` subject to the larger of `|X ∩ e|`,
/// `|Z ∩ e|` being `m - 1` and the smaller being 0.
pub fn canonical_partition(e: &[Vertex], n: usize, s: usize) -> Result<IntervalPartition> {
    let r = e.len();
    let m = short_path_params(n, r, s)?;
    let x = (0..=n / 2)
        .rev()
        .find(|&x| {
            let (left, _, right) = counts(e, n, x);
            left.max(right) == m - 1 && left.min(right) == 0
        })
        .ok_or_else(|| Error::Structural(format!("{e:?} is not {}-biased in [{n}]", m - 1)))?;
    IntervalPartition::from_lengths(vec![x, n - 2 * x, x], n)
}

/// `(X, Y, Z)` minimizing `|Y|` subject to `|X| = |Z|` and
/// `|Y ∩ f| = 2r - s`. Agrees with [`canonical_partition`] on generators and
/// is computable from any edge of the generated copy.
pub fn core_partition(f: &[Vertex], n: usize, s: usize) -> Option<IntervalPartition> {
    let core = (2 * f.len()).checked_sub(s)?;
    (0..=n / 2)
        .rev()
        .find(|&x| counts(f, n, x).1 == core)
        .map(|x| IntervalPartition::from_lengths(vec![x, n - 2 * x, x], n).unwrap())
}

/// Vertex set of the copy generated by `e`.
fn copy_vertices(e: &[Vertex], n: usize, s: usize) -> Result<Vec<Vertex>> {
    let x = canonical_partition(e, n, s)?.lengths()[0];
    let (left, _, _) = counts(e, n, x);
    let shift = (n - x) as i64;
    let extra = if left > 0 {
        translate(&e[..left], shift, n)?
    } else {
        translate(&e[e.len() - (s - e.len())..], -shift, n)?
    };
    let mut v: Vec<Vertex> = e.iter().chain(&extra).copied().collect();
    v.sort_unstable();
    v.dedup();
    if v.len() != s {
        return Err(Error::Structural(format!("copy for {e:?} has {} vertices, expected {s}", v.len())));
    }
    Ok(v)
}

/// One copy of `P^(r)_s` per edge of the biased transversal, pairwise
/// edge-disjoint.
pub fn generate_packing(n: usize, r: usize, s: usize) -> Result<PackingFamily> {
    let transversal = biased_transversal(n, r, s)?;
    let members = transversal
        .graph()
        .edges()
        .iter()
        .map(|e| {
            Ok(PackedCopy {
                generator: e.clone(),
                vertices: copy_vertices(e, n, s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PackingFamily {
        n,
        r,
        s,
        members,
        approximate: false,
    })
}

/// Recovers the generating edge of the packed copy containing `f`.
pub fn decode_generator(f: &[Vertex], n: usize, r: usize, s: usize) -> Result<Edge> {
    let m = short_path_params(n, r, s)?;
    let fail = |why: &str| Error::Decode(format!("{f:?} in (n={n}, r={r}, s={s}): {why}"));
    if f.len() != r || f.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail("not a sorted r-set"));
    }
    let x = core_partition(f, n, s).ok_or_else(|| fail("no partition isolates a core"))?.lengths()[0];
    let (left, core, _) = counts(f, n, x);
    let shift = (n - x) as i64;
    let mut vertices: Vec<Vertex> = f.to_vec();
    vertices.extend(translate(&f[..left], shift, n).map_err(|_| fail("translation leaves [n]"))?);
    vertices.extend(translate(&f[left + core..], -shift, n).map_err(|_| fail("translation leaves [n]"))?);
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() != s {
        return Err(fail("reconstruction has the wrong size"));
    }
    let (min_y, max_y) = ((x + 1) as Vertex, (n - x) as Vertex);
    let generator = if vertices.contains(&min_y) {
        vertices[..r].to_vec()
    } else if vertices.contains(&max_y) {
        vertices[s - r..].to_vec()
    } else {
        return Err(fail("neither end of the middle interval is used"));
    };
    let in_family = is_m_biased(&generator, n, m)? || (m < r && is_reflecting(&generator, n, m));
    let regenerated = copy_vertices(&generator, n, s).ok();
    if !in_family || regenerated.as_ref() != Some(&vertices) || !vertices.windows(r).any(|w| w == f) {
        return Err(fail("reconstruction does not regenerate the edge"));
    }
    Ok(generator)
}
