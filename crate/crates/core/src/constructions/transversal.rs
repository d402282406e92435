use rayon::prelude::*;
use serde::Serialize;

use super::bias::{h_or_zero, is_m_biased, require_even};
use crate::certificate::Certificate;
use crate::combinatorics::subsets;
use crate::embed::{enumerate_copies, DEFAULT_COPY_CAP};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, OrderedHypergraph};
use crate::pattern::PatternSpec;

/// Checks `n` even and `r <= s <= min(2r - 1, n)`; returns `m = s - r + 1`.
pub fn short_path_params(n: usize, r: usize, s: usize) -> Result<usize> {
    require_even(n)?;
    if r < 1 || s < r || s > 2 * r - 1 {
        return Err(Error::param(format!("need r <= s <= 2r-1, got r={r} s={s}")));
    }
    if s > n {
        return Err(Error::param(format!("s={s} exceeds n={n}")));
    }
    Ok(s - r + 1)
}

/// `2 h(n, r, m) + h(n, r-1, m)`, the common value of the transversal and
/// packing numbers of short natural paths.
pub fn short_path_value(n: usize, r: usize, s: usize) -> Result<u64> {
    let m = short_path_params(n, r, s)?;
    Ok(2 * h_or_zero(n, r, m) + h_or_zero(n, r - 1, m))
}

/// Edges whose m-th and last vertices are reflections of one another.
pub(crate) fn is_reflecting(e: &[u32], n: usize, m: usize) -> bool {
    e[m - 1] as usize + e[e.len() - 1] as usize == n + 1
}

/// The m-biased r-sets together with the r-sets whose m-th and last
/// vertices are reflections.
#[derive(Clone, Debug, Serialize)]
pub struct BiasedTransversal {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub e1: Vec<Edge>,
    pub e2: Vec<Edge>,
    #[serde(skip)]
    graph: OrderedHypergraph,
}

impl BiasedTransversal {
    /// The deduplicated union `E1 ∪ E2`.
    pub fn graph(&self) -> &OrderedHypergraph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.graph.edge_count()
    }

    /// `|E1 ∩ E2|`.
    pub fn overlap(&self) -> usize {
        self.e1.len() + self.e2.len() - self.size()
    }
}

pub fn biased_transversal(n: usize, r: usize, s: usize) -> Result<BiasedTransversal> {
    let m = short_path_params(n, r, s)?;
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for e in subsets(n, r) {
        if is_m_biased(&e, n, m)? {
            e1.push(e.clone());
        }
        if m < r && is_reflecting(&e, n, m) {
            e2.push(e);
        }
    }
    let graph = OrderedHypergraph::from_edges_dedup(n, r, e1.iter().chain(&e2).cloned())?;
    Ok(BiasedTransversal {
        n,
        r,
        s,
        m,
        e1,
        e2,
        graph,
    })
}

/// Checks that every copy of `pattern` in `K^(r)_n` has an edge in `g`,
/// reporting the lexicographically least unhit copy otherwise.
pub fn verify_transversal(g: &OrderedHypergraph, pattern: PatternSpec) -> Result<Certificate> {
    if g.r() != pattern.r {
        return Err(Error::param(format!("graph r={} but pattern r={}", g.r(), pattern.r)));
    }
    let index = enumerate_copies(g.n(), pattern, DEFAULT_COPY_CAP)?;
    let unhit = index
        .copies
        .par_iter()
        .find_first(|c| !c.edges.iter().any(|&e| g.contains_rank(e)));
    let cert = Certificate::new(format!("transversal of {pattern}"))
        .param("n", g.n())
        .param("pattern", pattern)
        .param("copies", index.len())
        .with_value(g.edge_count());
    Ok(match unhit {
        Some(copy) => cert.fail(&copy.vertices),
        None => cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::bias::{h_count, CountMode};

    #[test]
    fn transversal_6_3_5() {
        let t = biased_transversal(6, 3, 5).unwrap();
        assert_eq!(t.graph().edges(), &[vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(t.e2.is_empty());
        let cert = verify_transversal(t.graph(), PatternSpec::loose_path(3, 5).unwrap()).unwrap();
        assert!(cert.verified);
    }

    #[test]
    fn transversal_6_3_4_size() {
        let t = biased_transversal(6, 3, 4).unwrap();
        let expected = 2 * h_count(6, 3, 2, CountMode::Formula).unwrap() + h_count(6, 2, 2, CountMode::Formula).unwrap();
        assert_eq!(expected, 7);
        assert_eq!(t.size(), 7);
        assert_eq!(short_path_value(6, 3, 4).unwrap(), 7);
    }

    #[test]
    fn counted_sizes_hold() {
        for n in (4..=12).step_by(2) {
            for r in 2..=4 {
                for s in r..=(2 * r - 1).min(n) {
                    let t = biased_transversal(n, r, s).unwrap();
                    let m = t.m;
                    assert_eq!(t.e1.len() as u64, 2 * h_or_zero(n, r, m));
                    assert_eq!(t.e2.len() as u64, h_or_zero(n, r - 1, m));
                    if m == r {
                        assert!(t.e2.is_empty());
                    }
                    assert_eq!(t.overlap(), 0, "n={n} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn empty_graph_fails_with_first_copy() {
        let g = OrderedHypergraph::empty(4, 3);
        let cert = verify_transversal(&g, PatternSpec::natural_path(3, 4).unwrap()).unwrap();
        assert!(!cert.verified);
        assert_eq!(cert.counterexample, Some(serde_json::json!([1, 2, 3, 4])));
    }

    #[test]
    fn complete_graph_always_verifies() {
        let g = OrderedHypergraph::complete(7, 3);
        for s in 3..=7 {
            assert!(verify_transversal(&g, PatternSpec::natural_path(3, s).unwrap()).unwrap().verified);
        }
    }

    #[test]
    fn rejects_odd_n_and_long_paths() {
        assert!(biased_transversal(7, 3, 4).is_err());
        assert!(biased_transversal(8, 3, 6).is_err());
        assert!(biased_transversal(4, 3, 5).is_err());
    }
}
