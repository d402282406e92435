//! Order-preserving containment and enumeration of pattern copies.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, colex_rank, subsets};
use crate::error::{Error, Result};
use crate::hypergraph::{OrderedHypergraph, Vertex};
use crate::pattern::{PatternKind, PatternSpec};

/// Default cap on the number of copies materialized for one instance.
pub const DEFAULT_COPY_CAP: u64 = 1_000_000;

/// Strictly increasing images of pattern vertices `1..=s`.
pub type Embedding = Vec<Vertex>;

struct Matcher<'a> {
    host: &'a OrderedHypergraph,
    s: usize,
    /// Pattern edges (0-based vertex indices) grouped by their largest vertex.
    closing: Vec<Vec<Vec<usize>>>,
    image: Vec<Vertex>,
    scratch: Vec<Vertex>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a OrderedHypergraph, pattern: &OrderedHypergraph) -> Result<Self> {
        if host.r() != pattern.r() {
            return Err(Error::param(format!(
                "uniformity mismatch: host r={} pattern r={}",
                host.r(),
                pattern.r()
            )));
        }
        let s = pattern.n();
        let mut closing = vec![Vec::new(); s];
        for e in pattern.edges() {
            let idx: Vec<usize> = e.iter().map(|&v| v as usize - 1).collect();
            closing[*idx.last().unwrap()].push(idx);
        }
        Ok(Matcher {
            host,
            s,
            closing,
            image: Vec::with_capacity(s),
            scratch: Vec::with_capacity(pattern.r()),
        })
    }

    fn closes(&mut self, j: usize) -> bool {
        for edge in &self.closing[j] {
            self.scratch.clear();
            self.scratch.extend(edge.iter().map(|&i| self.image[i]));
            if !self.host.contains_rank(colex_rank(&self.scratch)) {
                return false;
            }
        }
        true
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Vertex]) -> ControlFlow<()>,
    {
        let j = self.image.len();
        if j == self.s {
            return visit(&self.image);
        }
        let lo = self.image.last().map_or(1, |&v| v + 1);
        let hi = (self.host.n() - (self.s - j - 1)) as Vertex;
        for v in lo..=hi {
            self.image.push(v);
            if self.closes(j) {
                self.run(visit)?;
            }
            self.image.pop();
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every order-preserving embedding of `pattern` into
/// `host`, in lexicographic order of the image tuple, until it breaks.
pub fn for_each_embedding<F>(host: &OrderedHypergraph, pattern: &OrderedHypergraph, mut visit: F) -> Result<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let mut m = Matcher::new(host, pattern)?;
    if pattern.n() <= host.n() {
        let _ = m.run(&mut visit);
    }
    Ok(())
}

/// The lexicographically first embedding, if any.
pub fn find_embedding(host: &OrderedHypergraph, pattern: &OrderedHypergraph) -> Result<Option<Embedding>> {
    let mut found = None;
    for_each_embedding(host, pattern, |img| {
        found = Some(img.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn embeddings(host: &OrderedHypergraph, pattern: &OrderedHypergraph) -> Result<Vec<Embedding>> {
    let mut all = Vec::new();
    for_each_embedding(host, pattern, |img| {
        all.push(img.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(all)
}

pub fn count_embeddings(host: &OrderedHypergraph, pattern: &OrderedHypergraph) -> Result<u64> {
    let mut count = 0u64;
    for_each_embedding(host, pattern, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// One copy of a pattern inside `K^(r)_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCopy {
    /// Image of the pattern's vertices, increasing.
    pub vertices: Vec<Vertex>,
    /// Colex ranks of the copy's edges, ascending.
    pub edges: Vec<usize>,
}

impl PatternCopy {
    fn from_image(pattern: &OrderedHypergraph, image: &[Vertex]) -> Self {
        let mut edges: Vec<usize> = pattern
            .edges()
            .iter()
            .map(|e| {
                let mapped: Vec<Vertex> = e.iter().map(|&v| image[v as usize - 1]).collect();
                colex_rank(&mapped)
            })
            .collect();
        edges.sort_unstable();
        PatternCopy {
            vertices: image.to_vec(),
            edges,
        }
    }
}

/// Every copy of a pattern in `K^(r)_n`, ordered by vertex tuple.
#[derive(Clone, Debug)]
pub struct CopyIndex {
    pub n: usize,
    pub spec: PatternSpec,
    pub copies: Vec<PatternCopy>,
    /// `C(n, r)`.
    pub universe: usize,
}

impl CopyIndex {
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// For each edge rank, the indices of the copies containing it.
    pub fn copies_by_edge(&self) -> Vec<Vec<usize>> {
        let mut by_edge = vec![Vec::new(); self.universe];
        for (i, c) in self.copies.iter().enumerate() {
            for &e in &c.edges {
                by_edge[e].push(i);
            }
        }
        by_edge
    }
}

/// Number of copies of `spec` in `K^(r)_n`. Each of the supported pattern
/// kinds covers all of its vertices, so copies correspond to s-subsets.
pub fn copy_count(n: usize, spec: PatternSpec) -> u64 {
    binomial(n as u64, spec.s as u64)
}

/// Enumerates copies of `spec` in `K^(r)_n`.
///
/// Natural paths use the closed form (one copy per s-subset); other kinds
/// run ordered backtracking against the complete host.
pub fn enumerate_copies(n: usize, spec: PatternSpec, cap: u64) -> Result<CopyIndex> {
    spec.validate()?;
    let count = copy_count(n, spec);
    if count > cap {
        return Err(Error::Resource {
            what: format!("copies of {spec} in K_{n}"),
            count,
            limit: cap,
        });
    }
    let pattern = spec.build()?;
    let copies = if spec.kind == PatternKind::NaturalPath {
        subsets(n, spec.s)
            .map(|img| PatternCopy::from_image(&pattern, &img))
            .collect()
    } else {
        enumerate_copies_backtracking(n, &pattern)?
    };
    Ok(CopyIndex {
        n,
        spec,
        copies,
        universe: binomial(n as u64, spec.r as u64) as usize,
    })
}

/// Copies via generic ordered backtracking into `K^(r)_n`.
pub fn enumerate_copies_backtracking(n: usize, pattern: &OrderedHypergraph) -> Result<Vec<PatternCopy>> {
    let host = OrderedHypergraph::complete(n, pattern.r());
    let mut copies = Vec::new();
    for_each_embedding(&host, pattern, |img| {
        copies.push(PatternCopy::from_image(pattern, img));
        ControlFlow::Continue(())
    })?;
    Ok(copies)
}

type CacheKey = (usize, PatternSpec);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<CopyIndex>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<CopyIndex>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// [`enumerate_copies`] memoized per `(n, spec)`.
pub fn cached_copies(n: usize, spec: PatternSpec, cap: u64) -> Result<Arc<CopyIndex>> {
    if let Some(hit) = cache().lock().unwrap().get(&(n, spec)) {
        return Ok(hit.clone());
    }
    let index = Arc::new(enumerate_copies(n, spec, cap)?);
    cache().lock().unwrap().insert((n, spec), index.clone());
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::build_pattern;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn path(r: usize, s: usize) -> OrderedHypergraph {
        build_pattern(PatternSpec::natural_path(r, s).unwrap()).unwrap()
    }

    #[test]
    fn finds_identity_in_complete() {
        let host = OrderedHypergraph::complete(4, 3);
        assert_eq!(find_embedding(&host, &path(3, 4)).unwrap(), Some(vec![1, 2, 3, 4]));
    }

    #[test]
    fn absent_when_middle_edge_missing() {
        let host = OrderedHypergraph::new(4, 3, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        assert_eq!(find_embedding(&host, &path(3, 4)).unwrap(), None);
    }

    #[test]
    fn embedding_count_in_complete() {
        let host = OrderedHypergraph::complete(6, 3);
        assert_eq!(count_embeddings(&host, &path(3, 4)).unwrap(), 15);
    }

    #[test]
    fn uniformity_mismatch_is_rejected() {
        let host = OrderedHypergraph::complete(5, 2);
        assert!(matches!(find_embedding(&host, &path(3, 4)), Err(Error::Parameter(_))));
    }

    #[test]
    fn pattern_larger_than_host() {
        let host = OrderedHypergraph::complete(3, 3);
        assert_eq!(find_embedding(&host, &path(3, 4)).unwrap(), None);
    }

    #[test]
    fn closed_form_agrees_with_backtracking() {
        for n in 3..=8 {
            for r in 1..=3 {
                for s in r..=n.min(r + 3) {
                    let spec = PatternSpec::natural_path(r, s).unwrap();
                    let closed = enumerate_copies(n, spec, DEFAULT_COPY_CAP).unwrap();
                    let generic = enumerate_copies_backtracking(n, &spec.build().unwrap()).unwrap();
                    assert_eq!(closed.copies, generic, "n={n} {spec}");
                }
            }
        }
    }

    #[test]
    fn copy_cap_is_enforced() {
        let spec = PatternSpec::natural_path(3, 6).unwrap();
        assert!(matches!(enumerate_copies(12, spec, 100), Err(Error::Resource { count: 924, .. })));
    }

    /// Exhaustive check over all increasing maps: soundness and completeness.
    #[test]
    fn matches_brute_force_on_random_hosts() {
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..40 {
            let n = 5 + trial % 4;
            let edges: Vec<_> = subsets(n, 3).filter(|_| rng.random_bool(0.66)).collect();
            let host = OrderedHypergraph::new(n, 3, edges).unwrap();
            for spec in [
                PatternSpec::natural_path(3, 4).unwrap(),
                PatternSpec::natural_path(3, 5).unwrap(),
                PatternSpec::new(PatternKind::CrossingPath, 3, 5).unwrap(),
                PatternSpec::new(PatternKind::TightCycle, 3, 5).unwrap(),
            ] {
                let pattern = spec.build().unwrap();
                let brute: Vec<Embedding> = subsets(n, spec.s)
                    .filter(|img| {
                        pattern.edges().iter().all(|e| {
                            let m: Vec<Vertex> = e.iter().map(|&v| img[v as usize - 1]).collect();
                            host.contains(&m)
                        })
                    })
                    .collect();
                assert_eq!(embeddings(&host, &pattern).unwrap(), brute);
            }
        }
    }

    /// Reversal `u -> n+1-u` maps copies of a natural path to copies of a
    /// natural path, so embedding counts agree under reversal of the host.
    #[test]
    fn reversal_preserves_natural_path_counts() {
        use crate::combinatorics::reflect_set;
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..20 {
            let n = 7;
            let edges: Vec<_> = subsets(n, 3).filter(|_| rng.random_bool(0.5)).collect();
            let host = OrderedHypergraph::new(n, 3, edges.clone()).unwrap();
            let reversed =
                OrderedHypergraph::new(n, 3, edges.iter().map(|e| reflect_set(e, n)).collect()).unwrap();
            let p = path(3, 5);
            assert_eq!(count_embeddings(&host, &p).unwrap(), count_embeddings(&reversed, &p).unwrap());
        }
    }
}
