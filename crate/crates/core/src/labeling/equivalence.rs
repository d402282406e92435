//! Good triples as hypergraph edges, and back via longest tight paths.

use super::{Label, Labeling};
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{OrderedHypergraph, Vertex};
use crate::pattern::PatternSpec;

/// The 3-graph whose edges are the good triples of `φ`.
pub fn labeling_to_hypergraph(phi: &Labeling) -> OrderedHypergraph {
    let n = phi.n() as Vertex;
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            for w in v + 1..=n {
                if phi.get(u, v) < phi.get(v, w) {
                    edges.push(vec![u, v, w]);
                }
            }
        }
    }
    OrderedHypergraph::new(phi.n(), 3, edges).expect("good triples form a valid 3-graph")
}

/// Labels each pair `uv` by one plus the number of edges of a longest tight
/// path of `g` ending in `u, v`, giving an `(s-2)`-labeling in which every
/// edge of `g` is a good triple.
pub fn hypergraph_to_labeling(g: &OrderedHypergraph, s: usize) -> Result<Labeling> {
    if g.r() != 3 || s < 3 {
        return Err(Error::param(format!("need a 3-graph and s >= 3, got r={} s={s}", g.r())));
    }
    let n = g.n();
    let mut longest = vec![0usize; n * n];
    let at = |u: Vertex, v: Vertex| (u as usize - 1) * n + v as usize - 1;
    for v in 1..=n as Vertex {
        for u in 1..v {
            longest[at(u, v)] = (1..u)
                .filter(|&x| g.contains(&[x, u, v]))
                .map(|x| longest[at(x, u)] + 1)
                .max()
                .unwrap_or(0);
        }
    }
    if longest.iter().any(|&l| l + 2 >= s) {
        let path = PatternSpec::natural_path(3, s)?.build()?;
        let witness = find_embedding(g, &path)?.expect("a tight path with s-2 edges embeds P_s");
        return Err(Error::Precondition {
            message: format!("the hypergraph contains P^(3)_{s}"),
            witness,
        });
    }
    Labeling::from_fn(n, (s - 2) as Label, |u, v| longest[at(u, v)] as Label + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{cost, even_construction, odd_construction};

    #[test]
    fn to_hypergraph_examples() {
        assert!(labeling_to_hypergraph(&Labeling::constant(5, 2, 1).unwrap()).is_empty());
        let right = Labeling::from_fn(4, 3, |_, v| v - 1).unwrap();
        assert_eq!(labeling_to_hypergraph(&right), OrderedHypergraph::complete(4, 3));
        let g = labeling_to_hypergraph(&even_construction(4, 2).unwrap());
        assert_eq!(g.edges(), &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4]]);
    }

    #[test]
    fn from_hypergraph_examples() {
        let phi = hypergraph_to_labeling(&OrderedHypergraph::empty(5, 3), 4).unwrap();
        assert!(phi.pairs().all(|(_, _, l)| l == 1));
        let single = OrderedHypergraph::new(4, 3, vec![vec![1, 2, 3]]).unwrap();
        let phi = hypergraph_to_labeling(&single, 4).unwrap();
        assert_eq!(phi.get(1, 2), 1);
        assert_eq!(phi.get(2, 3), 2);
        assert_eq!(phi.pairs().filter(|&(_, _, l)| l == 2).count(), 1);
    }

    #[test]
    fn path_is_reported_with_embedding() {
        let g = OrderedHypergraph::new(5, 3, vec![vec![1, 2, 3], vec![2, 3, 5]]).unwrap();
        match hypergraph_to_labeling(&g, 4) {
            Err(Error::Precondition { witness, .. }) => assert_eq!(witness, vec![1, 2, 3, 5]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_keeps_every_edge_good() {
        for n in 3..=9 {
            for k in [1u32, 2, 3, 4] {
                let phi = if k % 2 == 1 { odd_construction(n, k) } else { even_construction(n, k) }.unwrap();
                let g = labeling_to_hypergraph(&phi);
                let back = hypergraph_to_labeling(&g, k as usize + 2).unwrap();
                assert!(cost(&back).good >= g.edge_count() as u64);
            }
        }
    }
}
