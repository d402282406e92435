use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::hypergraph::OrderedHypergraph;
use crate::interval::IntervalPartition;

/// `K^(r)_n` minus every edge inside one of `(s-1)/(r-1)` balanced interval
/// parts. Contains no `P^(r)_s`.
pub fn interval_blowup(n: usize, r: usize, s: usize) -> Result<OrderedHypergraph> {
    if r < 2 || s < r || !(s - 1).is_multiple_of(r - 1) {
        return Err(Error::param(format!("need r >= 2 and (r-1) | (s-1), got r={r} s={s}")));
    }
    let parts = IntervalPartition::balanced(n, (s - 1) / (r - 1));
    let part = parts.part_index();
    let edges = subsets(n, r).filter(|e| part[e[0] as usize - 1] != part[e[r - 1] as usize - 1]);
    OrderedHypergraph::new(n, r, edges.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::find_embedding;
    use crate::pattern::PatternSpec;

    #[test]
    fn examples() {
        assert_eq!(interval_blowup(8, 3, 5).unwrap().edge_count(), 48);
        assert_eq!(interval_blowup(6, 2, 3).unwrap().edge_count(), 9);
        assert!(interval_blowup(8, 3, 4).is_err());
        assert!(interval_blowup(8, 1, 3).is_err());
    }

    #[test]
    fn blowups_are_path_free() {
        for (n, r, s) in [(8, 3, 5), (9, 3, 7), (7, 2, 3), (8, 2, 4), (9, 4, 7)] {
            let g = interval_blowup(n, r, s).unwrap();
            let p = PatternSpec::natural_path(r, s).unwrap().build().unwrap();
            assert!(find_embedding(&g, &p).unwrap().is_none(), "n={n} r={r} s={s}");
        }
    }
}
