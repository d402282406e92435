//! Binomial coefficients and colexicographic ranking of vertex subsets.
//!
//! Vertices are 1-based throughout the crate. The colex rank of a sorted set
//! `{c_1 < c_2 < ... < c_r}` is `sum_i C(c_i - 1, i)`, which enumerates the
//! r-subsets of `[n]` as `0..C(n, r)` independently of `n`.

use itertools::Itertools;

/// `C(n, k)`, panicking on `u64` overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Colex rank of a strictly increasing 1-based vertex tuple.
pub fn colex_rank(set: &[u32]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &v)| binomial(u64::from(v) - 1, i as u64 + 1) as usize)
        .sum()
}

/// Inverse of [`colex_rank`] for sets of size `r`.
pub fn colex_unrank(mut rank: usize, r: usize) -> Vec<u32> {
    let mut out = vec![0u32; r];
    for i in (1..=r).rev() {
        // largest c with C(c, i) <= rank
        let mut c = i as u64 - 1;
        while binomial(c + 1, i as u64) as usize <= rank {
            c += 1;
        }
        rank -= binomial(c, i as u64) as usize;
        out[i - 1] = c as u32 + 1;
    }
    out
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..=n as u32).combinations(k)
}

/// Map a vertex set onto its image under `u -> n + 1 - u`, re-sorted.
pub fn reflect_set(set: &[u32], n: usize) -> Vec<u32> {
    let n = n as u32;
    set.iter().rev().map(|&u| n + 1 - u).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(300, 3), 4_455_100);
    }

    #[test]
    fn colex_enumerates_all_ranks() {
        for (n, r) in [(6usize, 3usize), (8, 2), (7, 4)] {
            let mut ranks: Vec<usize> = subsets(n, r).map(|s| colex_rank(&s)).collect();
            ranks.sort_unstable();
            let expected: Vec<usize> = (0..binomial(n as u64, r as u64) as usize).collect();
            assert_eq!(ranks, expected);
        }
    }

    proptest! {
        #[test]
        fn unrank_inverts_rank(set in proptest::collection::btree_set(1u32..40, 1..6)) {
            let set: Vec<u32> = set.into_iter().collect();
            prop_assert_eq!(colex_unrank(colex_rank(&set), set.len()), set);
        }
    }
}
