//! The left/right label profiles of a monotone labeling, the
//! reversal-inversion symmetry, and the `(k, 1)` swap move.

use serde::Serialize;

use super::{Label, Labeling};
use crate::error::{Error, Result};
use crate::hypergraph::Vertex;
use crate::interval::IntervalPartition;

#[derive(Clone, Debug, Serialize)]
pub struct LabelProfile {
    pub k: Label,
    /// `Φ_L(v)`, the largest label on a pair ending at `v` (0 for `v = 1`).
    pub phi_l: Vec<Label>,
    /// `Φ_R(v)`, the smallest label on a pair starting at `v` (`k+1` for `v = n`).
    pub phi_r: Vec<Label>,
    /// `X_0, ..., X_{k+1}` with `X_i = {v : Φ_L(v) = i}`.
    pub x: IntervalPartition,
    /// `X̂_0, ..., X̂_{k+1}` with `X̂_i = {v : Φ_R(v) = i}`.
    pub x_hat: IntervalPartition,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a_hat: Vec<usize>,
    pub b_hat: Vec<usize>,
}

fn level_partition(values: &[Label], k: Label) -> IntervalPartition {
    let mut lengths = vec![0; k as usize + 2];
    for &v in values {
        lengths[v as usize] += 1;
    }
    IntervalPartition::from_lengths(lengths, values.len()).expect("counts sum to n")
}

/// `|P_{2l}| + |P_{2l+1}|` (offset 0) or `|P_{2l+1}| + |P_{2l+2}|` (offset 1).
fn pair_sums(p: &IntervalPartition, offset: usize) -> Vec<usize> {
    p.lengths()[offset..].chunks_exact(2).map(|c| c[0] + c[1]).collect()
}

pub fn profile(phi: &Labeling) -> Result<LabelProfile> {
    if let Some(witness) = phi.monotonicity_violation() {
        return Err(Error::Precondition {
            message: "labeling is not monotone".into(),
            witness: witness.to_vec(),
        });
    }
    let n = phi.n() as Vertex;
    let k = phi.k();
    let phi_l: Vec<Label> = (1..=n).map(|v| (1..v).map(|u| phi.get(u, v)).max().unwrap_or(0)).collect();
    let phi_r: Vec<Label> = (1..=n).map(|v| (v + 1..=n).map(|w| phi.get(v, w)).min().unwrap_or(k + 1)).collect();
    debug_assert!(phi_l.windows(2).all(|w| w[0] <= w[1]) && phi_r.windows(2).all(|w| w[0] <= w[1]));
    let x = level_partition(&phi_l, k);
    let x_hat = level_partition(&phi_r, k);
    Ok(LabelProfile {
        k,
        a: pair_sums(&x, 0),
        b: pair_sums(&x, 1),
        a_hat: pair_sums(&x_hat, 0),
        b_hat: pair_sums(&x_hat, 1),
        phi_l,
        phi_r,
        x,
        x_hat,
    })
}

impl LabelProfile {
    /// `|X_i Δ X̂_i|` for each `i`.
    pub fn symmetric_differences(&self) -> Vec<usize> {
        let (xs, hs) = (self.x.parts(), self.x_hat.parts());
        xs.iter()
            .zip(&hs)
            .map(|(x, h)| {
                let inside = |p: &std::ops::RangeInclusive<Vertex>, v: &Vertex| p.contains(v);
                x.clone().filter(|v| !inside(h, v)).count() + h.clone().filter(|v| !inside(x, v)).count()
            })
            .collect()
    }

    /// Violated part-size inequalities expected of an optimal monotone
    /// labeling, each as a short description.
    pub fn structure_violations(&self) -> Vec<String> {
        let k = self.k as usize;
        let x = self.x.lengths();
        let h = self.x_hat.lengths();
        let mut out = Vec::new();
        for (i, d) in self.symmetric_differences().into_iter().enumerate() {
            if d > 2 {
                out.push(format!("|X_{i} Δ X̂_{i}| = {d} > 2"));
            }
        }
        for i in 2..=k {
            if x[i] + x[i + 1] > x[i - 2] + x[i - 1] + 2 {
                out.push(format!("|X_{i}|+|X_{}| > |X_{}|+|X_{}|+2", i + 1, i - 2, i - 1));
            }
        }
        for j in 1..k {
            if h[j - 1] + h[j] > h[j + 1] + h[j + 2] + 2 {
                out.push(format!("|X̂_{}|+|X̂_{j}| > |X̂_{}|+|X̂_{}|+2", j - 1, j + 1, j + 2));
            }
        }
        out
    }
}

/// `φ'(uv) = (k+1) - φ(v* u*)` with `x* = n + 1 - x`.
pub fn reverse_invert(phi: &Labeling) -> Labeling {
    let m = phi.n() as Vertex + 1;
    let k = phi.k();
    Labeling::from_fn(phi.n(), k, |u, v| k + 1 - phi.get(m - v, m - u)).expect("inverted labels stay in range")
}

/// The first middle vertex `v` with `φ(uv) = k` and `φ(vw) = 1` for some
/// `u < v < w`, with `u` least and `w` greatest.
pub fn find_k1_triple(phi: &Labeling) -> Option<[Vertex; 3]> {
    let n = phi.n() as Vertex;
    let k = phi.k();
    if k < 2 {
        return None;
    }
    (2..n).find_map(|v| {
        let u = (1..v).find(|&u| phi.get(u, v) == k)?;
        let w = (v + 1..=n).rev().find(|&w| phi.get(v, w) == 1)?;
        Some([u, v, w])
    })
}

/// Relabels `uv` to 1 and `vw` to `k` for the triple of [`find_k1_triple`],
/// which strictly lowers the cost.
pub fn improve_k1_swap(phi: &Labeling) -> Option<Labeling> {
    let [u, v, w] = find_k1_triple(phi)?;
    let mut out = phi.clone();
    out.set(u, v, 1).expect("valid pair");
    out.set(v, w, phi.k()).expect("valid pair");
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{cost, even_construction, odd_construction};
    use proptest::prelude::*;

    #[test]
    fn even_4_2_profile() {
        let p = profile(&even_construction(4, 2).unwrap()).unwrap();
        assert_eq!(p.phi_l, vec![0, 1, 2, 2]);
        assert_eq!(p.phi_r, vec![1, 2, 2, 3]);
        assert_eq!(p.x.lengths(), &[1, 1, 2, 0]);
        assert_eq!(p.x_hat.lengths(), &[0, 1, 2, 1]);
        assert_eq!(p.symmetric_differences()[1], 2);
        assert!(p.symmetric_differences().iter().all(|&d| d <= 2));
    }

    #[test]
    fn constant_profile() {
        let p = profile(&Labeling::constant(6, 3, 2).unwrap()).unwrap();
        assert_eq!(p.x.lengths(), &[1, 0, 5, 0, 0]);
    }

    #[test]
    fn non_monotone_is_rejected_with_triple() {
        let mut phi = Labeling::constant(4, 2, 1).unwrap();
        phi.set(2, 3, 2).unwrap();
        match profile(&phi) {
            Err(Error::Precondition { witness, .. }) => assert_eq!(witness, vec![2, 3, 4]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reverse_invert_example() {
        let phi = Labeling::from_fn(3, 2, |u, v| if (u, v) == (2, 3) { 2 } else { 1 }).unwrap();
        let inv = reverse_invert(&phi);
        assert_eq!(inv.label_vector(), vec![1, 2, 2]);
        assert_eq!(cost(&inv).bad, 0);
        let e = even_construction(4, 2).unwrap();
        assert_eq!(cost(&reverse_invert(&e)).bad, 1);
    }

    #[test]
    fn swap_examples() {
        for l13 in 1..=2 {
            let phi = Labeling::from_fn(3, 2, |u, v| match (u, v) {
                (1, 2) => 2,
                (2, 3) => 1,
                _ => l13,
            })
            .unwrap();
            let better = improve_k1_swap(&phi).unwrap();
            assert_eq!(cost(&phi).bad, 1);
            assert_eq!(cost(&better).bad, 0);
        }
        assert!(improve_k1_swap(&odd_construction(7, 3).unwrap()).is_none());
    }

    fn arb_labeling() -> impl Strategy<Value = Labeling> {
        (3usize..8, 1u32..5).prop_flat_map(|(n, k)| {
            proptest::collection::vec(1..=k, n * (n - 1) / 2).prop_map(move |ls| {
                let mut it = ls.into_iter();
                Labeling::from_fn(n, k, |_, _| it.next().unwrap()).unwrap()
            })
        })
    }

    /// Monotone labelings from a nondecreasing vertex potential.
    fn arb_monotone() -> impl Strategy<Value = Labeling> {
        (2usize..10, 1u32..5).prop_flat_map(|(n, k)| {
            proptest::collection::vec(1..=k, n).prop_map(move |mut pot| {
                pot.sort_unstable();
                Labeling::from_fn(n, k, |_, v| pot[v as usize - 1]).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn reverse_invert_is_a_cost_preserving_involution(phi in arb_labeling()) {
            let inv = reverse_invert(&phi);
            prop_assert_eq!(reverse_invert(&inv), phi.clone());
            prop_assert_eq!(cost(&inv), cost(&phi));
            prop_assert_eq!(inv.is_monotone(), phi.is_monotone());
        }

        #[test]
        fn swaps_strictly_descend(phi in arb_labeling()) {
            let mut cur = phi;
            while let Some(next) = improve_k1_swap(&cur) {
                prop_assert!(cost(&next).bad < cost(&cur).bad);
                cur = next;
            }
            prop_assert!(find_k1_triple(&cur).is_none());
        }

        #[test]
        fn profile_inequalities_and_conjugation(phi in arb_monotone()) {
            let p = profile(&phi).unwrap();
            let n = phi.n() as Vertex;
            for u in 1..=n {
                let i = u as usize - 1;
                prop_assert!(p.phi_l[i] <= p.phi_r[i]);
                for v in u + 1..=n {
                    let j = v as usize - 1;
                    prop_assert!(p.phi_r[i] <= phi.get(u, v) && phi.get(u, v) <= p.phi_l[j]);
                }
            }
            prop_assert_eq!(p.phi_l[0], 0);
            prop_assert_eq!(p.phi_r[n as usize - 1], phi.k() + 1);
            prop_assert!(p.symmetric_differences().iter().all(|&d| d <= 2));
            let q = profile(&reverse_invert(&phi)).unwrap();
            let k = phi.k() as usize;
            for i in 0..=k + 1 {
                prop_assert_eq!(q.x.lengths()[i], p.x_hat.lengths()[k + 1 - i]);
            }
        }
    }
}
