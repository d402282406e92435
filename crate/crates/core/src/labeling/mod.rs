//! Edge-labelings of the ordered complete graph and their bad triples.
//!
//! A triple `u < v < w` is good when `φ(uv) < φ(vw)` and bad otherwise.

pub mod constructions;
pub mod equivalence;
pub mod profile;

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Vertex;

pub use constructions::{
    badcount_prediction, even_construction, even_partition, fractional_index, odd_construction, odd_partition,
    ConstructionKind,
};
pub use equivalence::{hypergraph_to_labeling, labeling_to_hypergraph};
pub use profile::{improve_k1_swap, profile, reverse_invert, find_k1_triple, LabelProfile};

pub type Label = u32;

/// A labeling of every pair `u < v` of `[n]` with a label in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    n: usize,
    k: Label,
    /// Row-major `n x n`; only entries with `u < v` are meaningful.
    labels: Vec<Label>,
}

impl Labeling {
    pub fn from_fn(n: usize, k: Label, mut f: impl FnMut(Vertex, Vertex) -> Label) -> Result<Self> {
        if k < 1 {
            return Err(Error::param("a labeling needs k >= 1"));
        }
        let mut out = Labeling {
            n,
            k,
            labels: vec![0; n * n],
        };
        for u in 1..=n as Vertex {
            for v in u + 1..=n as Vertex {
                out.set(u, v, f(u, v))?;
            }
        }
        Ok(out)
    }

    pub fn constant(n: usize, k: Label, label: Label) -> Result<Self> {
        Self::from_fn(n, k, |_, _| label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Label {
        self.k
    }

    fn index(&self, u: Vertex, v: Vertex) -> usize {
        debug_assert!(1 <= u && u < v && v as usize <= self.n);
        (u as usize - 1) * self.n + v as usize - 1
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Label {
        self.labels[self.index(u, v)]
    }

    pub fn set(&mut self, u: Vertex, v: Vertex, label: Label) -> Result<()> {
        if !(1 <= u && u < v && v as usize <= self.n) {
            return Err(Error::Range(format!("({u},{v}) is not a pair of [{}]", self.n)));
        }
        if !(1..=self.k).contains(&label) {
            return Err(Error::Range(format!("label {label} outside 1..={}", self.k)));
        }
        let i = self.index(u, v);
        self.labels[i] = label;
        Ok(())
    }

    /// `(u, v, φ(uv))` in lexicographic pair order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex, Label)> + '_ {
        let n = self.n as Vertex;
        (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| (u, v, self.get(u, v))))
    }

    /// The labels in pair order.
    pub fn label_vector(&self) -> Vec<Label> {
        self.pairs().map(|(_, _, l)| l).collect()
    }

    /// First triple `u < v < w` (by middle vertex) with `φ(uv) > φ(vw)`.
    pub fn monotonicity_violation(&self) -> Option<[Vertex; 3]> {
        let n = self.n as Vertex;
        (2..n).find_map(|v| {
            let u = (1..v).max_by_key(|&u| (self.get(u, v), std::cmp::Reverse(u)))?;
            let w = (v + 1..=n).min_by_key(|&w| (self.get(v, w), w))?;
            (self.get(u, v) > self.get(v, w)).then_some([u, v, w])
        })
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    pub fn to_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["u", "v", "label"]).map_err(csv_error)?;
        for (u, v, l) in self.pairs() {
            w.serialize((u, v, l)).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the CSV form; `n` is the largest vertex and `k` the supplied
    /// label count.
    pub fn from_csv(input: impl Read, k: Label) -> Result<Self> {
        let mut rows = Vec::new();
        for rec in csv::Reader::from_reader(input).deserialize() {
            let row: (Vertex, Vertex, Label) = rec.map_err(csv_error)?;
            rows.push(row);
        }
        Self::from_triples(&rows, k)
    }

    fn from_triples(rows: &[(Vertex, Vertex, Label)], k: Label) -> Result<Self> {
        let n = rows.iter().map(|r| r.1).max().unwrap_or(0) as usize;
        if rows.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Format(format!("{} rows cannot label all pairs of [{n}]", rows.len())));
        }
        let mut out = Labeling {
            n,
            k,
            labels: vec![0; n * n],
        };
        for &(u, v, l) in rows {
            let fresh = !(1 <= u && u < v) || out.get(u, v) == 0;
            out.set(u, v, l)?;
            if !fresh {
                return Err(Error::Format(format!("pair ({u},{v}) labeled twice")));
            }
        }
        Ok(out)
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Format(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct RawLabeling {
    n: usize,
    k: Label,
    labels: Vec<(Vertex, Vertex, Label)>,
}

impl Serialize for Labeling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawLabeling {
            n: self.n,
            k: self.k,
            labels: self.pairs().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawLabeling::deserialize(d)?;
        let out = Labeling::from_triples(&raw.labels, raw.k).map_err(serde::de::Error::custom)?;
        if out.n != raw.n {
            return Err(serde::de::Error::custom(format!("labels cover [{}], header says n={}", out.n, raw.n)));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cost {
    pub good: u64,
    pub bad: u64,
}

/// Bad triples grouped by their middle vertex (index `v - 1`).
pub fn bad_by_middle(phi: &Labeling) -> Vec<u64> {
    let n = phi.n as Vertex;
    (1..=n)
        .into_par_iter()
        .map(|v| {
            // below[l] = #{u < v : φ(uv) < l}
            let mut below = vec![0u64; phi.k as usize + 2];
            for u in 1..v {
                below[phi.get(u, v) as usize + 1] += 1;
            }
            for l in 1..below.len() {
                below[l] += below[l - 1];
            }
            let left = (v - 1) as u64;
            (v + 1..=n).map(|w| left - below[phi.get(v, w) as usize]).sum()
        })
        .collect()
}

pub fn cost(phi: &Labeling) -> Cost {
    let bad: u64 = bad_by_middle(phi).iter().sum();
    Cost {
        good: binomial(phi.n as u64, 3) - bad,
        bad,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_bad(phi: &Labeling) -> u64 {
        let n = phi.n() as Vertex;
        let mut bad = 0;
        for u in 1..=n {
            for v in u + 1..=n {
                for w in v + 1..=n {
                    if phi.get(u, v) >= phi.get(v, w) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    #[test]
    fn cost_examples() {
        assert_eq!(cost(&Labeling::constant(3, 1, 1).unwrap()), Cost { good: 0, bad: 1 });
        for n in 3..9 {
            let right = Labeling::from_fn(n, n as Label - 1, |_, v| v - 1).unwrap();
            assert_eq!(cost(&right).bad, 0);
        }
    }

    #[test]
    fn rejects_out_of_range_labels() {
        assert!(Labeling::constant(4, 2, 3).is_err());
        assert!(Labeling::constant(4, 2, 0).is_err());
        assert!(Labeling::constant(4, 0, 1).is_err());
    }

    #[test]
    fn csv_and_json_round_trip() {
        let phi = Labeling::from_fn(5, 3, |u, v| (u + v) % 3 + 1).unwrap();
        let mut buf = Vec::new();
        phi.to_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("u,v,label\n1,2,1\n"));
        assert_eq!(Labeling::from_csv(&buf[..], 3).unwrap(), phi);
        let json = serde_json::to_string(&phi).unwrap();
        assert_eq!(serde_json::from_str::<Labeling>(&json).unwrap(), phi);
        assert!(Labeling::from_csv("u,v,label\n1,2,1\n1,2,1\n".as_bytes(), 3).is_err());
    }

    #[test]
    fn monotonicity_witness() {
        let mut phi = Labeling::constant(4, 2, 1).unwrap();
        assert!(phi.is_monotone());
        phi.set(1, 2, 2).unwrap();
        assert_eq!(phi.monotonicity_violation(), Some([1, 2, 3]));
    }

    fn arb_labeling() -> impl Strategy<Value = Labeling> {
        (3usize..9, 1u32..5).prop_flat_map(|(n, k)| {
            proptest::collection::vec(1..=k, n * (n - 1) / 2).prop_map(move |ls| {
                let mut it = ls.into_iter();
                Labeling::from_fn(n, k, |_, _| it.next().unwrap()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn fast_cost_matches_triple_scan(phi in arb_labeling()) {
            let c = cost(&phi);
            prop_assert_eq!(c.bad, naive_bad(&phi));
            prop_assert_eq!(c.good + c.bad, binomial(phi.n() as u64, 3));
        }

        #[test]
        fn monotone_check_matches_triple_scan(phi in arb_labeling()) {
            let n = phi.n() as Vertex;
            let mut monotone = true;
            for u in 1..=n { for v in u + 1..=n { for w in v + 1..=n {
                monotone &= phi.get(u, v) <= phi.get(v, w);
            }}}
            prop_assert_eq!(phi.is_monotone(), monotone);
            if let Some([u, v, w]) = phi.monotonicity_violation() {
                prop_assert!(phi.get(u, v) > phi.get(v, w));
            }
        }
    }
}
