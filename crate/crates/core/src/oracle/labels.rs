//! Optimal edge-labelings by branch and bound over pairs in lexicographic
//! order, labels tried in increasing order.

use serde::Serialize;

use super::{ExactResult, Meter, Quantity, SearchBudget, Status, Witness};
use crate::certificate::Certificate;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Vertex;
use crate::labeling::{cost, even_construction, find_k1_triple, odd_construction, profile, Label, Labeling};

/// Cap on the number of optima collected by [`optimal_labelings`].
const MAX_OPTIMA: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    /// Stop improving at the first labeling of each better value.
    FirstOptimum,
    /// Keep every labeling attaining the best value.
    AllOptima,
}

struct LabelSearch<'a> {
    n: usize,
    k: Label,
    monotone: bool,
    mode: Mode,
    /// `(1, n)`'s label is capped at this under the symmetry reduction.
    corner_cap: Label,
    pairs: Vec<(Vertex, Vertex)>,
    labels: Vec<Label>,
    /// Per vertex `v`, counts of labels on assigned pairs `(u, v)`.
    incoming: Vec<Vec<u64>>,
    remaining_out: Vec<u64>,
    max_in: Vec<Label>,
    /// Upper bound on the good triples still to be decided.
    potential: u64,
    good: u64,
    best: Option<u64>,
    found: Vec<Vec<Label>>,
    meter: &'a mut Meter,
}

impl LabelSearch<'_> {
    fn at(&self, u: Vertex, v: Vertex) -> usize {
        (u as usize - 1) * self.n + v as usize - 1
    }

    /// Good triples `u v w` closed by labeling `(v, w)` with `label`.
    fn gain(&self, v: Vertex, label: Label) -> u64 {
        self.incoming[v as usize][..label as usize].iter().sum()
    }

    fn headroom(&self, v: Vertex) -> u64 {
        (v as u64 - 1) - self.incoming[v as usize][self.k as usize]
    }

    fn assign(&mut self, v: Vertex, w: Vertex, label: Label) -> (u64, Label) {
        let gain = self.gain(v, label);
        self.potential -= self.headroom(v);
        self.remaining_out[v as usize] -= 1;
        if label == self.k {
            self.potential -= self.remaining_out[w as usize];
        }
        self.incoming[w as usize][label as usize] += 1;
        let prev_max = self.max_in[w as usize];
        self.max_in[w as usize] = prev_max.max(label);
        self.good += gain;
        let i = self.at(v, w);
        self.labels[i] = label;
        (gain, prev_max)
    }

    fn unassign(&mut self, v: Vertex, w: Vertex, label: Label, (gain, prev_max): (u64, Label)) {
        self.good -= gain;
        self.max_in[w as usize] = prev_max;
        self.incoming[w as usize][label as usize] -= 1;
        if label == self.k {
            self.potential += self.remaining_out[w as usize];
        }
        self.remaining_out[v as usize] += 1;
        self.potential += self.headroom(v);
    }

    fn prune(&self) -> bool {
        let reach = self.good + self.potential;
        match (self.best, self.mode) {
            (None, _) => false,
            (Some(b), Mode::FirstOptimum) => reach <= b,
            (Some(b), Mode::AllOptima) => reach < b,
        }
    }

    fn snapshot(&self) -> Vec<Label> {
        self.pairs.iter().map(|&(u, v)| self.labels[self.at(u, v)]).collect()
    }

    fn record(&mut self) {
        match self.best {
            Some(b) if self.good < b => {}
            Some(b) if self.good == b => {
                if self.mode == Mode::AllOptima && self.found.len() < MAX_OPTIMA {
                    let s = self.snapshot();
                    self.found.push(s);
                }
            }
            _ => {
                self.best = Some(self.good);
                self.found = vec![self.snapshot()];
            }
        }
    }

    fn run(&mut self, p: usize) {
        if p == self.pairs.len() {
            self.record();
            return;
        }
        if self.meter.tick() || self.prune() {
            return;
        }
        let (v, w) = self.pairs[p];
        let floor = if self.monotone { self.max_in[v as usize].max(1) } else { 1 };
        let ceiling = if (v, w) == (1, self.n as Vertex) { self.corner_cap } else { self.k };
        for label in floor..=ceiling {
            let undo = self.assign(v, w, label);
            self.run(p + 1);
            self.unassign(v, w, label, undo);
            if self.meter.exhausted {
                return;
            }
        }
    }
}

/// Best-known labeling, used to seed the incumbent.
fn seed_labeling(n: usize, k: Label, monotone: bool) -> Option<Labeling> {
    let phi = if k % 2 == 1 { odd_construction(n, k) } else { even_construction(n, k) }.ok()?;
    (!monotone || phi.is_monotone()).then_some(phi)
}

fn seed(n: usize, k: Label, monotone: bool) -> Option<u64> {
    seed_labeling(n, k, monotone).map(|phi| cost(&phi).good)
}

struct SearchOutcome {
    best: Option<u64>,
    found: Vec<Vec<Label>>,
    exhausted: bool,
    nodes: u64,
}

fn search(n: usize, k: Label, budget: &SearchBudget, monotone: bool, mode: Mode) -> Result<SearchOutcome> {
    budget.validate()?;
    if k < 1 {
        return Err(Error::param("k must be at least 1"));
    }
    let pairs: Vec<(Vertex, Vertex)> = (1..=n as Vertex)
        .flat_map(|u| (u + 1..=n as Vertex).map(move |v| (u, v)))
        .collect();
    let mut meter = Meter::new(budget);
    // Seed one below the known value so that labelings attaining it are
    // still visited and the recorded optimum is the first in search order.
    let best = match (seed(n, k, monotone), mode) {
        (Some(g), Mode::AllOptima) => Some(g),
        (Some(g), Mode::FirstOptimum) => g.checked_sub(1),
        (None, _) => None,
    };
    let potential = (1..=n as u64).map(|v| (n as u64 - v) * (v - 1)).sum();
    let mut s = LabelSearch {
        n,
        k,
        monotone,
        mode,
        corner_cap: if budget.symmetry { k.div_ceil(2) } else { k },
        pairs,
        labels: vec![0; n * n],
        incoming: vec![vec![0; k as usize + 1]; n + 1],
        remaining_out: (0..=n as u64).map(|v| (n as u64).saturating_sub(v)).collect(),
        max_in: vec![0; n + 1],
        potential,
        good: 0,
        best,
        found: Vec::new(),
        meter: &mut meter,
    };
    s.run(0);
    let (best, found) = (s.best, std::mem::take(&mut s.found));
    Ok(SearchOutcome {
        best,
        found,
        exhausted: meter.exhausted,
        nodes: meter.nodes(),
    })
}

fn to_labeling(n: usize, k: Label, labels: &[Label]) -> Labeling {
    let mut it = labels.iter();
    Labeling::from_fn(n, k, |_, _| *it.next().unwrap()).expect("search labels are in range")
}

/// `f(n, k)`: the largest number of good triples of a `k`-labeling of the
/// pairs of `[n]`, optionally among monotone labelings only.
pub fn exact_f(n: usize, k: Label, budget: &SearchBudget, monotone_only: bool) -> Result<ExactResult> {
    let out = search(n, k, budget, monotone_only, Mode::FirstOptimum)?;
    let kind = if monotone_only { Quantity::MonotoneF } else { Quantity::F };
    let (value, witness) = match out.found.first() {
        Some(labels) => (out.best.unwrap(), to_labeling(n, k, labels)),
        None => {
            // The budget ran out before the search completed a labeling.
            let phi = seed_labeling(n, k, monotone_only).unwrap_or(Labeling::constant(n, k, 1)?);
            (cost(&phi).good, phi)
        }
    };
    let upper = if out.exhausted { binomial(n as u64, 3) } else { value };
    Ok(ExactResult {
        kind,
        n,
        pattern: None,
        k: Some(k),
        value,
        lower: value,
        upper,
        optimal: false,
        status: Status::Bounded,
        witness: Witness::Labeling(witness),
        nodes: out.nodes,
    }
    .finish())
}

/// Every labeling attaining `f(n, k)` (or its monotone variant), in
/// lexicographic order of label vectors.
#[derive(Clone, Debug, Serialize)]
pub struct OptimaSet {
    pub n: usize,
    pub k: Label,
    pub monotone: bool,
    pub value: u64,
    pub labelings: Vec<Labeling>,
    /// False if the budget ran out or the collection cap was reached.
    pub complete: bool,
}

pub fn optimal_labelings(n: usize, k: Label, budget: &SearchBudget, monotone_only: bool) -> Result<OptimaSet> {
    let budget = budget.clone().with_symmetry(false);
    let out = search(n, k, &budget, monotone_only, Mode::AllOptima)?;
    Ok(OptimaSet {
        n,
        k,
        monotone: monotone_only,
        value: out.best.unwrap_or(0),
        complete: !out.exhausted && out.found.len() < MAX_OPTIMA,
        labelings: out.found.iter().map(|l| to_labeling(n, k, l)).collect(),
    })
}

/// Structural checks on an optimal labeling: no `(k, 1)` triple for
/// unrestricted optima; the part-size inequalities of the left and right
/// profiles for monotone optima.
pub fn check_optimum_structure(result: &ExactResult) -> Result<Certificate> {
    let Witness::Labeling(phi) = &result.witness else {
        return Err(Error::param("structure checks need a labeling witness"));
    };
    let k = phi.k();
    let mut cert = Certificate::new(format!("structure of an optimal {:?} labeling", result.kind))
        .param("n", phi.n())
        .param("k", k)
        .param("optimal", result.optimal)
        .with_value(result.value);
    if k % 2 == 1 {
        cert = cert.param("odd_construction_good", cost(&odd_construction(phi.n(), k)?).good);
    }
    match result.kind {
        Quantity::F => {
            if let Some(t) = find_k1_triple(phi) {
                return Ok(cert.fail(serde_json::json!({ "k1_triple": t })));
            }
        }
        Quantity::MonotoneF => {
            let violations = profile(phi)?.structure_violations();
            if !violations.is_empty() {
                return Ok(cert.fail(violations));
            }
        }
        other => return Err(Error::param(format!("{other:?} is not a labeling quantity"))),
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    /// Maximum good count over all `k^(n choose 2)` labelings.
    fn brute_f(n: usize, k: Label, monotone: bool) -> u64 {
        let m = n * (n - 1) / 2;
        (0..m)
            .map(|_| 1..=k)
            .multi_cartesian_product()
            .map(|ls| to_labeling(n, k, &ls))
            .filter(|phi| !monotone || phi.is_monotone())
            .map(|phi| cost(&phi).good)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_values() {
        assert_eq!(exact_f(3, 1, &budget(), false).unwrap().value, 0);
        assert_eq!(exact_f(4, 2, &budget(), false).unwrap().value, 3);
        for n in 3..=7 {
            let r = exact_f(n, n as Label - 1, &budget(), false).unwrap();
            assert_eq!(r.value, binomial(n as u64, 3));
        }
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        for (n, k) in [(4, 2), (4, 3), (5, 2), (5, 3), (3, 2)] {
            for monotone in [false, true] {
                let r = exact_f(n, k, &budget(), monotone).unwrap();
                assert_eq!(r.value, brute_f(n, k, monotone), "n={n} k={k} monotone={monotone}");
                assert!(r.optimal);
                assert!(r.verify().unwrap().verified);
            }
        }
    }

    #[test]
    fn symmetry_reduction_keeps_the_value() {
        for (n, k) in [(5, 2), (5, 3), (6, 3), (6, 2)] {
            for monotone in [false, true] {
                let plain = exact_f(n, k, &budget(), monotone).unwrap();
                let reduced = exact_f(n, k, &budget().with_symmetry(true), monotone).unwrap();
                assert_eq!(plain.value, reduced.value);
                assert!(reduced.verify().unwrap().verified);
            }
        }
    }

    #[test]
    fn witness_is_first_optimum_in_lex_order() {
        let r = exact_f(4, 2, &budget(), false).unwrap();
        let all = optimal_labelings(4, 2, &budget(), false).unwrap();
        assert!(all.complete);
        let Witness::Labeling(phi) = &r.witness else { panic!() };
        assert_eq!(phi, &all.labelings[0]);
        let vectors: Vec<_> = all.labelings.iter().map(|l| l.label_vector()).collect();
        assert!(vectors.windows(2).all(|w| w[0] < w[1]));
        assert!(all.labelings.iter().all(|l| cost(l).good == 3));
    }

    #[test]
    fn optima_have_no_k1_triples() {
        let all = optimal_labelings(5, 3, &budget(), false).unwrap();
        assert!(all.labelings.iter().all(|l| find_k1_triple(l).is_none()));
        let r = exact_f(4, 2, &budget(), false).unwrap();
        assert!(check_optimum_structure(&r).unwrap().verified);
        let m = exact_f(6, 3, &budget(), true).unwrap();
        assert!(check_optimum_structure(&m).unwrap().verified);
        let single = exact_f(5, 1, &budget(), false).unwrap();
        assert!(check_optimum_structure(&single).unwrap().verified);
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let b = SearchBudget {
            node_limit: 5,
            ..SearchBudget::default()
        };
        let r = exact_f(7, 3, &b, false).unwrap();
        assert_eq!(r.status, Status::Bounded);
        assert!(r.lower <= r.upper);
        assert!(r.verify().unwrap().verified);
    }
}
