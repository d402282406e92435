//! Fractional transversal and packing numbers by exact rational LP.

pub mod simplex;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::combinatorics::{binomial, colex_rank, colex_unrank};
use crate::embed::{cached_copies, CopyIndex, DEFAULT_COPY_CAP};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Vertex};
use crate::pattern::PatternSpec;
use crate::rational::{self, Rational};
use simplex::{PackingLp, SimplexStatus};

/// Nonnegative weights on the edges of `K^(r)_n`, indexed by colex rank.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeWeighting {
    n: usize,
    r: usize,
    weights: Vec<Rational>,
}

impl EdgeWeighting {
    pub fn zero(n: usize, r: usize) -> Self {
        EdgeWeighting {
            n,
            r,
            weights: vec![Rational::zero(); binomial(n as u64, r as u64) as usize],
        }
    }

    pub fn uniform(n: usize, r: usize, w: Rational) -> Self {
        let mut out = Self::zero(n, r);
        out.weights.iter_mut().for_each(|x| *x = w.clone());
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn by_rank(&self) -> &[Rational] {
        &self.weights
    }

    pub fn get(&self, e: &[Vertex]) -> &Rational {
        &self.weights[colex_rank(e)]
    }

    pub fn set(&mut self, e: &[Vertex], w: Rational) -> Result<()> {
        if e.len() != self.r || e.windows(2).any(|p| p[0] >= p[1]) || e.iter().any(|&v| v < 1 || v as usize > self.n) {
            return Err(Error::Range(format!("{e:?} is not an edge of K^({})_{}", self.r, self.n)));
        }
        if w.is_negative() {
            return Err(Error::param(format!("negative weight {w} on {e:?}")));
        }
        self.weights[colex_rank(e)] = w;
        Ok(())
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Edges with nonzero weight, in colex order.
    pub fn support(&self) -> impl Iterator<Item = (Edge, &Rational)> {
        let r = self.r;
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(move |(i, w)| (colex_unrank(i, r), w))
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        EdgeWeighting {
            n: self.n,
            r: self.r,
            weights: self.weights.iter().map(|w| w * factor).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WeightEntry<K> {
    #[serde(alias = "copy")]
    edge: K,
    #[serde(with = "rational::as_string")]
    weight: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawEdgeWeighting {
    n: usize,
    r: usize,
    weights: Vec<WeightEntry<Edge>>,
}

impl Serialize for EdgeWeighting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawEdgeWeighting {
            n: self.n,
            r: self.r,
            weights: self
                .support()
                .map(|(edge, w)| WeightEntry { edge, weight: w.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeWeighting {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawEdgeWeighting::deserialize(d)?;
        let mut out = EdgeWeighting::zero(raw.n, raw.r);
        for entry in raw.weights {
            out.set(&entry.edge, entry.weight).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// Nonnegative weights on copies of a pattern, keyed by increasing vertex
/// tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct CopyWeighting {
    pub n: usize,
    pub pattern: PatternSpec,
    pub weights: BTreeMap<Vec<Vertex>, Rational>,
}

impl CopyWeighting {
    pub fn new(n: usize, pattern: PatternSpec) -> Self {
        CopyWeighting {
            n,
            pattern,
            weights: BTreeMap::new(),
        }
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct RawCopyWeighting {
    n: usize,
    pattern: PatternSpec,
    weights: Vec<WeightEntry<Vec<Vertex>>>,
}

impl Serialize for CopyWeighting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCopyWeighting {
            n: self.n,
            pattern: self.pattern,
            weights: self
                .weights
                .iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(c, w)| WeightEntry {
                    edge: c.clone(),
                    weight: w.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CopyWeighting {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCopyWeighting::deserialize(d)?;
        Ok(CopyWeighting {
            n: raw.n,
            pattern: raw.pattern,
            weights: raw.weights.into_iter().map(|e| (e.edge, e.weight)).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpStatus {
    Optimal,
    InfeasibleReport,
}

/// Optimal fractional transversal and packing of one instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpOutcome {
    pub n: usize,
    pub pattern: PatternSpec,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
    pub primal: EdgeWeighting,
    pub dual: CopyWeighting,
    pub status: LpStatus,
    pub copies: usize,
    pub pivots: usize,
}

/// Either side of the LP pair.
#[derive(Clone, Copy, Debug)]
pub enum Weighting<'a> {
    Edges(&'a EdgeWeighting),
    Copies(&'a CopyWeighting),
}

impl<'a> From<&'a EdgeWeighting> for Weighting<'a> {
    fn from(w: &'a EdgeWeighting) -> Self {
        Weighting::Edges(w)
    }
}

impl<'a> From<&'a CopyWeighting> for Weighting<'a> {
    fn from(w: &'a CopyWeighting) -> Self {
        Weighting::Copies(w)
    }
}

fn copy_index(n: usize, pattern: PatternSpec) -> Result<std::sync::Arc<CopyIndex>> {
    pattern.validate()?;
    cached_copies(n, pattern, DEFAULT_COPY_CAP)
}

/// Solves `max sum y_c` subject to every edge lying in copies of total
/// weight at most 1. The edge multipliers form an optimal fractional
/// transversal; both solutions are re-verified before returning.
pub fn solve_fractional(n: usize, pattern: PatternSpec) -> Result<LpOutcome> {
    let index = copy_index(n, pattern)?;
    let by_edge = index.copies_by_edge();
    let used: Vec<usize> = (0..by_edge.len()).filter(|&e| !by_edge[e].is_empty()).collect();
    let lp = PackingLp {
        columns: index.len(),
        rows: used
            .par_iter()
            .map(|&e| by_edge[e].iter().map(|&c| (c, rational::one())).collect())
            .collect(),
        rhs: vec![rational::one(); used.len()],
        objective: vec![rational::one(); index.len()],
    };
    let sol = simplex::solve(&lp);
    if sol.status != SimplexStatus::Optimal {
        return Err(Error::Structural(format!("packing LP for {pattern} in [{n}] reported unbounded")));
    }
    let mut primal = EdgeWeighting::zero(n, pattern.r);
    for (row, &e) in used.iter().enumerate() {
        primal.weights[e] = sol.dual[row].clone();
    }
    let mut dual = CopyWeighting::new(n, pattern);
    for (c, y) in index.copies.iter().zip(&sol.primal) {
        if !y.is_zero() {
            dual.weights.insert(c.vertices.clone(), y.clone());
        }
    }
    let primal_ok = verify_feasible(&primal, n, pattern)?;
    let dual_ok = verify_feasible(&dual, n, pattern)?;
    let balanced = primal.total() == sol.value && dual.total() == sol.value;
    let status = if primal_ok.verified && dual_ok.verified && balanced {
        LpStatus::Optimal
    } else {
        log::error!("LP certificate failed for {pattern} in [{n}]: primal {primal_ok:?}, dual {dual_ok:?}");
        LpStatus::InfeasibleReport
    };
    log::debug!("{pattern} in [{n}]: {} copies, {} pivots, value {}", index.len(), sol.pivots, sol.value);
    Ok(LpOutcome {
        n,
        pattern,
        value: sol.value,
        primal,
        dual,
        status,
        copies: index.len(),
        pivots: sol.pivots,
    })
}

/// Checks every copy constraint (edge weighting) or every edge-load
/// constraint (copy weighting), reporting the first violation.
pub fn verify_feasible<'a>(weighting: impl Into<Weighting<'a>>, n: usize, pattern: PatternSpec) -> Result<Certificate> {
    let index = copy_index(n, pattern)?;
    let base = |claim: &str| {
        Certificate::new(format!("{claim} for {pattern}"))
            .param("n", n)
            .param("pattern", pattern)
    };
    match weighting.into() {
        Weighting::Edges(w) => {
            let cert = base("fractional transversal").with_value(rational::format(&w.total()));
            if w.n != n || w.r != pattern.r {
                return Err(Error::param(format!(
                    "weighting on K^({})_{} checked against {pattern} in [{n}]",
                    w.r, w.n
                )));
            }
            if let Some((e, x)) = w.support().find(|(_, x)| x.is_negative()) {
                return Ok(cert.fail(serde_json::json!({ "negative_edge": e, "weight": rational::format(x) })));
            }
            let violated = index.copies.par_iter().find_first(|c| {
                let load: Rational = c.edges.iter().map(|&e| &w.weights[e]).sum();
                load < rational::one()
            });
            Ok(match violated {
                None => cert,
                Some(c) => {
                    let load: Rational = c.edges.iter().map(|&e| &w.weights[e]).sum();
                    cert.fail(serde_json::json!({ "copy": c.vertices, "weight": rational::format(&load) }))
                }
            })
        }
        Weighting::Copies(w) => {
            let cert = base("fractional packing").with_value(rational::format(&w.total()));
            if w.n != n || w.pattern != pattern {
                return Err(Error::param(format!(
                    "packing of {} in [{}] checked against {pattern} in [{n}]",
                    w.pattern, w.n
                )));
            }
            let pattern_graph = pattern.build()?;
            let mut load = vec![Rational::zero(); index.universe];
            for (c, y) in &w.weights {
                let valid = c.len() == pattern.s
                    && c.windows(2).all(|p| p[0] < p[1])
                    && c.first().is_some_and(|&v| v >= 1)
                    && c.last().is_some_and(|&v| v as usize <= n);
                if !valid {
                    return Ok(cert.fail(serde_json::json!({ "malformed_copy": c })));
                }
                if y.is_negative() {
                    return Ok(cert.fail(serde_json::json!({ "negative_copy": c, "weight": rational::format(y) })));
                }
                for e in pattern_graph.edges() {
                    let image: Vec<Vertex> = e.iter().map(|&v| c[v as usize - 1]).collect();
                    load[colex_rank(&image)] += y;
                }
            }
            Ok(match load.iter().position(|l| *l > rational::one()) {
                None => cert,
                Some(e) => cert.fail(serde_json::json!({
                    "edge": colex_unrank(e, pattern.r),
                    "load": rational::format(&load[e]),
                })),
            })
        }
    }
}

/// `ν <= ν* = τ* <= τ` on one instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityChain {
    pub n: usize,
    pub pattern: PatternSpec,
    pub nu: u64,
    #[serde(with = "rational::as_string")]
    pub nu_star: Rational,
    #[serde(with = "rational::as_string")]
    pub tau_star: Rational,
    pub tau: u64,
    /// Whether the integral values are proven optimal (not just bounds).
    pub exact: bool,
    pub holds: bool,
}

impl DualityChain {
    pub fn summary(&self) -> String {
        format!(
            "{} <= {} = {} <= {}",
            self.nu,
            rational::format(&self.nu_star),
            rational::format(&self.tau_star),
            self.tau
        )
    }
}

/// Computes `ν`, `τ` with the exact oracle and `ν* = τ*` with the LP, and
/// checks the chain.
pub fn duality_chain(n: usize, pattern: PatternSpec, budget: &crate::oracle::SearchBudget) -> Result<DualityChain> {
    let lp = solve_fractional(n, pattern)?;
    let nu = crate::oracle::exact_nu(n, pattern, budget)?;
    let tau = crate::oracle::exact_tau(n, pattern, budget)?;
    Ok(chain_from_values(n, pattern, &lp, nu.value, tau.value, nu.optimal && tau.optimal))
}

/// Builds the chain report from an LP outcome and integral values obtained
/// elsewhere (for instance from certified constructions).
pub fn chain_from_values(n: usize, pattern: PatternSpec, lp: &LpOutcome, nu: u64, tau: u64, exact: bool) -> DualityChain {
    let nu_star = lp.dual.total();
    let tau_star = lp.primal.total();
    let holds = lp.status == LpStatus::Optimal
        && rational::int(nu) <= nu_star
        && nu_star == tau_star
        && tau_star <= rational::int(tau);
    DualityChain {
        n,
        pattern,
        nu,
        nu_star,
        tau_star,
        tau,
        exact,
        holds,
    }
}

/// The transversal LP in CPLEX LP text format, one variable `x<rank>` per
/// edge appearing in some copy.
pub fn export_lp(n: usize, pattern: PatternSpec) -> Result<String> {
    let index = copy_index(n, pattern)?;
    let by_edge = index.copies_by_edge();
    let used: Vec<usize> = (0..by_edge.len()).filter(|&e| !by_edge[e].is_empty()).collect();
    let mut out = String::new();
    writeln!(out, "\\ fractional transversal of {pattern} in [{n}]").unwrap();
    writeln!(out, "Minimize").unwrap();
    let terms: Vec<String> = used.iter().map(|e| format!("x{e}")).collect();
    writeln!(out, " obj: {}", if terms.is_empty() { "0 x0".to_string() } else { terms.join(" + ") }).unwrap();
    writeln!(out, "Subject To").unwrap();
    for (i, c) in index.copies.iter().enumerate() {
        let lhs: Vec<String> = c.edges.iter().map(|e| format!("x{e}")).collect();
        writeln!(out, " c{i}: {} >= 1", lhs.join(" + ")).unwrap();
    }
    writeln!(out, "Bounds").unwrap();
    for e in &used {
        writeln!(out, " x{e} >= 0").unwrap();
    }
    writeln!(out, "End").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fractional_transversal_weights;
    use crate::rational::{int, ratio};

    fn path(r: usize, s: usize) -> PatternSpec {
        PatternSpec::natural_path(r, s).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(solve_fractional(8, path(2, 4)).unwrap().value, int(6));
        assert_eq!(solve_fractional(6, path(3, 4)).unwrap().value, int(7));
        assert_eq!(solve_fractional(6, path(3, 5)).unwrap().value, int(2));
        assert_eq!(solve_fractional(7, path(3, 3)).unwrap().value, int(35));
    }

    #[test]
    fn pattern_larger_than_host_has_value_zero() {
        let out = solve_fractional(4, path(3, 6)).unwrap();
        assert_eq!(out.value, int(0));
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.copies, 0);
    }

    #[test]
    fn outcome_certifies_itself() {
        for (n, r, s) in [(7, 2, 4), (8, 3, 5), (9, 3, 6)] {
            let out = solve_fractional(n, path(r, s)).unwrap();
            assert_eq!(out.status, LpStatus::Optimal);
            assert_eq!(out.primal.total(), out.value);
            assert_eq!(out.dual.total(), out.value);
        }
    }

    #[test]
    fn divisible_instances_match_binomial() {
        for (n, r, s) in [(6, 2, 4), (8, 2, 4), (6, 3, 6), (8, 3, 6), (6, 2, 6)] {
            let k = s / r;
            let expected = binomial((n / k) as u64, r as u64);
            assert_eq!(solve_fractional(n, path(r, s)).unwrap().value, int(expected), "n={n} r={r} s={s}");
        }
    }

    #[test]
    fn feasibility_examples() {
        let w = fractional_transversal_weights(8, 2, 4).unwrap();
        assert!(verify_feasible(&w, 8, path(2, 4)).unwrap().verified);
        let zero = EdgeWeighting::zero(6, 3);
        let cert = verify_feasible(&zero, 6, path(3, 4)).unwrap();
        assert!(!cert.verified);
        assert_eq!(cert.counterexample.unwrap()["copy"], serde_json::json!([1, 2, 3, 4]));
        for s in 3..=6 {
            let uniform = EdgeWeighting::uniform(7, 3, ratio(1, s as i64 - 2));
            assert!(verify_feasible(&uniform, 7, path(3, s)).unwrap().verified);
        }
    }

    #[test]
    fn overloaded_packing_is_reported() {
        let mut w = CopyWeighting::new(5, path(2, 3));
        w.weights.insert(vec![1, 2, 3], int(1));
        w.weights.insert(vec![2, 3, 4], int(1));
        let cert = verify_feasible(&w, 5, path(2, 3)).unwrap();
        assert!(!cert.verified);
        assert_eq!(cert.counterexample.unwrap()["edge"], serde_json::json!([2, 3]));
    }

    #[test]
    fn weightings_round_trip_through_json() {
        let out = solve_fractional(7, path(2, 4)).unwrap();
        let text = serde_json::to_string(&out).unwrap();
        let back: LpOutcome = serde_json::from_str(&text).unwrap();
        assert_eq!(back.primal, out.primal);
        assert_eq!(back.dual, out.dual);
        assert_eq!(back.value, out.value);
    }

    #[test]
    fn export_lists_every_copy() {
        let text = export_lp(5, path(2, 3)).unwrap();
        assert_eq!(text.lines().filter(|l| l.contains(">= 1")).count(), 10);
        assert!(text.starts_with("\\ fractional"));
        assert!(text.trim_end().ends_with("End"));
    }

    #[test]
    fn scaling_preserves_feasibility() {
        let w = fractional_transversal_weights(6, 2, 4).unwrap();
        for f in [ratio(1, 1), ratio(3, 2), ratio(7, 3)] {
            assert!(verify_feasible(&w.scaled(&f), 6, path(2, 4)).unwrap().verified);
        }
    }
}
