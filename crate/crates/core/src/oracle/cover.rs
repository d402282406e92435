//! Minimum transversals, maximum edge-disjoint packings, and extremal
//! pattern-free hypergraphs over the copy hypergraph of a pattern.

use std::collections::HashMap;

use num::ToPrimitive;

use super::{ExactResult, Meter, Quantity, SearchBudget, Status, Witness};
use crate::combinatorics::{binomial, colex_unrank};
use crate::constructions::{flower_packing_with, generate_packing, Divisibility};
use crate::embed::{cached_copies, DEFAULT_COPY_CAP};
use crate::error::{Error, Result};
use crate::hypergraph::OrderedHypergraph;
use crate::lp::solve_fractional;
use crate::pattern::{PatternKind, PatternSpec};

/// Largest `copies x edges` product for which the LP bound is computed.
const LP_BOUND_SIZE: usize = 400_000;

/// Above this many edges the direct `ex` search is skipped.
const DIRECT_EX_EDGES: usize = 20;

/// Copies over the edges that occur in at least one copy, renumbered
/// `0..edges.len()` in rank order.
struct CopySystem {
    n: usize,
    r: usize,
    pattern: PatternSpec,
    /// Colex rank of each used edge.
    ranks: Vec<usize>,
    /// Per copy, its sorted edge indices.
    copies: Vec<Vec<usize>>,
    vertices: Vec<Vec<u32>>,
    /// Per edge, the copies containing it.
    by_edge: Vec<Vec<usize>>,
}

impl CopySystem {
    fn new(n: usize, pattern: PatternSpec) -> Result<Self> {
        pattern.validate()?;
        let index = cached_copies(n, pattern, DEFAULT_COPY_CAP)?;
        let mut ranks: Vec<usize> = index.copies.iter().flat_map(|c| c.edges.iter().copied()).collect();
        ranks.sort_unstable();
        ranks.dedup();
        let compact = |rank: usize| ranks.binary_search(&rank).expect("edge is used");
        let copies: Vec<Vec<usize>> = index.copies.iter().map(|c| c.edges.iter().map(|&e| compact(e)).collect()).collect();
        let mut by_edge = vec![Vec::new(); ranks.len()];
        for (i, c) in copies.iter().enumerate() {
            for &e in c {
                by_edge[e].push(i);
            }
        }
        Ok(CopySystem {
            n,
            r: pattern.r,
            pattern,
            vertices: index.copies.iter().map(|c| c.vertices.clone()).collect(),
            ranks,
            copies,
            by_edge,
        })
    }

    fn graph(&self, edges: impl IntoIterator<Item = usize>) -> OrderedHypergraph {
        let edges = edges.into_iter().map(|e| colex_unrank(self.ranks[e], self.r)).collect();
        OrderedHypergraph::new(self.n, self.r, edges).expect("edges come from K_n")
    }

    /// `ceil(τ*)` and `floor(ν*)`, when the LP is small enough.
    fn lp_bounds(&self) -> Result<Option<(u64, u64)>> {
        if self.copies.len() * self.ranks.len() > LP_BOUND_SIZE {
            return Ok(None);
        }
        let lp = solve_fractional(self.n, self.pattern)?;
        let (floor, ceil) = (lp.value.floor(), lp.value.ceil());
        Ok(Some((
            ceil.to_integer().to_u64().expect("bound fits"),
            floor.to_integer().to_u64().expect("bound fits"),
        )))
    }
}

fn result(kind: Quantity, sys: &CopySystem, value: u64, lower: u64, upper: u64, witness: Witness, nodes: u64) -> ExactResult {
    ExactResult {
        kind,
        n: sys.n,
        pattern: Some(sys.pattern),
        k: None,
        value,
        lower,
        upper,
        optimal: false,
        status: Status::Bounded,
        witness,
        nodes,
    }
    .finish()
}

/// Greedy hitting set: repeatedly the edge in most uncovered copies.
fn greedy_cover(sys: &CopySystem) -> Vec<usize> {
    let mut covered = vec![false; sys.copies.len()];
    let mut left = sys.copies.len();
    let mut chosen = Vec::new();
    while left > 0 {
        let gain = |e: usize| sys.by_edge[e].iter().filter(|&&c| !covered[c]).count();
        let best = (0..sys.ranks.len()).max_by_key(|&e| (gain(e), std::cmp::Reverse(e))).unwrap();
        for &c in &sys.by_edge[best] {
            if !covered[c] {
                covered[c] = true;
                left -= 1;
            }
        }
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen
}

enum Outcome {
    Found,
    NotFound,
    Aborted,
}

/// Include/exclude search over edges in rank order for a transversal of
/// size at most `target`; the first one found is the lexicographically
/// least.
struct CoverSearch<'a> {
    sys: &'a CopySystem,
    target: usize,
    last_edge: Vec<usize>,
    hits: Vec<u32>,
    uncovered: usize,
    chosen: Vec<usize>,
    stamp: Vec<u64>,
    generation: u64,
    meter: &'a mut Meter,
}

impl<'a> CoverSearch<'a> {
    fn new(sys: &'a CopySystem, target: usize, meter: &'a mut Meter) -> Self {
        CoverSearch {
            sys,
            target,
            last_edge: sys.copies.iter().map(|c| *c.last().unwrap()).collect(),
            hits: vec![0; sys.copies.len()],
            uncovered: sys.copies.len(),
            chosen: Vec::new(),
            stamp: vec![0; sys.ranks.len()],
            generation: 0,
            meter,
        }
    }

    /// Number of uncovered copies chosen greedily with pairwise disjoint
    /// sets of still-available edges; each needs its own edge.
    fn disjoint_bound(&mut self, from: usize) -> usize {
        self.generation += 1;
        let g = self.generation;
        let mut count = 0;
        for (c, edges) in self.sys.copies.iter().enumerate() {
            if self.hits[c] > 0 {
                continue;
            }
            let avail = || edges.iter().filter(|&&e| e >= from);
            if avail().all(|&e| self.stamp[e] != g) {
                avail().for_each(|&e| self.stamp[e] = g);
                count += 1;
            }
        }
        count
    }

    fn run(&mut self, j: usize) -> Outcome {
        if self.uncovered == 0 {
            return Outcome::Found;
        }
        if self.chosen.len() == self.target || j == self.sys.ranks.len() {
            return Outcome::NotFound;
        }
        if self.meter.tick() {
            return Outcome::Aborted;
        }
        if self.chosen.len() + self.disjoint_bound(j) > self.target {
            return Outcome::NotFound;
        }
        let useful = self.sys.by_edge[j].iter().any(|&c| self.hits[c] == 0);
        if useful {
            self.set(j, true);
            match self.run(j + 1) {
                Outcome::NotFound => self.set(j, false),
                done => return done,
            }
        }
        let strands = self.sys.by_edge[j]
            .iter()
            .any(|&c| self.hits[c] == 0 && self.last_edge[c] == j);
        if strands {
            return Outcome::NotFound;
        }
        self.run(j + 1)
    }

    fn set(&mut self, e: usize, include: bool) {
        for &c in &self.sys.by_edge[e] {
            if include {
                self.hits[c] += 1;
                if self.hits[c] == 1 {
                    self.uncovered -= 1;
                }
            } else {
                self.hits[c] -= 1;
                if self.hits[c] == 0 {
                    self.uncovered += 1;
                }
            }
        }
        if include {
            self.chosen.push(e);
        } else {
            self.chosen.pop();
        }
    }
}

/// Minimum number of edges of `K^(r)_n` meeting every copy of `pattern`.
pub fn exact_tau(n: usize, pattern: PatternSpec, budget: &SearchBudget) -> Result<ExactResult> {
    budget.validate()?;
    let sys = CopySystem::new(n, pattern)?;
    let mut meter = Meter::new(budget);
    let greedy = greedy_cover(&sys);
    let upper = greedy.len();
    let mut lower = CoverSearch::new(&sys, upper, &mut meter).disjoint_bound(0);
    if let Some((ceil_tau, _)) = sys.lp_bounds()? {
        lower = lower.max(ceil_tau as usize);
    }
    for target in lower..=upper {
        let mut search = CoverSearch::new(&sys, target, &mut meter);
        match search.run(0) {
            Outcome::Found => {
                let chosen = search.chosen.clone();
                let nodes = meter.nodes();
                let t = target as u64;
                return Ok(result(Quantity::Tau, &sys, t, t, t, Witness::Edges(sys.graph(chosen)), nodes));
            }
            Outcome::NotFound => log::debug!("τ({n}, {pattern}) > {target}"),
            Outcome::Aborted => {
                let nodes = meter.nodes();
                let witness = Witness::Edges(sys.graph(greedy));
                return Ok(result(Quantity::Tau, &sys, upper as u64, target as u64, upper as u64, witness, nodes));
            }
        }
    }
    Err(Error::Structural(format!("no transversal of size {upper} found for {pattern} in [{n}]")))
}

/// Include-first search over copies in lexicographic order for a largest
/// edge-disjoint family.
struct PackingSearch<'a> {
    sys: &'a CopySystem,
    per_copy: usize,
    used: Vec<bool>,
    free_edges: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    ceiling: usize,
    stamp: Vec<u64>,
    generation: u64,
    meter: &'a mut Meter,
}

impl PackingSearch<'_> {
    fn free(&self, c: usize) -> bool {
        self.sys.copies[c].iter().all(|&e| !self.used[e])
    }

    /// Free copies from `i` on, grouped by their first edge, take at most
    /// one copy per group; also capped by the free edge count.
    fn bound(&mut self, i: usize) -> usize {
        self.generation += 1;
        let g = self.generation;
        let mut groups = 0;
        for c in i..self.sys.copies.len() {
            if self.free(c) {
                let first = self.sys.copies[c][0];
                if self.stamp[first] != g {
                    self.stamp[first] = g;
                    groups += 1;
                }
            }
        }
        groups.min(self.free_edges / self.per_copy.max(1))
    }

    /// Returns false once the search should stop.
    fn run(&mut self, i: usize) -> bool {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.best.len() >= self.ceiling {
                return false;
            }
        }
        if i == self.sys.copies.len() {
            return true;
        }
        if self.meter.tick() {
            return false;
        }
        if self.chosen.len() + self.bound(i) <= self.best.len() {
            return true;
        }
        if self.free(i) {
            self.toggle(i, true);
            let go_on = self.run(i + 1);
            self.toggle(i, false);
            if !go_on {
                return false;
            }
        }
        self.run(i + 1)
    }

    fn toggle(&mut self, c: usize, on: bool) {
        for &e in &self.sys.copies[c] {
            self.used[e] = on;
        }
        if on {
            self.free_edges -= self.per_copy;
            self.chosen.push(c);
        } else {
            self.free_edges += self.per_copy;
            self.chosen.pop();
        }
    }
}

/// Node allowance for recovering the lexicographically least packing once
/// a construction already attains the LP bound.
const WITNESS_NODES: u64 = 1_000_000;

/// Copy indices of a known edge-disjoint packing of natural paths: the
/// biased-transversal packing for short paths, the flower packing when
/// `r | s`. Empty when neither applies.
fn construction_packing(sys: &CopySystem) -> Vec<usize> {
    let PatternSpec { kind, r, s } = sys.pattern;
    if kind != PatternKind::NaturalPath {
        return Vec::new();
    }
    let family = generate_packing(sys.n, r, s)
        .or_else(|_| flower_packing_with(sys.n, r, s, Divisibility::Padded))
        .ok()
        .filter(|f| f.verify().verified);
    let Some(family) = family else { return Vec::new() };
    let position: HashMap<&[u32], usize> = sys.vertices.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut out: Vec<usize> = family
        .members
        .iter()
        .filter_map(|q| position.get(q.vertices.as_slice()).copied())
        .collect();
    out.sort_unstable();
    if out.len() != family.len() {
        return Vec::new();
    }
    out
}

fn run_packing(sys: &CopySystem, ceiling: usize, incumbent: Vec<usize>, meter: &mut Meter) -> Vec<usize> {
    let per_copy = sys.copies.first().map_or(1, |c| c.len());
    let mut search = PackingSearch {
        sys,
        per_copy,
        used: vec![false; sys.ranks.len()],
        free_edges: sys.ranks.len(),
        chosen: Vec::new(),
        best: incumbent,
        ceiling,
        stamp: vec![0; sys.ranks.len()],
        generation: 0,
        meter,
    };
    if search.best.len() < ceiling {
        search.run(0);
    }
    search.best
}

/// Maximum number of pairwise edge-disjoint copies of `pattern` in `K^(r)_n`.
///
/// When a construction packing already reaches `floor(ν*)` the value is
/// settled at once; the lexicographically least optimal packing is then
/// reported if a search of at most [`WITNESS_NODES`] nodes finds it, and the
/// construction otherwise.
pub fn exact_nu(n: usize, pattern: PatternSpec, budget: &SearchBudget) -> Result<ExactResult> {
    budget.validate()?;
    let sys = CopySystem::new(n, pattern)?;
    let mut meter = Meter::new(budget);
    let ceiling = match sys.lp_bounds()? {
        Some((_, floor_nu)) => floor_nu as usize,
        None => sys.copies.len(),
    };
    let seed = construction_packing(&sys);
    let (best, exhausted, nodes) = if seed.len() >= ceiling && !seed.is_empty() {
        let capped = SearchBudget {
            node_limit: budget.node_limit.min(WITNESS_NODES),
            ..budget.clone()
        };
        let mut short = Meter::new(&capped);
        let found = run_packing(&sys, ceiling, Vec::new(), &mut short);
        let best = if found.len() >= seed.len() { found } else { seed };
        (best, false, short.nodes())
    } else {
        let best = run_packing(&sys, ceiling, seed, &mut meter);
        (best, meter.exhausted, meter.nodes())
    };
    let value = best.len() as u64;
    let upper = if exhausted { ceiling as u64 } else { value };
    let witness = Witness::Copies(best.iter().map(|&c| sys.vertices[c].clone()).collect());
    Ok(result(Quantity::Nu, &sys, value, value, upper.max(value), witness, nodes))
}

/// Largest number of edges of a pattern-free subgraph of `K^(r)_n`, as the
/// complement of a minimum transversal. On instances with at most 20 edges
/// a direct search over subgraphs confirms the value.
pub fn exact_ex(n: usize, pattern: PatternSpec, budget: &SearchBudget) -> Result<ExactResult> {
    let tau = exact_tau(n, pattern, budget)?;
    let total = binomial(n as u64, pattern.r as u64);
    let Witness::Edges(transversal) = &tau.witness else {
        unreachable!("τ witnesses are edge sets")
    };
    let mut out = tau.clone();
    out.kind = Quantity::Ex;
    out.value = total - tau.value;
    out.lower = total - tau.upper;
    out.upper = total - tau.lower;
    out.witness = Witness::Edges(transversal.complement());
    if tau.optimal && total as usize <= DIRECT_EX_EDGES {
        let sys = CopySystem::new(n, pattern)?;
        let direct = direct_ex(&sys, total as usize);
        if direct != out.value {
            return Err(Error::Structural(format!(
                "ex({n}, {pattern}): complement gives {} but direct search gives {direct}",
                out.value
            )));
        }
    }
    Ok(out)
}

/// Maximum pattern-free edge set by include/exclude search; an edge may be
/// added unless it completes some copy.
fn direct_ex(sys: &CopySystem, total: usize) -> u64 {
    fn go(sys: &CopySystem, e: usize, inside: &mut Vec<usize>, count: usize, best: &mut usize) {
        if count + (sys.ranks.len() - e) <= *best {
            return;
        }
        if e == sys.ranks.len() {
            *best = count;
            return;
        }
        let completes = sys.by_edge[e].iter().any(|&c| inside[c] + 1 == sys.copies[c].len());
        if !completes {
            sys.by_edge[e].iter().for_each(|&c| inside[c] += 1);
            go(sys, e + 1, inside, count + 1, best);
            sys.by_edge[e].iter().for_each(|&c| inside[c] -= 1);
        }
        go(sys, e + 1, inside, count, best);
    }
    let mut best = 0;
    go(sys, 0, &mut vec![0; sys.copies.len()], 0, &mut best);
    (total - sys.ranks.len() + best) as u64
}
