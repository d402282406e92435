//! End-to-end checks of the nine acceptance criteria, shared by the
//! `reproduce` subcommand and the acceptance test target.

use std::fmt::Display;
use std::time::{Duration, Instant};

use num::ToPrimitive;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::constructions::bias::h_or_zero;
use crate::constructions::{
    biased_transversal, generate_packing, h_count, interval_blowup, short_path_value, typical_split, verify_transversal,
    CountMode,
};
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::labeling::{
    bad_by_middle, badcount_prediction, cost, even_partition, find_k1_triple, labeling_to_hypergraph, profile,
    ConstructionKind, Label,
};
use crate::lp::{chain_from_values, solve_fractional, LpStatus};
use crate::oracle::{exact_ex, exact_f, exact_nu, exact_tau, optimal_labelings, SearchBudget};
use crate::pattern::PatternSpec;
use crate::rational::{self, ratio, Rational};

pub const CRITERION_IDS: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Outcome of one criterion: every failed check plus informational lines.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_secs: f64,
    pub limit_secs: f64,
    pub checks: usize,
    pub failures: Vec<String>,
    pub details: Vec<String>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut out = format!(
            "criterion {} {verdict}: {} ({} checks, {:.2}s of {:.0}s)",
            self.id, self.title, self.checks, self.elapsed_secs, self.limit_secs
        );
        for f in self.failures.iter().take(5) {
            out.push_str(&format!("\n    {f}"));
        }
        if self.failures.len() > 5 {
            out.push_str(&format!("\n    ... {} more", self.failures.len() - 5));
        }
        out
    }
}

struct Checks {
    count: usize,
    failures: Vec<String>,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            count: 0,
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn equal<T: PartialEq + Display>(&mut self, got: T, want: T, ctx: impl Display) {
        self.expect(got == want, || format!("{ctx}: got {got}, expected {want}"));
    }

    fn ok<T>(&mut self, r: Result<T>, ctx: impl Display) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.count += 1;
                self.failures.push(format!("{ctx}: {e}"));
                None
            }
        }
    }

    fn timed<T>(&mut self, limit: Duration, ctx: impl Display, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let spent = start.elapsed();
        self.expect(spent <= limit, || format!("{ctx}: took {spent:.2?}, limit {limit:?}"));
        out
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }
}

fn title(id: u8) -> &'static str {
    match id {
        1 => "short-path transversal and packing sizes",
        2 => "spot values of tau, nu and ex",
        3 => "closure identity and h formula",
        4 => "typical-set decomposition",
        5 => "LP duality",
        6 => "ex of 3-uniform paths equals f",
        7 => "construction densities",
        8 => "structure of optimal labelings",
        9 => "freeness of construction hypergraphs",
        _ => "unknown",
    }
}

pub fn time_limit(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 => 120,
        2 => 30,
        3 => 10,
        4 => 60,
        5 => 60,
        6 => 120,
        7 => 60,
        8 => 300,
        9 => 30,
        _ => 0,
    })
}

/// Runs one criterion. Check failures are reported, not returned as errors.
pub fn run_criterion(id: u8, budget: &SearchBudget) -> Result<CriterionReport> {
    let mut checks = Checks::new();
    let start = Instant::now();
    match id {
        1 => short_paths(&mut checks, budget),
        2 => spot_values(&mut checks, budget),
        3 => closure(&mut checks),
        4 => typical_sets(&mut checks),
        5 => duality(&mut checks),
        6 => equivalence(&mut checks, budget),
        7 => densities(&mut checks),
        8 => optimum_structure(&mut checks, budget),
        9 => freeness(&mut checks),
        other => return Err(Error::param(format!("no acceptance criterion {other}; ids are 1..=9"))),
    }
    let elapsed = start.elapsed();
    let limit = time_limit(id);
    checks.expect(elapsed <= limit, || format!("total time {elapsed:.2?} exceeds {limit:?}"));
    Ok(CriterionReport {
        id,
        title: title(id),
        passed: checks.failures.is_empty(),
        elapsed_secs: elapsed.as_secs_f64(),
        limit_secs: limit.as_secs_f64(),
        checks: checks.count,
        failures: checks.failures,
        details: checks.details,
    })
}

/// The `(n, r, s)` grid of short paths.
pub fn short_path_grid() -> Vec<(usize, usize, usize)> {
    let mut grid = Vec::new();
    for n in [4, 6, 8, 10] {
        for r in 2..=4 {
            for s in r..=(2 * r - 1).min(n) {
                grid.push((n, r, s));
            }
        }
    }
    grid
}

fn short_paths(checks: &mut Checks, budget: &SearchBudget) {
    for (n, r, s) in short_path_grid() {
        let ctx = format!("n={n} r={r} s={s}");
        let Some(value) = checks.ok(short_path_value(n, r, s), &ctx) else { continue };
        let Some(bt) = checks.ok(biased_transversal(n, r, s), &ctx) else { continue };
        checks.equal(bt.size() as u64, value, format!("{ctx} transversal size"));
        let mut patterns = vec![PatternSpec::natural_path(r, s)];
        if s > r {
            patterns.push(PatternSpec::loose_path(r, s));
        }
        for p in patterns {
            let Some(p) = checks.ok(p, &ctx) else { continue };
            if let Some(cert) = checks.ok(verify_transversal(bt.graph(), p), &ctx) {
                checks.expect(cert.verified, || format!("{ctx}: transversal misses a copy of {p}: {:?}", cert.counterexample));
            }
        }
        if let Some(fam) = checks.ok(generate_packing(n, r, s), &ctx) {
            let cert = fam.verify();
            checks.expect(cert.verified, || format!("{ctx}: packing not edge-disjoint: {:?}", cert.counterexample));
            checks.equal(fam.len() as u64, value, format!("{ctx} packing size"));
        }
        if n <= 8 {
            let p = PatternSpec::natural_path(r, s).expect("valid path");
            if let Some(t) = checks.ok(exact_tau(n, p, budget), &ctx) {
                checks.expect(t.optimal, || format!("{ctx}: tau search ran out of budget"));
                checks.equal(t.value, value, format!("{ctx} exact tau"));
            }
            if let Some(nu) = checks.ok(exact_nu(n, p, budget), &ctx) {
                checks.expect(nu.optimal, || format!("{ctx}: nu search ran out of budget"));
                checks.equal(nu.value, value, format!("{ctx} exact nu"));
            }
        }
        checks.note(format!("{ctx}: {value}"));
    }
}

fn spot_values(checks: &mut Checks, budget: &SearchBudget) {
    let each = Duration::from_secs(5);
    for (s, tau, ex) in [(4, 7, 13), (5, 2, 18)] {
        let p = PatternSpec::natural_path(3, s).expect("valid path");
        let ctx = format!("n=6 {p}");
        let runs = [
            ("tau", tau, checks.timed(each, format!("{ctx} tau"), || exact_tau(6, p, budget))),
            ("nu", tau, checks.timed(each, format!("{ctx} nu"), || exact_nu(6, p, budget))),
            ("ex", ex, checks.timed(each, format!("{ctx} ex"), || exact_ex(6, p, budget))),
        ];
        for (name, want, res) in runs {
            if let Some(res) = checks.ok(res, &ctx) {
                checks.expect(res.optimal, || format!("{ctx} {name}: not proven optimal"));
                checks.equal(res.value, want, format!("{ctx} {name}"));
                if let Some(cert) = checks.ok(res.verify(), &ctx) {
                    checks.expect(cert.verified, || format!("{ctx} {name}: witness fails: {:?}", cert.counterexample));
                }
            }
        }
    }
}

fn closure(checks: &mut Checks) {
    for n in (2..=20).step_by(2) {
        for r in 1..=5.min(n) {
            let lhs = 2 * h_or_zero(n, r, 1) + h_or_zero(n, r - 1, 1);
            checks.equal(lhs, binomial(n as u64, r as u64), format!("2h({n},{r},1) + h({n},{},1)", r - 1));
        }
    }
    for n in (2..=16).step_by(2) {
        for t in 1..=5.min(n) {
            for m in 1..=t {
                let formula = h_count(n, t, m, CountMode::Formula);
                let counted = h_count(n, t, m, CountMode::Enumerate);
                if let (Some(a), Some(b)) = (checks.ok(formula, "h formula"), checks.ok(counted, "h enumeration")) {
                    checks.equal(a, b, format!("h({n},{t},{m}) formula vs enumeration"));
                }
            }
        }
    }
}

fn typical_sets(checks: &mut Checks) {
    for n in (2..=14).step_by(2) {
        for r in 1..=4.min(n) {
            for m in 1..=r {
                if let Some(split) = checks.ok(typical_split(n, r, m), format!("n={n} r={r} m={m}")) {
                    let want = (1u64 << (r - m)) * binomial(n as u64 / 2, r as u64);
                    checks.equal(split.typical_left_biased, want, format!("n={n} r={r} m={m} left-biased typical sets"));
                    checks.equal(split.typical, (1u64 << r) * binomial(n as u64 / 2, r as u64), format!("n={n} r={r} typical sets"));
                }
            }
        }
    }
}

fn duality(checks: &mut Checks) {
    for (n, r, s, want) in [(8, 2, 4, 6), (12, 3, 6, 20)] {
        let p = PatternSpec::natural_path(r, s).expect("valid path");
        let ctx = format!("n={n} {p}");
        if let Some(lp) = checks.ok(solve_fractional(n, p), &ctx) {
            checks.equal(lp.value.clone(), rational::int(want), format!("{ctx} LP value"));
            checks.equal(lp.primal.total(), lp.dual.total(), format!("{ctx} primal vs dual"));
            checks.expect(lp.status == LpStatus::Optimal, || format!("{ctx}: LP certificate failed"));
        }
    }
    for (n, r, s) in short_path_grid() {
        let ctx = format!("n={n} r={r} s={s}");
        let p = PatternSpec::natural_path(r, s).expect("valid path");
        let (Some(lp), Some(bt), Some(fam)) = (
            checks.ok(solve_fractional(n, p), &ctx),
            checks.ok(biased_transversal(n, r, s), &ctx),
            checks.ok(generate_packing(n, r, s), &ctx),
        ) else {
            continue;
        };
        checks.equal(lp.primal.total(), lp.dual.total(), format!("{ctx} primal vs dual"));
        // A verified packing and transversal of equal size pin down nu and tau.
        let (nu, tau) = (fam.len() as u64, bt.size() as u64);
        let chain = chain_from_values(n, p, &lp, nu, tau, nu == tau && fam.verify().verified);
        checks.expect(chain.holds, || format!("{ctx}: chain {} fails", chain.summary()));
        checks.note(format!("{ctx}: {}", chain.summary()));
    }
}

fn equivalence(checks: &mut Checks, budget: &SearchBudget) {
    for (n, s) in [(4, 4), (5, 4), (6, 4), (5, 5), (6, 5)] {
        let p = PatternSpec::natural_path(3, s).expect("valid path");
        let k = (s - 2) as Label;
        let ctx = format!("n={n} s={s}");
        let (Some(ex), Some(f)) = (checks.ok(exact_ex(n, p, budget), &ctx), checks.ok(exact_f(n, k, budget, false), &ctx)) else {
            continue;
        };
        checks.expect(ex.optimal && f.optimal, || format!("{ctx}: a search ran out of budget"));
        checks.equal(ex.value, f.value, format!("{ctx} ex vs f({n},{k})"));
        checks.note(format!("{ctx}: ex = f = {}", f.value));
        match (n, k) {
            (6, 2) => checks.equal(f.value, 13, "f(6,2)"),
            (6, 3) => checks.equal(f.value, 18, "f(6,3)"),
            _ => {}
        }
    }
}

fn fraction(count: u64, n: usize) -> Rational {
    ratio(count as i64, binomial(n as u64, 3) as i64)
}

fn densities(checks: &mut Checks) {
    let cases = [
        (ConstructionKind::Odd, 3, 300, ratio(15, 1000)),
        (ConstructionKind::Even, 2, 300, ratio(2, 100)),
        (ConstructionKind::Even, 4, 360, ratio(2, 100)),
    ];
    for (kind, k, n, tol) in cases {
        let ctx = format!("{kind:?} k={k} n={n}");
        let Some(phi) = checks.ok(kind.build(n, k), &ctx) else { continue };
        let measured = fraction(cost(&phi).bad, n);
        let gap = &measured - kind.limit(k);
        checks.expect(num::abs(gap.clone()) <= tol, || {
            format!("{ctx}: bad fraction {} is {} from the limit", rational::to_f64(&measured), rational::to_f64(&gap))
        });
        checks.note(format!("{ctx}: bad fraction {:.5}", rational::to_f64(&measured)));
        if kind == ConstructionKind::Even {
            per_part_counts(checks, &phi, n, k, &ctx);
        }
    }
}

/// Bad triples by the part of their middle vertex against the prediction
/// from the neighboring part sizes, to within 10%.
fn per_part_counts(checks: &mut Checks, phi: &crate::labeling::Labeling, n: usize, k: Label, ctx: &str) {
    let Some(partition) = checks.ok(even_partition(n, k), ctx) else { return };
    let by_middle = bad_by_middle(phi);
    let sizes: Vec<Rational> = partition.lengths().iter().map(|&l| ratio(l as i64, n as i64)).collect();
    let zero = rational::zero();
    for (i, part) in partition.parts().iter().enumerate() {
        let measured: u64 = part.clone().map(|v| by_middle[v as usize - 1]).sum();
        let a = if i == 0 { &zero } else { &sizes[i - 1] };
        let c = sizes.get(i + 1).unwrap_or(&zero);
        let Some(predicted) = checks.ok(badcount_prediction(a, &sizes[i], c, n), ctx) else { continue };
        let error = num::abs(rational::int(measured) - &predicted);
        checks.expect(error <= &predicted * ratio(1, 10), || {
            format!("{ctx} part {}: {measured} bad triples, predicted {:.1}", i + 1, predicted.to_f64().unwrap_or(f64::NAN))
        });
    }
}

fn optimum_structure(checks: &mut Checks, budget: &SearchBudget) {
    for n in 3..=6 {
        for k in [2, 3] {
            let ctx = format!("n={n} k={k}");
            let Some(set) = checks.ok(optimal_labelings(n, k, budget, false), &ctx) else { continue };
            checks.expect(set.complete, || format!("{ctx}: optimum enumeration incomplete"));
            for phi in &set.labelings {
                let t = find_k1_triple(phi);
                checks.expect(t.is_none(), || format!("{ctx}: optimum {:?} has a (k,1) triple {t:?}", phi.label_vector()));
            }
            checks.note(format!("{ctx}: {} unrestricted optima of value {}", set.labelings.len(), set.value));
        }
    }
    for n in 3..=8 {
        let ctx = format!("n={n} k=3");
        let (Some(mono), Some(free)) = (
            checks.ok(optimal_labelings(n, 3, budget, true), &ctx),
            checks.ok(exact_f(n, 3, budget, false), &ctx),
        ) else {
            continue;
        };
        checks.expect(mono.complete && free.optimal, || format!("{ctx}: a search ran out of budget"));
        checks.expect(mono.value <= free.value, || {
            format!("{ctx}: monotone optimum {} exceeds unrestricted optimum {}", mono.value, free.value)
        });
        for phi in &mono.labelings {
            if let Some(prof) = checks.ok(profile(phi), &ctx) {
                let v = prof.structure_violations();
                checks.expect(v.is_empty(), || format!("{ctx}: monotone optimum {:?} violates {v:?}", phi.label_vector()));
            }
        }
        checks.note(format!(
            "{ctx}: {} monotone optima of value {}, unrestricted optimum {}",
            mono.labelings.len(),
            mono.value,
            free.value
        ));
    }
}

fn freeness(checks: &mut Checks) {
    for n in 3..=12 {
        for k in 1..=6 {
            let kind = if k % 2 == 1 { ConstructionKind::Odd } else { ConstructionKind::Even };
            let ctx = format!("{kind:?} n={n} k={k}");
            let Some(phi) = checks.ok(kind.build(n, k), &ctx) else { continue };
            let g = labeling_to_hypergraph(&phi);
            let p = PatternSpec::natural_path(3, k as usize + 2).expect("valid path");
            let Some(shape) = checks.ok(p.build(), &ctx) else { continue };
            if let Some(found) = checks.ok(find_embedding(&g, &shape), &ctx) {
                checks.expect(found.is_none(), || format!("{ctx}: contains {p} at {found:?}"));
            }
        }
    }
    let p = PatternSpec::natural_path(3, 5).expect("valid path");
    if let (Some(g), Some(shape)) = (checks.ok(interval_blowup(8, 3, 5), "blowup"), checks.ok(p.build(), "blowup")) {
        if let Some(found) = checks.ok(find_embedding(&g, &shape), "blowup") {
            checks.expect(found.is_none(), || format!("interval_blowup(8,3,5) contains {p} at {found:?}"));
        }
    }
}
