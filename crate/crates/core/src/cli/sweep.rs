//! Parameter sweeps: a grid of `(n, r, s, k)` points, a list of quantities,
//! and one CSV row per admissible point in grid order.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::constructions::{biased_transversal, generate_packing, short_path_value, verify_transversal};
use crate::error::{Error, Result};
use crate::labeling::{cost, ConstructionKind, Label};
use crate::lp::{solve_fractional, LpStatus};
use crate::oracle::{exact_ex, exact_f, exact_nu, exact_tau, ExactResult, SearchBudget};
use crate::pattern::{PatternKind, PatternSpec};
use crate::rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepQuantity {
    Construct,
    Verify,
    Tau,
    Nu,
    Ex,
    Lp,
    F,
    LabelDensity,
}

impl FromStr for SweepQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "construct" => SweepQuantity::Construct,
            "verify" => SweepQuantity::Verify,
            "tau" => SweepQuantity::Tau,
            "nu" => SweepQuantity::Nu,
            "ex" => SweepQuantity::Ex,
            "lp" => SweepQuantity::Lp,
            "f" => SweepQuantity::F,
            "label-density" => SweepQuantity::LabelDensity,
            other => return Err(Error::param(format!("unknown sweep quantity `{other}`"))),
        })
    }
}

impl SweepQuantity {
    fn columns(self) -> &'static [&'static str] {
        match self {
            SweepQuantity::Construct => &["transversal", "packing"],
            SweepQuantity::Verify => &["verified"],
            SweepQuantity::Tau => &["tau", "tau_status"],
            SweepQuantity::Nu => &["nu", "nu_status"],
            SweepQuantity::Ex => &["ex", "ex_status"],
            SweepQuantity::Lp => &["lp", "lp_f64"],
            SweepQuantity::F => &["f", "f_status"],
            SweepQuantity::LabelDensity => &["bad", "bad_fraction", "bad_fraction_f64", "limit", "limit_f64"],
        }
    }

    fn needs_path(self) -> bool {
        !matches!(self, SweepQuantity::F | SweepQuantity::LabelDensity)
    }
}

/// One grid point; `k` falls back to `s - 2` when only `s` is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub n: usize,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<usize>,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for (key, v) in [("r", self.r), ("s", self.s), ("k", self.k)] {
            if let Some(v) = v {
                write!(f, " {key}={v}")?;
            }
        }
        Ok(())
    }
}

impl GridPoint {
    fn pattern(&self, kind: PatternKind) -> Result<PatternSpec> {
        match (self.r, self.s) {
            (Some(r), Some(s)) => PatternSpec::new(kind, r, s),
            _ => Err(Error::param("quantity needs r and s in the grid")),
        }
    }

    fn labels(&self) -> Result<Label> {
        let k = match (self.k, self.s) {
            (Some(k), _) => k,
            (None, Some(s)) if s >= 3 => s - 2,
            _ => return Err(Error::param("quantity needs k (or s >= 3) in the grid")),
        };
        Ok(k as Label)
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Axis name and values, outermost first.
    pub grid: Vec<(String, Vec<usize>)>,
    pub quantities: Vec<SweepQuantity>,
    pub pattern: PatternKind,
    pub budget: SearchBudget,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub skipped: Vec<(GridPoint, String)>,
}

/// `a`, `a..b` or `a..b:step`, inclusive.
pub fn parse_range(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::param(format!("bad range `{text}`; use a, a..b or a..b:step"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (span, step) = match text.split_once(':') {
        Some((span, step)) => (span, num(step)?),
        None => (text, 1),
    };
    if step == 0 {
        return Err(bad());
    }
    match span.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).step_by(step).collect())
        }
        None => Ok(vec![num(span)?]),
    }
}

/// `n=4..10:2,r=3,s=4..5`.
pub fn parse_grid(text: &str) -> Result<Vec<(String, Vec<usize>)>> {
    let mut axes: Vec<(String, Vec<usize>)> = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, range) = part
            .split_once('=')
            .ok_or_else(|| Error::param(format!("grid entry `{part}` is not key=range")))?;
        let key = key.trim().to_string();
        if !["n", "r", "s", "k"].contains(&key.as_str()) {
            return Err(Error::param(format!("unknown grid axis `{key}`; axes are n, r, s, k")));
        }
        if axes.iter().any(|(k, _)| *k == key) {
            return Err(Error::param(format!("grid axis `{key}` given twice")));
        }
        axes.push((key, parse_range(range)?));
    }
    if !axes.iter().any(|(k, _)| k == "n") {
        return Err(Error::param("grid needs an n axis"));
    }
    Ok(axes)
}

pub fn parse_quantities(text: &str) -> Result<Vec<SweepQuantity>> {
    let out: Vec<SweepQuantity> = text.split(',').map(str::parse).collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::param("no quantities requested"));
    }
    Ok(out)
}

impl SweepSpec {
    pub fn points(&self) -> Vec<GridPoint> {
        self.grid
            .iter()
            .map(|(_, values)| values.iter().copied())
            .multi_cartesian_product()
            .map(|values| {
                let get = |key: &str| self.grid.iter().position(|(k, _)| k == key).map(|i| values[i]);
                GridPoint {
                    n: get("n").expect("grid has an n axis"),
                    r: get("r"),
                    s: get("s"),
                    k: get("k"),
                }
            })
            .collect()
    }

    fn header(&self) -> Vec<String> {
        let axes = self.grid.iter().map(|(k, _)| k.clone());
        let cols = self.quantities.iter().flat_map(|q| q.columns().iter().map(|c| c.to_string()));
        axes.chain(cols).collect()
    }

    fn cells(&self, p: &GridPoint, q: SweepQuantity) -> Result<Vec<String>> {
        let path = if q.needs_path() { Some(p.pattern(self.pattern)?) } else { None };
        let exact = |res: ExactResult| vec![res.value.to_string(), format!("{:?}", res.status).to_lowercase()];
        Ok(match q {
            SweepQuantity::Construct => {
                let spec = path.unwrap();
                let t = biased_transversal(p.n, spec.r, spec.s)?;
                let f = generate_packing(p.n, spec.r, spec.s)?;
                vec![t.size().to_string(), f.len().to_string()]
            }
            SweepQuantity::Verify => {
                let spec = path.unwrap();
                let value = short_path_value(p.n, spec.r, spec.s)?;
                let t = biased_transversal(p.n, spec.r, spec.s)?;
                let hit = verify_transversal(t.graph(), spec)?;
                let f = generate_packing(p.n, spec.r, spec.s)?;
                let ok = hit.verified && f.verify().verified && t.size() as u64 == value && f.len() as u64 == value;
                vec![ok.to_string()]
            }
            SweepQuantity::Tau => exact(exact_tau(p.n, path.unwrap(), &self.budget)?),
            SweepQuantity::Nu => exact(exact_nu(p.n, path.unwrap(), &self.budget)?),
            SweepQuantity::Ex => exact(exact_ex(p.n, path.unwrap(), &self.budget)?),
            SweepQuantity::Lp => {
                let lp = solve_fractional(p.n, path.unwrap())?;
                if lp.status != LpStatus::Optimal {
                    return Err(Error::Structural(format!("LP certificate failed at {p}")));
                }
                vec![rational::format(&lp.value), rational::to_f64(&lp.value).to_string()]
            }
            SweepQuantity::F => exact(exact_f(p.n, p.labels()?, &self.budget, false)?),
            SweepQuantity::LabelDensity => {
                let k = p.labels()?;
                let kind = if k % 2 == 1 { ConstructionKind::Odd } else { ConstructionKind::Even };
                if p.n < 3 {
                    return Err(Error::param("density needs n >= 3"));
                }
                let bad = cost(&kind.build(p.n, k)?).bad;
                let fraction = rational::ratio(bad as i64, crate::combinatorics::binomial(p.n as u64, 3) as i64);
                let limit = kind.limit(k);
                vec![
                    bad.to_string(),
                    rational::format(&fraction),
                    rational::to_f64(&fraction).to_string(),
                    rational::format(&limit),
                    rational::to_f64(&limit).to_string(),
                ]
            }
        })
    }

    /// Evaluates every point in parallel; points where some quantity's
    /// preconditions fail are skipped and logged, other errors abort.
    pub fn run(&self) -> Result<SweepTable> {
        let points = self.points();
        let outcomes: Vec<Result<std::result::Result<Vec<String>, String>>> = points
            .par_iter()
            .map(|p| {
                let mut row: Vec<String> = self
                    .grid
                    .iter()
                    .map(|(key, _)| match key.as_str() {
                        "n" => p.n,
                        "r" => p.r.unwrap(),
                        "s" => p.s.unwrap(),
                        _ => p.k.unwrap(),
                    })
                    .map(|v| v.to_string())
                    .collect();
                for &q in &self.quantities {
                    match self.cells(p, q) {
                        Ok(cells) => row.extend(cells),
                        Err(e) if e.is_precondition() => return Ok(Err(e.to_string())),
                        Err(e) => return Err(e),
                    }
                }
                Ok(Ok(row))
            })
            .collect();
        let mut table = SweepTable {
            header: self.header(),
            rows: Vec::new(),
            skipped: Vec::new(),
        };
        for (p, outcome) in points.into_iter().zip(outcomes) {
            match outcome? {
                Ok(row) => table.rows.push(row),
                Err(reason) => {
                    log::warn!("skipping {p}: {reason}");
                    table.skipped.push((p, reason));
                }
            }
        }
        Ok(table)
    }
}

impl SweepTable {
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let fmt = |e: csv::Error| Error::Format(e.to_string());
        w.write_record(&self.header).map_err(fmt)?;
        for row in &self.rows {
            w.write_record(row).map_err(fmt)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(grid: &str, quantities: &str) -> SweepSpec {
        SweepSpec {
            grid: parse_grid(grid).unwrap(),
            quantities: parse_quantities(quantities).unwrap(),
            pattern: PatternKind::NaturalPath,
            budget: SearchBudget::default(),
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..10:2").unwrap(), vec![4, 6, 8, 10]);
        assert_eq!(parse_range("4..5").unwrap(), vec![4, 5]);
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert_eq!(parse_range("5..=6").unwrap(), vec![5, 6]);
        for bad in ["", "a", "5..4", "1..3:0", "1..x"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("n=4..10:2,r=3,s=4..5").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[2], ("s".to_string(), vec![4, 5]));
        assert!(parse_grid("r=3").is_err());
        assert!(parse_grid("n=4,n=5").is_err());
        assert!(parse_grid("n=4,q=1").is_err());
        assert!(parse_quantities("tau,bogus").is_err());
    }

    #[test]
    fn example_sweep_rows_in_grid_order() {
        let table = spec("n=4..10:2,r=3,s=4..5", "tau,nu,lp").run().unwrap();
        assert_eq!(table.header, ["n", "r", "s", "tau", "tau_status", "nu", "nu_status", "lp", "lp_f64"]);
        assert_eq!(table.rows.len(), 8);
        let keys: Vec<(String, String)> = table.rows.iter().map(|r| (r[0].clone(), r[2].clone())).collect();
        assert_eq!(keys[0], ("4".into(), "4".into()));
        assert_eq!(keys[7], ("10".into(), "5".into()));
        // n=6, s=4 row
        assert_eq!(table.rows[2][3..8], ["7", "optimal", "7", "optimal", "7"]);
    }

    #[test]
    fn precondition_failures_are_skipped() {
        let table = spec("n=5..6,r=3,s=4", "construct").run().unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.skipped.len(), 1);
        assert_eq!(table.skipped[0].0.n, 5);
        assert_eq!(table.rows[0], ["6", "3", "4", "7", "7"]);
    }

    #[test]
    fn labeling_quantities_take_k_from_s() {
        let table = spec("n=5..6,s=4..5", "f,label-density").run().unwrap();
        assert_eq!(table.rows.len(), 4);
        // f(6, 2) = 13 and f(6, 3) = 18
        assert_eq!(table.rows[2][2], "13");
        assert_eq!(table.rows[3][2], "18");
        let mut out = Vec::new();
        table.write_csv(&mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("n,s,f,f_status,bad,"));
    }
}
