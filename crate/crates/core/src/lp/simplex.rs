//! Exact rational primal simplex for `max c.x  s.t.  A x <= b, x >= 0` with
//! `b >= 0`, so the slack basis is an initial feasible basis.
//!
//! Entering columns follow Dantzig's rule until a run of degenerate pivots,
//! after which Bland's rule takes over for good; Bland's rule cannot cycle,
//! so the method terminates. Ties are broken by lowest index throughout, so
//! results are reproducible.

use num::{Signed, Zero};

use crate::rational::Rational;

/// Degenerate pivots tolerated under Dantzig's rule before switching.
const DEGENERATE_RUN_LIMIT: usize = 50;

/// Sparse rows of `A`, entries `(column, coefficient)`.
#[derive(Clone, Debug)]
pub struct PackingLp {
    pub columns: usize,
    pub rows: Vec<Vec<(usize, Rational)>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SimplexStatus {
    Optimal,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct SimplexSolution {
    pub status: SimplexStatus,
    pub value: Rational,
    /// Optimal `x`.
    pub primal: Vec<Rational>,
    /// Optimal multipliers `y >= 0` with `A^T y >= c` and `b.y = c.x`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    width: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs `c_j - z_j`.
    reduced: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(lp: &PackingLp) -> Self {
        let m = lp.rows.len();
        let width = lp.columns + m;
        let rows = lp
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut dense = vec![Rational::zero(); width];
                for (j, a) in row {
                    dense[*j] += a;
                }
                dense[lp.columns + i] = Rational::from_integer(1.into());
                dense
            })
            .collect();
        let mut reduced = lp.objective.clone();
        reduced.resize(width, Rational::zero());
        Tableau {
            width,
            rows,
            rhs: lp.rhs.clone(),
            reduced,
            value: Rational::zero(),
            basis: (lp.columns..width).collect(),
        }
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in 0..self.width {
            if self.reduced[j].is_positive() {
                if bland {
                    return Some(j);
                }
                if best.is_none_or(|b| self.reduced[j] > self.reduced[b]) {
                    best = Some(j);
                }
            }
        }
        best
    }

    /// Minimum ratio row; ties go to the lowest basic variable index.
    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[col];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            let better = match &best {
                None => true,
                Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for a in self.rows[row].iter_mut().filter(|a| !a.is_zero()) {
            *a *= &inv;
        }
        self.rhs[row] *= &inv;
        let support: Vec<usize> = (0..self.width).filter(|&j| !self.rows[row][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let pivot_rhs = self.rhs[row].clone();
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for &j in &support {
                other[j] -= &factor * &pivot_row[j];
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.reduced[col].is_zero() {
            let factor = self.reduced[col].clone();
            for &j in &support {
                self.reduced[j] -= &factor * &pivot_row[j];
            }
            self.value += &factor * &pivot_rhs;
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }
}

pub fn solve(lp: &PackingLp) -> SimplexSolution {
    assert!(lp.rhs.iter().all(|b| !b.is_negative()), "slack basis needs b >= 0");
    let mut t = Tableau::new(lp);
    let mut pivots = 0;
    let mut degenerate_run = 0;
    let mut bland = false;
    let status = loop {
        let Some(col) = t.entering(bland) else {
            break SimplexStatus::Optimal;
        };
        let Some(row) = t.leaving(col) else {
            break SimplexStatus::Unbounded;
        };
        if t.rhs[row].is_zero() {
            degenerate_run += 1;
            if degenerate_run > DEGENERATE_RUN_LIMIT {
                bland = true;
            }
        } else {
            degenerate_run = 0;
        }
        t.pivot(row, col);
        pivots += 1;
    };
    let mut primal = vec![Rational::zero(); lp.columns];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < lp.columns {
            primal[b] = t.rhs[i].clone();
        }
    }
    let dual = (0..lp.rows.len()).map(|i| -&t.reduced[lp.columns + i]).collect();
    SimplexSolution {
        status,
        value: t.value,
        primal,
        dual,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lp(rows: &[&[i64]], rhs: &[i64], obj: &[i64]) -> PackingLp {
        PackingLp {
            columns: obj.len(),
            rows: rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, a)| **a != 0).map(|(j, &a)| (j, ratio(a, 1))).collect())
                .collect(),
            rhs: rhs.iter().map(|&b| ratio(b, 1)).collect(),
            objective: obj.iter().map(|&c| ratio(c, 1)).collect(),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y; x <= 4; 2y <= 12; 3x + 2y <= 18  -> (2, 6), 36
        let sol = solve(&lp(&[&[1, 0], &[0, 2], &[3, 2]], &[4, 12, 18], &[3, 5]));
        assert_eq!(sol.status, SimplexStatus::Optimal);
        assert_eq!(sol.value, int(36));
        assert_eq!(sol.primal, vec![int(2), int(6)]);
        assert_eq!(sol.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn fractional_matching_of_triangle() {
        // edges of a triangle packed by vertex capacity 1: value 3/2
        let sol = solve(&lp(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]], &[1, 1, 1], &[1, 1, 1]));
        assert_eq!(sol.value, ratio(3, 2));
        assert!(sol.dual.iter().all(|y| *y == ratio(1, 2)));
    }

    #[test]
    fn unbounded() {
        let sol = solve(&lp(&[&[1, -1]], &[1], &[0, 1]));
        assert_eq!(sol.status, SimplexStatus::Unbounded);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook rule; objective scaled by 4.
        let sol = solve(&lp(
            &[&[1, -32, -4, 36], &[1, -24, -1, 6], &[0, 0, 1, 0]],
            &[0, 0, 1],
            &[3, -80, 2, -24],
        ));
        assert_eq!(sol.status, SimplexStatus::Optimal);
        assert_eq!(sol.value, int(5));
    }
}
