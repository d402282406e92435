//! m-biased vertex sets and the counting function `h(n, t, m)`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, subsets};
use crate::error::{Error, Result};
use crate::hypergraph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Formula,
    Enumerate,
}

pub(crate) fn require_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::param(format!("n={n} must be even")));
    }
    Ok(())
}

/// Number of elements of a sorted set in `1..=x` and in `n-x+1..=n`.
fn outer_counts(set: &[Vertex], n: usize, x: usize) -> (usize, usize) {
    let left = set.iter().filter(|&&v| (v as usize) <= x).count();
    let right = set.iter().filter(|&&v| (v as usize) > n - x).count();
    (left, right)
}

/// Whether some split `(X, Y, Z)` of `[n]` with `|X| = |Z|` puts `m`
/// elements of `set` on the given side and none on the other.
pub fn is_biased(set: &[Vertex], n: usize, m: usize, side: Side) -> Result<bool> {
    require_even(n)?;
    Ok((0..=n / 2).any(|x| {
        let (left, right) = outer_counts(set, n, x);
        match side {
            Side::Left => left == m && right == 0,
            Side::Right => right == m && left == 0,
        }
    }))
}

/// Left- or right-biased.
pub fn is_m_biased(set: &[Vertex], n: usize, m: usize) -> Result<bool> {
    Ok(is_biased(set, n, m, Side::Left)? || is_biased(set, n, m, Side::Right)?)
}

fn check_h_params(n: usize, t: usize, m: usize) -> Result<()> {
    require_even(n)?;
    if m < 1 || m > t || t > n {
        return Err(Error::param(format!("h(n={n}, t={t}, m={m}) needs 1 <= m <= t <= n")));
    }
    Ok(())
}

/// Number of m-left-biased t-subsets of `[n]`.
pub fn h_count(n: usize, t: usize, m: usize, mode: CountMode) -> Result<u64> {
    check_h_params(n, t, m)?;
    Ok(match mode {
        CountMode::Formula => h_formula(n, t, m),
        CountMode::Enumerate => {
            subsets(n, t).filter(|s| is_biased(s, n, m, Side::Left).unwrap()).count() as u64
        }
    })
}

/// Sum over the index `k` of the m-th vertex: `C(k-1, m-1) C(n-2k, t-m)`.
fn h_formula(n: usize, t: usize, m: usize) -> u64 {
    (m..=n / 2)
        .map(|k| binomial(k as u64 - 1, m as u64 - 1) * binomial((n - 2 * k) as u64, (t - m) as u64))
        .sum()
}

/// `h(n, t, m)`, taken as 0 when `t < m` (no t-set has m elements anywhere).
pub(crate) fn h_or_zero(n: usize, t: usize, m: usize) -> u64 {
    if t < m {
        0
    } else {
        h_formula(n, t, m)
    }
}

/// Whether the set contains some `u` together with its reflection `n+1-u`.
pub fn has_reflection_pair(set: &[Vertex], n: usize) -> bool {
    set.iter().any(|&u| set.binary_search(&(n as Vertex + 1 - u)).is_ok_and(|i| set[i] != u))
}

/// Enumerated split of the r-subsets of `[n]` into degenerate sets (with a
/// reflection pair) and typical ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypicalSplit {
    pub degenerate: u64,
    pub typical: u64,
    pub typical_left_biased: u64,
}

pub fn typical_split(n: usize, r: usize, m: usize) -> Result<TypicalSplit> {
    require_even(n)?;
    let mut out = TypicalSplit {
        degenerate: 0,
        typical: 0,
        typical_left_biased: 0,
    };
    for s in subsets(n, r) {
        if has_reflection_pair(&s, n) {
            out.degenerate += 1;
        } else {
            out.typical += 1;
            if is_biased(&s, n, m, Side::Left)? {
                out.typical_left_biased += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::reflect_set;

    #[test]
    fn h_examples() {
        for mode in [CountMode::Formula, CountMode::Enumerate] {
            assert_eq!(h_count(2, 1, 1, mode).unwrap(), 1);
            assert_eq!(h_count(6, 3, 2, mode).unwrap(), 2);
            assert_eq!(h_count(6, 2, 2, mode).unwrap(), 3);
        }
    }

    #[test]
    fn h_rejects_bad_parameters() {
        assert!(h_count(5, 2, 1, CountMode::Formula).is_err());
        assert!(h_count(6, 2, 3, CountMode::Formula).is_err());
        assert!(h_count(6, 2, 0, CountMode::Enumerate).is_err());
    }

    #[test]
    fn biased_examples() {
        assert!(is_biased(&[1, 2, 3], 6, 2, Side::Left).unwrap());
        assert!(!is_biased(&[1, 2, 5], 6, 2, Side::Left).unwrap());
        assert!(is_biased(&[1, 2, 5], 7, 2, Side::Left).is_err());
    }

    #[test]
    fn bias_is_reflection_symmetric() {
        for n in [4usize, 6, 8] {
            for t in 1..=4 {
                for s in subsets(n, t) {
                    let mirrored = reflect_set(&s, n);
                    for m in 0..=t {
                        assert_eq!(
                            is_biased(&s, n, m, Side::Left).unwrap(),
                            is_biased(&mirrored, n, m, Side::Right).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn typical_sets_split_evenly() {
        for n in (2..=12).step_by(2) {
            for r in 1..=4.min(n) {
                for m in 1..=r {
                    let split = typical_split(n, r, m).unwrap();
                    let half = binomial(n as u64 / 2, r as u64);
                    assert_eq!(split.typical, (1 << r) * half);
                    assert_eq!(split.degenerate + split.typical, binomial(n as u64, r as u64));
                    assert_eq!(split.typical_left_biased, (1 << (r - m)) * half, "n={n} r={r} m={m}");
                }
            }
        }
        assert!(has_reflection_pair(&[1, 3, 6], 6));
        assert!(!has_reflection_pair(&[1, 2, 4], 6));
    }

    #[test]
    fn formula_matches_enumeration() {
        for n in (2..=16).step_by(2) {
            for t in 1..=5.min(n) {
                for m in 1..=t {
                    assert_eq!(
                        h_count(n, t, m, CountMode::Formula).unwrap(),
                        h_count(n, t, m, CountMode::Enumerate).unwrap(),
                        "h({n},{t},{m})"
                    );
                }
            }
        }
    }
}
