//! Bad-triple density tables for the interval-partition labelings.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::labeling::{cost, ConstructionKind, Label};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityRow {
    pub n: usize,
    pub bad: u64,
    pub bad_fraction: Rational,
    pub limit: Rational,
    /// Measured fraction minus the limit.
    pub gap: Rational,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    bad: u64,
    bad_fraction: String,
    bad_fraction_f64: f64,
    limit: String,
    limit_f64: f64,
    gap: String,
    gap_f64: f64,
}

/// One row per `n`, computed in parallel and returned in input order.
pub fn density_table(kind: ConstructionKind, ns: &[usize], k: Label) -> Result<Vec<DensityRow>> {
    kind.check_parity(k)?;
    let limit = kind.limit(k);
    ns.par_iter()
        .map(|&n| {
            if n < 3 {
                return Err(Error::param(format!("density needs n >= 3, got {n}")));
            }
            let bad = cost(&kind.build(n, k)?).bad;
            let bad_fraction = Rational::new(bad.into(), binomial(n as u64, 3).into());
            Ok(DensityRow {
                n,
                bad,
                gap: &bad_fraction - &limit,
                bad_fraction,
                limit: limit.clone(),
            })
        })
        .collect()
}

/// Exact `p/q` columns with `_f64` companions; the rational columns are
/// authoritative.
pub fn write_density_csv(rows: &[DensityRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(CsvRow {
            n: row.n,
            bad: row.bad,
            bad_fraction: rational::format(&row.bad_fraction),
            bad_fraction_f64: rational::to_f64(&row.bad_fraction),
            limit: rational::format(&row.limit),
            limit_f64: rational::to_f64(&row.limit),
            gap: rational::format(&row.gap),
            gap_f64: rational::to_f64(&row.gap),
        })
        .map_err(|e| Error::Format(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_density_csv(input: impl Read) -> Result<Vec<DensityRow>> {
    csv::Reader::from_reader(input)
        .deserialize::<CsvRow>()
        .map(|rec| {
            let row = rec.map_err(|e| Error::Format(e.to_string()))?;
            Ok(DensityRow {
                n: row.n,
                bad: row.bad,
                bad_fraction: rational::parse(&row.bad_fraction)?,
                limit: rational::parse(&row.limit)?,
                gap: rational::parse(&row.gap)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn examples() {
        let odd = density_table(ConstructionKind::Odd, &[120], 3).unwrap();
        assert_eq!(odd[0].bad, 68440);
        assert!((rational::to_f64(&odd[0].bad_fraction) - 0.2436).abs() < 1e-4);
        assert_eq!(odd[0].limit, ratio(1, 4));

        for n in [3, 7, 20] {
            let all = density_table(ConstructionKind::Odd, &[n], 1).unwrap();
            assert_eq!((all[0].bad_fraction.clone(), all[0].limit.clone()), (int(1), int(1)));
        }

        let even = density_table(ConstructionKind::Even, &[4], 2).unwrap();
        assert_eq!(even[0].bad_fraction, ratio(1, 4));
        assert_eq!(even[0].gap, ratio(-1, 4));

        assert!(density_table(ConstructionKind::Even, &[10], 3).is_err());
    }

    #[test]
    fn csv_round_trip_keeps_order() {
        let rows = density_table(ConstructionKind::Even, &[12, 5, 30], 4).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![12, 5, 30]);
        let mut buf = Vec::new();
        write_density_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,bad,bad_fraction,bad_fraction_f64,limit,limit_f64,gap,gap_f64\n"));
        assert_eq!(read_density_csv(buf.as_slice()).unwrap(), rows);
    }
}
