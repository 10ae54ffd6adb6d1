//! Range scans: record table for `T(n)` and conjecture checks.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::parallel::try_map_range;
use crate::sieve::SpfSieve;

use super::min_length::min_length_of;
use super::solve_system;

/// `g(n)`, its nullity and `T(n)` from a single elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analysis {
    pub n: u64,
    pub g: u64,
    pub nullity: usize,
    pub t: usize,
}

impl Analysis {
    pub fn compute(n: u64, sieve: &SpfSieve) -> Result<Self> {
        let solved = solve_system(n, sieve)?;
        let t = min_length_of(&solved, sieve);
        Ok(Self {
            n,
            g: solved.result.g,
            nullity: solved.result.nullity,
            t,
        })
    }
}

/// Least `n` in `1..=limit` attaining each value of `T`.
pub fn scan_records(limit: u64, sieve: &SpfSieve) -> Result<BTreeMap<usize, u64>> {
    let rows = try_map_range(1..=limit, |n| Analysis::compute(n, sieve))?;
    Ok(records_from(&rows))
}

pub fn records_from(rows: &[Analysis]) -> BTreeMap<usize, u64> {
    let mut records = BTreeMap::new();
    for a in rows {
        let e = records.entry(a.t).or_insert(a.n);
        *e = (*e).min(a.n);
    }
    records
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingEntry {
    pub n: u64,
    pub prime_or_six: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub limit: u64,
    /// Every `n` with `g(n) = 2n`.
    pub doubling: Vec<DoublingEntry>,
    /// Largest `T(n)` seen and the least `n` attaining it.
    pub max_t: Option<(usize, u64)>,
    /// `n` with `T(n) = 2`; should stay empty.
    pub t_equals_two: Vec<u64>,
    /// `n` where `g(n) = 2n` disagrees with "n is a prime above 3 or n = 6".
    pub counterexamples: Vec<u64>,
}

impl ConjectureReport {
    pub fn from_rows(limit: u64, rows: &[Analysis], sieve: &SpfSieve) -> Self {
        let expected_doubling = |n: u64| n == 6 || (n > 3 && sieve.is_prime(n));
        let mut report = ConjectureReport {
            limit,
            doubling: Vec::new(),
            max_t: None,
            t_equals_two: Vec::new(),
            counterexamples: Vec::new(),
        };
        for a in rows {
            let doubles = a.g == 2 * a.n;
            if doubles {
                report.doubling.push(DoublingEntry {
                    n: a.n,
                    prime_or_six: a.n == 6 || sieve.is_prime(a.n),
                });
            }
            if doubles != expected_doubling(a.n) {
                report.counterexamples.push(a.n);
            }
            if a.t == 2 {
                report.t_equals_two.push(a.n);
            }
            if report.max_t.is_none_or(|(t, _)| a.t > t) {
                report.max_t = Some((a.t, a.n));
            }
        }
        report
    }

    pub fn holds(&self) -> bool {
        self.t_equals_two.is_empty() && self.counterexamples.is_empty()
    }
}

/// Scan `1..=limit` for `g(n) = 2n` and for the shape of `T`.
pub fn scan_conjectures(limit: u64, sieve: &SpfSieve) -> Result<ConjectureReport> {
    let rows = try_map_range(1..=limit, |n| Analysis::compute(n, sieve))?;
    Ok(ConjectureReport::from_rows(limit, &rows, sieve))
}
