//! Exhaustive ground truth over all `2^n` assignments.
//!
//! Nothing here uses occurrence statistics or the σ machinery: every query
//! re-evaluates each clause literal by literal. The assignment space is cut
//! into contiguous index blocks evaluated in parallel and merged in index
//! order, so results are listed in ascending binary encoding.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::assignment::Assignment;
use crate::cnf::Formula;
use crate::decide::Partition;

pub const DEFAULT_ORACLE_LIMIT: usize = 20;

const BLOCK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} variables exceed the oracle limit {limit}")]
    TooManyVariables { n: usize, limit: usize },
    #[error("formula is not an exact 3-CNF")]
    NotExact3Cnf,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub witnesses: Vec<Assignment>,
    pub enumerated: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteExtremes {
    pub min: usize,
    pub max: usize,
    pub min_achievers: Vec<Assignment>,
    pub max_achievers: Vec<Assignment>,
}

fn check_limit(f: &Formula, limit: usize) -> Result<(), OracleError> {
    let n = f.num_vars();
    if n > limit || n > 40 {
        return Err(OracleError::TooManyVariables { n, limit });
    }
    Ok(())
}

fn true_literals(clause: &crate::cnf::Clause, x: &Assignment) -> usize {
    let mut t = 0;
    for lit in clause.lits() {
        let value = x.value(lit.var());
        if (lit.is_positive() && value) || (!lit.is_positive() && !value) {
            t += 1;
        }
    }
    t
}

fn blocks(n: usize) -> impl IndexedParallelIterator<Item = std::ops::Range<u64>> {
    let total = 1u64 << n;
    let count = total.div_ceil(BLOCK) as usize;
    (0..count).into_par_iter().map(move |b| {
        let b = b as u64;
        b * BLOCK..((b + 1) * BLOCK).min(total)
    })
}

/// All assignments satisfying `keep`, in ascending binary encoding.
fn enumerate<P>(f: &Formula, keep: P) -> OracleResult
where
    P: Fn(&Assignment) -> bool + Sync,
{
    let start = Instant::now();
    let n = f.num_vars();
    let witnesses: Vec<Assignment> = blocks(n)
        .map(|range| {
            range
                .map(|i| Assignment::from_index(i, n))
                .filter(|x| keep(x))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    OracleResult {
        witnesses,
        enumerated: 1u64 << n,
        elapsed: start.elapsed(),
    }
}

/// Every assignment whose clause profile equals `p`.
pub fn brute_partsat(
    f: &Formula,
    p: &Partition,
    limit: usize,
) -> Result<OracleResult, OracleError> {
    check_limit(f, limit)?;
    let mu = p.mu();
    Ok(enumerate(f, |x| {
        let mut nu = vec![0usize; mu.len()];
        for clause in f.clauses() {
            let t = true_literals(clause, x);
            if t >= nu.len() {
                return false;
            }
            nu[t] += 1;
        }
        nu == mu
    }))
}

/// Every assignment satisfying all clauses.
pub fn brute_sat(f: &Formula, limit: usize) -> Result<OracleResult, OracleError> {
    check_limit(f, limit)?;
    Ok(enumerate(f, |x| {
        f.clauses().iter().all(|c| true_literals(c, x) > 0)
    }))
}

/// Every assignment leaving each clause with one or two true literals.
pub fn brute_nae(f: &Formula, limit: usize) -> Result<OracleResult, OracleError> {
    if f.clauses().iter().any(|c| c.lits().len() != 3) || f.num_clauses() == 0 {
        return Err(OracleError::NotExact3Cnf);
    }
    check_limit(f, limit)?;
    Ok(enumerate(f, |x| {
        f.clauses()
            .iter()
            .all(|c| matches!(true_literals(c, x), 1 | 2))
    }))
}

/// Exact minimum and maximum of the true-literal total with all achievers.
pub fn brute_extremes(f: &Formula, limit: usize) -> Result<BruteExtremes, OracleError> {
    check_limit(f, limit)?;
    let n = f.num_vars();
    let total = |x: &Assignment| -> usize { f.clauses().iter().map(|c| true_literals(c, x)).sum() };
    let partial: Vec<BruteExtremes> = blocks(n)
        .map(|range| {
            let mut acc = BruteExtremes {
                min: usize::MAX,
                max: 0,
                min_achievers: Vec::new(),
                max_achievers: Vec::new(),
            };
            for i in range {
                let x = Assignment::from_index(i, n);
                let s = total(&x);
                if s < acc.min {
                    acc.min = s;
                    acc.min_achievers.clear();
                }
                if s == acc.min {
                    acc.min_achievers.push(x.clone());
                }
                if s > acc.max || acc.max_achievers.is_empty() {
                    acc.max = s;
                    acc.max_achievers.clear();
                }
                if s == acc.max {
                    acc.max_achievers.push(x);
                }
            }
            acc
        })
        .collect();
    let min = partial.iter().map(|b| b.min).min().unwrap_or(0);
    let max = partial.iter().map(|b| b.max).max().unwrap_or(0);
    let mut out = BruteExtremes {
        min,
        max,
        min_achievers: Vec::new(),
        max_achievers: Vec::new(),
    };
    for b in partial {
        if b.min == min {
            out.min_achievers.extend(b.min_achievers);
        }
        if b.max == max {
            out.max_achievers.extend(b.max_achievers);
        }
    }
    Ok(out)
}
