//! Necessary condition for NAE-3SAT assignments.
//!
//! With `f_js ∈ {+1, −1, 0}` the adjacency entries of an exact 3-CNF whose
//! clauses use three distinct variables, and `r_j = Σ_s f_js·x_s`, an
//! assignment leaves every clause with one or two true literals exactly when
//! `m + Σ_{s<s'} μ_ss'·x_s·x_s' = 0`, where `μ_ss' = Σ_j f_js·f_js'`.
//! Equivalently `3σ − Σ_j σ_j² = 2m`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::assignment::{Assignment, AssignmentError};
use crate::cnf::Formula;
use crate::sigma::sigma_per_clause;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NaeError {
    #[error("clause {clause} mentions a variable more than once")]
    RepeatedVariable { clause: usize },
    #[error("clause {clause} has {width} literals, expected 3")]
    NotThreeCnf { clause: usize, width: usize },
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

/// Pairwise sums `μ_ss' = Σ_j f_js·f_js'` over variable pairs that share a
/// clause. Pairs that never co-occur are absent and read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuMatrix {
    n: usize,
    /// Keyed by `(s, s')` with `s < s'`.
    entries: BTreeMap<(usize, usize), i64>,
}

impl MuMatrix {
    pub fn get(&self, s: usize, t: usize) -> i64 {
        let key = if s < t { (s, t) } else { (t, s) };
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Co-occurring pairs `(s, s', μ)` with `s < s'`, 0-based.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(s, t), &v)| (s, t, v))
    }

    /// `Σ_{s<s'} μ_ss'·x_s·x_s'`.
    pub fn quadratic_form(&self, x: &Assignment) -> i64 {
        self.pairs()
            .map(|(s, t, v)| v * x.sign(s) * x.sign(t))
            .sum()
    }

    /// Upper-triangle CSV, `s,t,mu` with 1-based variables.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,t,mu\n");
        for (s, t, v) in self.pairs() {
            let _ = writeln!(out, "{},{},{}", s + 1, t + 1, v);
        }
        out
    }
}

/// Rejects clauses that repeat a variable in either polarity.
pub fn mu_matrix(f: &Formula) -> Result<MuMatrix, NaeError> {
    let mut entries = BTreeMap::new();
    for (j, clause) in f.clauses().iter().enumerate() {
        if clause.has_repeated_var() {
            return Err(NaeError::RepeatedVariable { clause: j + 1 });
        }
        let lits = clause.lits();
        for (i, a) in lits.iter().enumerate() {
            for b in &lits[i + 1..] {
                let (lo, hi) = if a.var() < b.var() { (a, b) } else { (b, a) };
                let sign = if lo.is_positive() == hi.is_positive() {
                    1
                } else {
                    -1
                };
                *entries.entry((lo.var(), hi.var())).or_insert(0) += sign;
            }
        }
    }
    Ok(MuMatrix {
        n: f.num_vars(),
        entries,
    })
}

/// Evaluates the NAE condition for many assignments against one formula.
#[derive(Debug, Clone)]
pub struct NaeFilter<'f> {
    formula: &'f Formula,
    mu: MuMatrix,
}

impl<'f> NaeFilter<'f> {
    pub fn new(f: &'f Formula) -> Result<Self, NaeError> {
        for (j, c) in f.clauses().iter().enumerate() {
            if c.width() != 3 {
                return Err(NaeError::NotThreeCnf {
                    clause: j + 1,
                    width: c.width(),
                });
            }
        }
        Ok(NaeFilter {
            formula: f,
            mu: mu_matrix(f)?,
        })
    }

    pub fn mu(&self) -> &MuMatrix {
        &self.mu
    }

    /// `m + Σ_{s<s'} μ_ss'·x_s·x_s' = 0`.
    pub fn condition(&self, x: &Assignment) -> Result<bool, NaeError> {
        x.check_len(self.formula.num_vars())?;
        let m = self.formula.num_clauses() as i64;
        let holds = m + self.mu.quadratic_form(x) == 0;
        debug_assert_eq!(Ok(holds), sum_of_squares_condition(self.formula, x));
        Ok(holds)
    }

    /// Keeps the assignments satisfying [`NaeFilter::condition`].
    pub fn filter<I>(&self, xs: I) -> Result<Vec<Assignment>, NaeError>
    where
        I: IntoIterator<Item = Assignment>,
    {
        let mut kept = Vec::new();
        for x in xs {
            if self.condition(&x)? {
                kept.push(x);
            }
        }
        Ok(kept)
    }
}

/// `3σ − Σ_j σ_j² = 2m`, evaluated from per-clause true-literal counts.
pub fn sum_of_squares_condition(f: &Formula, x: &Assignment) -> Result<bool, NaeError> {
    let per_clause = sigma_per_clause(f, x).map_err(|e| match e {
        crate::sigma::SigmaError::Assignment(a) => NaeError::Assignment(a),
        other => unreachable!("sigma_per_clause only fails on length: {other}"),
    })?;
    let sigma: i64 = per_clause.iter().map(|&c| c as i64).sum();
    let squares: i64 = per_clause.iter().map(|&c| (c * c) as i64).sum();
    Ok(3 * sigma - squares == 2 * f.num_clauses() as i64)
}

pub fn nae_condition(f: &Formula, x: &Assignment) -> Result<bool, NaeError> {
    NaeFilter::new(f)?.condition(x)
}

pub fn nae_filter_candidates<I>(f: &Formula, xs: I) -> Result<Vec<Assignment>, NaeError>
where
    I: IntoIterator<Item = Assignment>,
{
    NaeFilter::new(f)?.filter(xs)
}
