//! Sum satisfiability: the number of true literals of a formula under an
//! assignment, its extreme values and the assignments attaining them.
//!
//! Because every literal belongs to exactly one variable, σ separates into a
//! per-variable sum: a true variable contributes its positive occurrence
//! count, a false one its negative count. Everything below rests on that.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::assignment::{Assignment, AssignmentError};
use crate::cnf::{Formula, OccurrenceStats};

/// Largest variable count enumerated exhaustively by default.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SigmaError {
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
    #[error("characteristic function overflows at a = {a}")]
    Range { a: f64 },
    #[error("{n} variables exceed the enumeration limit {limit}")]
    TooManyVariables { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extreme {
    Min,
    Max,
}

/// Total number of true literals of `f` under `x`.
pub fn sigma(f: &Formula, x: &Assignment) -> Result<usize, SigmaError> {
    x.check_len(f.num_vars())?;
    let total = f
        .clauses()
        .iter()
        .map(|c| c.lits().iter().filter(|l| l.eval(x.value(l.var()))).count())
        .sum();
    debug_assert_eq!(Some(total), sigma_by_variables(f.stats(), x));
    Ok(total)
}

/// Variable-wise evaluation of σ from occurrence counts alone.
pub fn sigma_by_variables(stats: &OccurrenceStats, x: &Assignment) -> Option<usize> {
    if x.len() != stats.n {
        return None;
    }
    Some(
        (0..stats.n)
            .map(|s| {
                if x.value(s) {
                    stats.pos[s]
                } else {
                    stats.neg[s]
                }
            })
            .sum(),
    )
}

/// Number of true literals in each clause.
pub fn sigma_per_clause(f: &Formula, x: &Assignment) -> Result<Vec<usize>, SigmaError> {
    x.check_len(f.num_vars())?;
    Ok(f.clauses()
        .iter()
        .map(|c| c.lits().iter().filter(|l| l.eval(x.value(l.var()))).count())
        .collect())
}

/// The range of σ over all assignments together with canonical extremal
/// assignments. Degenerate variables (equal positive and negative counts) are
/// set to false in both base assignments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaExtremes {
    pub sigma_min: usize,
    pub sigma_max: usize,
    pub x_min_base: Assignment,
    pub x_max_base: Assignment,
    /// 0-based indices of degenerate variables, ascending.
    pub degenerate_vars: Vec<usize>,
}

impl SigmaExtremes {
    pub fn value(&self, which: Extreme) -> usize {
        match which {
            Extreme::Min => self.sigma_min,
            Extreme::Max => self.sigma_max,
        }
    }

    pub fn base(&self, which: Extreme) -> &Assignment {
        match which {
            Extreme::Min => &self.x_min_base,
            Extreme::Max => &self.x_max_base,
        }
    }

    pub fn n_eq(&self) -> usize {
        self.degenerate_vars.len()
    }

    /// `2^n_eq`, the number of assignments attaining each extreme, if it fits in a `u64`.
    pub fn achiever_count(&self) -> Option<u64> {
        1u64.checked_shl(u32::try_from(self.n_eq()).ok()?)
    }
}

pub fn sigma_extremes(f: &Formula) -> SigmaExtremes {
    sigma_extremes_from_stats(f.stats())
}

/// Single pass over the per-variable counts.
pub fn sigma_extremes_from_stats(stats: &OccurrenceStats) -> SigmaExtremes {
    let n = stats.n;
    let mut sigma_min = 0;
    let mut sigma_max = 0;
    let mut x_min = Vec::with_capacity(n);
    let mut x_max = Vec::with_capacity(n);
    let mut degenerate_vars = Vec::new();
    for (s, (&p, &q)) in stats.pos.iter().zip(&stats.neg).enumerate() {
        sigma_min += p.min(q);
        sigma_max += p.max(q);
        if p == q {
            degenerate_vars.push(s);
        }
        // minimum: satisfy the rarer polarity; maximum: the commoner one
        x_min.push(p < q);
        x_max.push(p > q);
    }
    SigmaExtremes {
        sigma_min,
        sigma_max,
        x_min_base: Assignment::new(x_min),
        x_max_base: Assignment::new(x_max),
        degenerate_vars,
    }
}

/// Every assignment attaining the chosen extreme, in ascending binary encoding.
pub fn achievers(f: &Formula, which: Extreme) -> Achievers {
    let ext = sigma_extremes(f);
    Achievers::new(ext.base(which).clone(), ext.degenerate_vars)
}

/// Odometer over the sign combinations of the degenerate variables, starting
/// from a base assignment in which all of them are false.
#[derive(Debug, Clone)]
pub struct Achievers {
    current: Assignment,
    free_vars: Vec<usize>,
    emitted: u64,
    done: bool,
}

impl Achievers {
    pub fn new(base: Assignment, free_vars: Vec<usize>) -> Self {
        debug_assert!(free_vars.iter().all(|&s| !base.value(s)));
        Achievers {
            current: base,
            free_vars,
            emitted: 0,
            done: false,
        }
    }

    fn total(&self) -> Option<u64> {
        1u64.checked_shl(u32::try_from(self.free_vars.len()).ok()?)
    }
}

impl Iterator for Achievers {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.emitted += 1;
        self.done = true;
        for &s in &self.free_vars {
            if self.current.value(s) {
                self.current.set(s, false);
            } else {
                self.current.set(s, true);
                self.done = false;
                break;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match self
            .total()
            .and_then(|t| usize::try_from(t - self.emitted).ok())
        {
            Some(left) => (left, Some(left)),
            None => (usize::MAX, None),
        }
    }
}

/// `2^-n · Σ_x e^{a·σ(x)}`, evaluated as a product over variables in log space.
pub fn char_function(f: &Formula, a: f64) -> Result<f64, SigmaError> {
    if !a.is_finite() {
        return Err(SigmaError::Range { a });
    }
    let value = ln_char_function(f.stats(), a).exp();
    if !value.is_finite() {
        return Err(SigmaError::Range { a });
    }
    #[cfg(debug_assertions)]
    if let Some(closed) = char_function_read3_closed_form(f, a) {
        debug_assert!(
            !closed.is_finite() || ((value - closed) / closed).abs() < 1e-9,
            "product form {value} disagrees with READ-3 form {closed}"
        );
    }
    Ok(value)
}

/// Natural log of the characteristic function.
pub fn ln_char_function(stats: &OccurrenceStats, a: f64) -> f64 {
    let per_var: f64 = stats
        .pos
        .iter()
        .zip(&stats.neg)
        .map(|(&p, &q)| log_add_exp(a * p as f64, a * q as f64))
        .sum();
    per_var - stats.n as f64 * std::f64::consts::LN_2
}

/// Closed form `e^{a·n}·((e^a+1)/2)^n·(2cosh a − 1)^{n_pure}`, valid only when
/// every variable has degree exactly 3. Returns `None` otherwise.
pub fn char_function_read3_closed_form(f: &Formula, a: f64) -> Option<f64> {
    let st = f.stats();
    if st.n == 0 || !(0..st.n).all(|s| st.degree(s) == 3) {
        return None;
    }
    let n = st.n as f64;
    let ln = a * n
        + n * (log_add_exp(a, 0.0) - std::f64::consts::LN_2)
        + st.n_pure as f64 * (2.0 * a.cosh() - 1.0).ln();
    Some(ln.exp())
}

fn log_add_exp(u: f64, v: f64) -> f64 {
    let hi = u.max(v);
    let lo = u.min(v);
    hi + (lo - hi).exp().ln_1p()
}

/// Number of assignments per σ value over all `2^n` assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaHistogram {
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
}

/// Exhaustive σ histogram. Walks the assignments in reflected Gray-code order
/// so each step flips one variable and updates σ in constant time.
pub fn sigma_histogram(f: &Formula, limit: usize) -> Result<SigmaHistogram, SigmaError> {
    let st = f.stats();
    let n = st.n;
    if n > limit || n >= 64 {
        return Err(SigmaError::TooManyVariables { n, limit });
    }
    let mut bins = vec![0u64; st.total + 1];
    let mut value = vec![false; n];
    let mut sigma: usize = st.neg.iter().sum();
    bins[sigma] += 1;
    for step in 1u64..(1u64 << n) {
        let s = step.trailing_zeros() as usize;
        value[s] = !value[s];
        if value[s] {
            sigma = sigma + st.pos[s] - st.neg[s];
        } else {
            sigma = sigma + st.neg[s] - st.pos[s];
        }
        bins[sigma] += 1;
    }
    let counts = bins
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect();
    Ok(SigmaHistogram { n, counts })
}

/// One row of a histogram-versus-binomial comparison: the count at `σ = n + k`
/// against `C(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialRow {
    pub k: usize,
    pub sigma: usize,
    pub observed: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialCheck {
    pub rows: Vec<BinomialRow>,
    /// σ values outside `n..=2n` that occurred.
    pub stray_values: Vec<usize>,
    pub pass: bool,
}

impl SigmaHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_sigma(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_sigma(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn count(&self, sigma: usize) -> u64 {
        self.counts.get(&sigma).copied().unwrap_or(0)
    }

    /// Compares the counts at `n + k` with `C(n, k)` for `k = 0..=n`.
    pub fn binomial_check(&self) -> BinomialCheck {
        let n = self.n;
        let rows: Vec<BinomialRow> = (0..=n)
            .map(|k| BinomialRow {
                k,
                sigma: n + k,
                observed: self.count(n + k),
                expected: binomial(n as u64, k as u64),
            })
            .collect();
        let stray_values: Vec<usize> = self
            .counts
            .keys()
            .copied()
            .filter(|&s| s < n || s > 2 * n)
            .collect();
        let pass = stray_values.is_empty() && rows.iter().all(|r| r.observed == r.expected);
        BinomialCheck {
            rows,
            stray_values,
            pass,
        }
    }

    /// `sigma,count` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sigma,count\n");
        for (s, c) in &self.counts {
            let _ = writeln!(out, "{s},{c}");
        }
        out
    }
}

impl Serialize for SigmaHistogram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            sigma: usize,
            count: u64,
        }
        #[derive(Serialize)]
        struct Doc {
            n: usize,
            total: u64,
            counts: Vec<Row>,
        }
        Doc {
            n: self.n,
            total: self.total(),
            counts: self
                .counts
                .iter()
                .map(|(&sigma, &count)| Row { sigma, count })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}
