//! Deciding PART-SAT instances whose target literal total sits at an extreme
//! of σ.
//!
//! A partition `(μ_0, …, μ_k)` asks for an assignment under which exactly
//! `μ_α` clauses hold `α` true literals. Any such assignment has
//! `σ = Σ α·μ_α`. When that total equals σ_min or σ_max, the only candidates
//! are the `2^n_eq` achievers of that extreme, so the instance is settled by
//! checking them. Totals outside `[σ_min, σ_max]` are unreachable. Totals
//! strictly inside the range are reported as inapplicable.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::assignment::{Assignment, AssignmentError};
use crate::cnf::Formula;
use crate::sigma::{sigma_extremes, Extreme, SigmaExtremes};

/// Default cap on the number of candidate assignments `decide` will check.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition sums to {sum}, formula has {m} clauses")]
    SumMismatch { sum: usize, m: usize },
    #[error("partition asks for {count} clauses with {alpha} true literals, but no clause is wider than {max_width}")]
    BeyondMaxWidth {
        alpha: usize,
        count: usize,
        max_width: usize,
    },
    #[error("invalid partition entry `{0}`")]
    InvalidEntry(String),
    #[error("l = {l} exceeds the narrowest clause width {min_width}")]
    ClauseTooNarrow { l: usize, min_width: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
    #[error("{n_eq} degenerate variables give 2^{n_eq} candidates, over the budget of {budget}")]
    BudgetExceeded { n_eq: usize, budget: u64 },
    #[error("formula is not an exact 3-CNF")]
    NotExact3Cnf,
}

/// Target clause-count profile `(μ_0, …, μ_k)` where `k` is the largest clause
/// width of the formula it was built for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    mu: Vec<usize>,
}

impl Partition {
    /// Validates `mu` against `f`. Short vectors are zero-padded to length
    /// `k + 1`; entries past `k` must be zero.
    pub fn for_formula(mut mu: Vec<usize>, f: &Formula) -> Result<Self, PartitionError> {
        let k = f.max_width();
        if let Some((alpha, &count)) = mu.iter().enumerate().skip(k + 1).find(|(_, &c)| c != 0) {
            return Err(PartitionError::BeyondMaxWidth {
                alpha,
                count,
                max_width: k,
            });
        }
        mu.resize(k + 1, 0);
        let sum: usize = mu.iter().sum();
        if sum != f.num_clauses() {
            return Err(PartitionError::SumMismatch {
                sum,
                m: f.num_clauses(),
            });
        }
        Ok(Partition { mu })
    }

    /// All `m` clauses with exactly `l` true literals.
    pub fn l_in_k(f: &Formula, l: usize) -> Result<Self, PartitionError> {
        let min_width = f.min_width();
        if f.num_clauses() > 0 && l > min_width {
            return Err(PartitionError::ClauseTooNarrow { l, min_width });
        }
        let mut mu = vec![0; l.max(f.max_width()) + 1];
        mu[l] = f.num_clauses();
        Partition::for_formula(mu, f)
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    /// `Σ α·μ_α`, the σ value any solution must have.
    pub fn target_total(&self) -> usize {
        self.mu.iter().enumerate().map(|(a, &c)| a * c).sum()
    }
}

/// One entry of a partition specification: a number or the clause count `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuEntry {
    Count(usize),
    AllClauses,
}

/// A partition described independently of any particular formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSpec {
    /// Explicit `μ` vector; `m` stands for the clause count.
    Mu(Vec<MuEntry>),
    /// `μ_l = m`.
    LInK(usize),
}

impl PartitionSpec {
    pub fn one_in_k() -> Self {
        PartitionSpec::LInK(1)
    }

    pub fn resolve(&self, f: &Formula) -> Result<Partition, PartitionError> {
        match self {
            PartitionSpec::LInK(l) => Partition::l_in_k(f, *l),
            PartitionSpec::Mu(entries) => {
                let m = f.num_clauses();
                let mu = entries
                    .iter()
                    .map(|e| match e {
                        MuEntry::Count(c) => *c,
                        MuEntry::AllClauses => m,
                    })
                    .collect();
                Partition::for_formula(mu, f)
            }
        }
    }
}

impl FromStr for PartitionSpec {
    type Err = PartitionError;

    /// Parses a comma-separated `μ` vector such as `0,m,0,0` or `{0,6,0,0,0}`.
    fn from_str(text: &str) -> Result<Self, PartitionError> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(text);
        inner
            .split(',')
            .map(|tok| match tok.trim() {
                "m" => Ok(MuEntry::AllClauses),
                t => t
                    .parse::<usize>()
                    .map(MuEntry::Count)
                    .map_err(|_| PartitionError::InvalidEntry(t.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PartitionSpec::Mu)
    }
}

/// Observed clause-count profile `(ν_0, …, ν_k)` under an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseProfile {
    pub nu: Vec<usize>,
}

impl ClauseProfile {
    /// `Σ α·ν_α`.
    pub fn total(&self) -> usize {
        self.nu.iter().enumerate().map(|(a, &c)| a * c).sum()
    }

    pub fn matches(&self, p: &Partition) -> bool {
        self.nu == p.mu
    }
}

pub fn clause_profile(f: &Formula, x: &Assignment) -> Result<ClauseProfile, AssignmentError> {
    x.check_len(f.num_vars())?;
    let mut nu = vec![0; f.max_width() + 1];
    for clause in f.clauses() {
        let t = clause
            .lits()
            .iter()
            .filter(|l| l.eval(x.value(l.var())))
            .count();
        nu[t] += 1;
    }
    Ok(ClauseProfile { nu })
}

/// Profile test with early exit once some bucket overflows.
fn profile_matches(f: &Formula, x: &Assignment, p: &Partition) -> bool {
    let mut nu = vec![0; p.mu.len()];
    for clause in f.clauses() {
        let t = clause
            .lits()
            .iter()
            .filter(|l| l.eval(x.value(l.var())))
            .count();
        nu[t] += 1;
        if nu[t] > p.mu[t] {
            return false;
        }
    }
    nu == p.mu
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoReason {
    TargetBelowMin,
    TargetAboveMax,
    AllCandidatesFail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every matching candidate, in ascending binary encoding.
    Yes(Vec<Assignment>),
    No(NoReason),
    /// The target lies strictly between σ_min and σ_max.
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub target: usize,
    pub sigma_min: usize,
    pub sigma_max: usize,
    pub n_eq: usize,
    /// The extreme whose achievers were checked, if any.
    pub extreme: Option<Extreme>,
    pub candidates_checked: u64,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self.verdict, Verdict::No(_))
    }

    pub fn witnesses(&self) -> &[Assignment] {
        match &self.verdict {
            Verdict::Yes(w) => w,
            _ => &[],
        }
    }

    pub fn verdict_name(&self) -> &'static str {
        match self.verdict {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

impl Serialize for Decision {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            verdict: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            reason: Option<NoReason>,
            target: usize,
            sigma_min: usize,
            sigma_max: usize,
            n_eq: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            extreme: Option<Extreme>,
            witnesses: &'a [Assignment],
            candidates_checked: u64,
        }
        Doc {
            verdict: self.verdict_name(),
            reason: match self.verdict {
                Verdict::No(r) => Some(r),
                _ => None,
            },
            target: self.target,
            sigma_min: self.sigma_min,
            sigma_max: self.sigma_max,
            n_eq: self.n_eq,
            extreme: self.extreme,
            witnesses: self.witnesses(),
            candidates_checked: self.candidates_checked,
        }
        .serialize(serializer)
    }
}

/// Decides `p` on `f` when its target total is at or beyond an extreme of σ.
///
/// Fails with [`DecideError::BudgetExceeded`] when the `2^n_eq` achievers of
/// the matching extreme outnumber `budget`.
pub fn decide(f: &Formula, p: &Partition, budget: u64) -> Result<Decision, DecideError> {
    let ext = sigma_extremes(f);
    decide_with_extremes(f, p, &ext, budget)
}

/// Same as [`decide`] with precomputed extremes.
pub fn decide_with_extremes(
    f: &Formula,
    p: &Partition,
    ext: &SigmaExtremes,
    budget: u64,
) -> Result<Decision, DecideError> {
    debug_assert_eq!(p.mu.len(), f.max_width() + 1);
    let target = p.target_total();
    let mut decision = Decision {
        verdict: Verdict::Inapplicable,
        target,
        sigma_min: ext.sigma_min,
        sigma_max: ext.sigma_max,
        n_eq: ext.n_eq(),
        extreme: None,
        candidates_checked: 0,
    };
    let which = if target < ext.sigma_min {
        decision.verdict = Verdict::No(NoReason::TargetBelowMin);
        return Ok(decision);
    } else if target > ext.sigma_max {
        decision.verdict = Verdict::No(NoReason::TargetAboveMax);
        return Ok(decision);
    } else if target == ext.sigma_min {
        Extreme::Min
    } else if target == ext.sigma_max {
        Extreme::Max
    } else {
        return Ok(decision);
    };

    let count = match ext.achiever_count() {
        Some(c) if c <= budget => c,
        _ => {
            return Err(DecideError::BudgetExceeded {
                n_eq: ext.n_eq(),
                budget,
            })
        }
    };
    let base = ext.base(which);
    let free = &ext.degenerate_vars;
    let candidate = |index: u64| {
        let mut x = base.clone();
        for (bit, &s) in free.iter().enumerate() {
            if (index >> bit) & 1 == 1 {
                x.set(s, true);
            }
        }
        x
    };
    let check = |index: u64| {
        let x = candidate(index);
        profile_matches(f, &x, p).then_some(x)
    };
    let witnesses: Vec<Assignment> = if count < 4096 {
        (0..count).filter_map(check).collect()
    } else {
        (0..count as usize)
            .into_par_iter()
            .with_min_len(1024)
            .filter_map(|i| check(i as u64))
            .collect()
    };
    decision.extreme = Some(which);
    decision.candidates_checked = count;
    decision.verdict = if witnesses.is_empty() {
        Verdict::No(NoReason::AllCandidatesFail)
    } else {
        Verdict::Yes(witnesses)
    };
    Ok(decision)
}

/// `l`-in-`k` SAT: every clause must hold exactly `l` true literals.
pub fn decide_l_in_k(f: &Formula, l: usize, budget: u64) -> Result<Decision, DecideError> {
    let p = Partition::l_in_k(f, l)?;
    decide(f, &p, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepOutcome {
    Decided { decision: Decision },
    BudgetExceeded { n_eq: usize, budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    /// Clauses with one true literal; the other `m − μ` hold two.
    pub mu: usize,
    pub target: usize,
    #[serde(flatten)]
    pub outcome: SweepOutcome,
}

impl SweepEntry {
    fn decision(&self) -> Option<&Decision> {
        match &self.outcome {
            SweepOutcome::Decided { decision } => Some(decision),
            SweepOutcome::BudgetExceeded { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaeSweep {
    pub entries: Vec<SweepEntry>,
    /// Some μ gave Yes, or every μ gave a definitive No.
    pub nae_decided: bool,
    /// `Some(answer)` when `nae_decided`.
    pub nae_satisfiable: Option<bool>,
}

/// NAE-3SAT on an exact 3-CNF as the family `{0, μ, m−μ, 0}` for `μ = 0..=m`.
pub fn nae_sweep(f: &Formula, budget: u64) -> Result<NaeSweep, DecideError> {
    if f.classify().exact_k != Some(3) {
        return Err(DecideError::NotExact3Cnf);
    }
    let m = f.num_clauses();
    let ext = sigma_extremes(f);
    let mut entries = Vec::with_capacity(m + 1);
    for mu in 0..=m {
        let p = Partition::for_formula(vec![0, mu, m - mu, 0], f)?;
        let outcome = match decide_with_extremes(f, &p, &ext, budget) {
            Ok(decision) => SweepOutcome::Decided { decision },
            Err(DecideError::BudgetExceeded { n_eq, budget }) => {
                SweepOutcome::BudgetExceeded { n_eq, budget }
            }
            Err(e) => return Err(e),
        };
        entries.push(SweepEntry {
            mu,
            target: 2 * m - mu,
            outcome,
        });
    }
    let any_yes = entries
        .iter()
        .any(|e| e.decision().is_some_and(Decision::is_yes));
    let all_no = entries
        .iter()
        .all(|e| e.decision().is_some_and(Decision::is_no));
    Ok(NaeSweep {
        entries,
        nae_decided: any_yes || all_no,
        nae_satisfiable: if any_yes {
            Some(true)
        } else if all_no {
            Some(false)
        } else {
            None
        },
    })
}
