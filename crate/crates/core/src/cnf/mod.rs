//! CNF formulas, occurrence statistics and structural class predicates.

mod dimacs;
mod matrix;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use dimacs::{parse_dimacs, parse_dimacs_with, write_dimacs, ParseOptions, DEFAULT_MAX_VARS};
pub use matrix::{parse_matrix, write_matrix};

/// Errors raised when building clauses and formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("empty clause")]
    EmptyClause,
    #[error("literal {0} occurs twice in the same clause")]
    DuplicateLiteral(i64),
    #[error("variable {var} exceeds declared variable count {n}")]
    VariableOutOfRange { var: usize, n: usize },
}

/// Errors raised by the DIMACS and matrix-grid readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: variable {var} exceeds declared variable count {n}")]
    VariableOutOfRange { line: usize, var: u64, n: usize },
    #[error("line {line}: literal {lit} repeated in clause")]
    DuplicateLiteral { line: usize, lit: i64 },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("header declares {n} variables, limit is {limit}")]
    TooManyVariables { n: u64, limit: usize },
    #[error("line {line}: expected {expected} cells, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid cell `{token}`, expected `+`, `-` or `0`")]
    InvalidCell { line: usize, token: String },
}

/// A variable occurrence. The variable index is 0-based; DIMACS numbering is
/// available through [`Lit::from_dimacs`] and [`Lit::to_dimacs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    var: u32,
    positive: bool,
}

impl Lit {
    pub fn new(var: usize, positive: bool) -> Self {
        Lit {
            var: u32::try_from(var).expect("variable index fits in u32"),
            positive,
        }
    }

    pub fn pos(var: usize) -> Self {
        Lit::new(var, true)
    }

    pub fn neg(var: usize) -> Self {
        Lit::new(var, false)
    }

    /// Converts a nonzero signed DIMACS literal.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = usize::try_from(value.unsigned_abs() - 1).ok()?;
        if var > u32::MAX as usize {
            return None;
        }
        Some(Lit::new(var, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var) + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    #[inline]
    pub fn var(self) -> usize {
        self.var as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// Truth value of the literal when its variable takes `value`.
    #[inline]
    pub fn eval(self, value: bool) -> bool {
        self.positive == value
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A nonempty disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Builds a clause, rejecting empty input and repeated identical literals.
    pub fn new(lits: Vec<Lit>) -> Result<Self, CnfError> {
        if lits.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        for (i, a) in lits.iter().enumerate() {
            if lits[..i].contains(a) {
                return Err(CnfError::DuplicateLiteral(a.to_dimacs()));
            }
        }
        Ok(Clause { lits })
    }

    /// Builds a clause that may repeat a literal; repeats are counted literally.
    pub fn new_permissive(lits: Vec<Lit>) -> Result<Self, CnfError> {
        if lits.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        Ok(Clause { lits })
    }

    pub fn from_dimacs(values: &[i64]) -> Result<Self, CnfError> {
        let lits = values
            .iter()
            .map(|&v| Lit::from_dimacs(v).ok_or(CnfError::EmptyClause))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    /// True if the clause holds both polarities of some variable.
    pub fn is_tautological(&self) -> bool {
        self.lits
            .iter()
            .enumerate()
            .any(|(i, a)| self.lits[..i].contains(&!*a))
    }

    /// True if some variable occurs more than once, in either polarity.
    pub fn has_repeated_var(&self) -> bool {
        self.lits
            .iter()
            .enumerate()
            .any(|(i, a)| self.lits[..i].iter().any(|b| b.var() == a.var()))
    }
}

/// A CNF formula over variables `0..n` with cached occurrence statistics.
#[derive(Debug, Clone)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<Clause>,
    stats: OccurrenceStats,
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.clauses == other.clauses
    }
}

impl Eq for Formula {}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for clause in &clauses {
            for lit in clause.lits() {
                if lit.var() >= num_vars {
                    return Err(CnfError::VariableOutOfRange {
                        var: lit.var() + 1,
                        n: num_vars,
                    });
                }
            }
        }
        let stats = OccurrenceStats::compute(num_vars, &clauses);
        debug_assert!(stats.relations_hold());
        Ok(Formula {
            num_vars,
            clauses,
            stats,
        })
    }

    /// Convenience constructor from DIMACS-style signed literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, CnfError> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>, _>>()?;
        Formula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn stats(&self) -> &OccurrenceStats {
        &self.stats
    }

    pub fn classify(&self) -> ClassFlags {
        ClassFlags::of(self)
    }

    /// Largest clause width, 0 for a formula without clauses.
    pub fn max_width(&self) -> usize {
        self.stats.widths.iter().copied().max().unwrap_or(0)
    }

    pub fn min_width(&self) -> usize {
        self.stats.widths.iter().copied().min().unwrap_or(0)
    }

    /// True if every clause has exactly three literals over three distinct variables.
    pub fn is_simple_3cnf(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.width() == 3 && !c.has_repeated_var())
    }

    /// Equality ignoring the order of literals inside each clause.
    pub fn eq_up_to_literal_order(&self, other: &Formula) -> bool {
        if self.num_vars != other.num_vars || self.clauses.len() != other.clauses.len() {
            return false;
        }
        self.clauses.iter().zip(&other.clauses).all(|(a, b)| {
            let mut a = a.lits.clone();
            let mut b = b.lits.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        })
    }
}

/// Occurrence counts of a formula.
///
/// `pos[s]` and `neg[s]` count positive and negative occurrences of variable
/// `s`; `widths[j]` is the literal count of clause `j`. The histograms map a
/// clause width (resp. variable degree) to the number of clauses (resp.
/// variables) having it; `n_beta` includes degree 0 for unused variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceStats {
    pub m: usize,
    pub n: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub widths: Vec<usize>,
    pub total: usize,
    pub total_pos: usize,
    pub total_neg: usize,
    pub m_alpha: BTreeMap<usize, usize>,
    pub n_beta: BTreeMap<usize, usize>,
    /// Variables occurring with a single polarity.
    pub n_pure: usize,
    /// Variables with `pos == neg`, unused variables included.
    pub n_eq: usize,
}

impl OccurrenceStats {
    /// One pass over the clause list followed by one pass over the variables.
    pub fn compute(n: usize, clauses: &[Clause]) -> Self {
        let mut pos = vec![0usize; n];
        let mut neg = vec![0usize; n];
        let mut widths = Vec::with_capacity(clauses.len());
        let mut m_alpha = BTreeMap::new();
        let mut total_pos = 0;
        let mut total_neg = 0;
        for clause in clauses {
            for lit in clause.lits() {
                if lit.is_positive() {
                    pos[lit.var()] += 1;
                    total_pos += 1;
                } else {
                    neg[lit.var()] += 1;
                    total_neg += 1;
                }
            }
            widths.push(clause.width());
            *m_alpha.entry(clause.width()).or_insert(0) += 1;
        }
        let mut n_beta = BTreeMap::new();
        let mut n_pure = 0;
        let mut n_eq = 0;
        for (&p, &q) in pos.iter().zip(&neg) {
            *n_beta.entry(p + q).or_insert(0) += 1;
            if p + q > 0 && p * q == 0 {
                n_pure += 1;
            }
            if p == q {
                n_eq += 1;
            }
        }
        OccurrenceStats {
            m: clauses.len(),
            n,
            pos,
            neg,
            widths,
            total: total_pos + total_neg,
            total_pos,
            total_neg,
            m_alpha,
            n_beta,
            n_pure,
            n_eq,
        }
    }

    pub fn degree(&self, var: usize) -> usize {
        self.pos[var] + self.neg[var]
    }

    pub fn is_degenerate(&self, var: usize) -> bool {
        self.pos[var] == self.neg[var]
    }

    /// Checks every counting relation between the cached totals and histograms.
    pub fn relations_hold(&self) -> bool {
        let by_var: usize = self.pos.iter().zip(&self.neg).map(|(p, q)| p + q).sum();
        let by_clause: usize = self.widths.iter().sum();
        let by_width: usize = self.m_alpha.iter().map(|(a, c)| a * c).sum();
        let by_degree: usize = self.n_beta.iter().map(|(b, c)| b * c).sum();
        self.total == self.total_pos + self.total_neg
            && self.total == by_var
            && self.total == by_clause
            && self.total == by_width
            && self.total == by_degree
            && self.m_alpha.values().sum::<usize>() == self.m
            && self.n_beta.values().sum::<usize>() == self.n
            && self.widths.len() == self.m
            && self.pos.len() == self.n
            && self.neg.len() == self.n
    }
}

/// Structural classes a formula belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    /// `Some(k)` when every clause has exactly `k` literals.
    pub exact_k: Option<usize>,
    /// Largest variable degree.
    pub read_p: usize,
    /// `Some(p)` when every variable has degree exactly `p`.
    pub exact_read_p: Option<usize>,
    pub completely_mixed: bool,
    pub square: bool,
    /// Exact `r`-CNF with every degree at most `r`; such formulas are always satisfiable.
    pub trivially_satisfiable_r_le_r: bool,
    pub has_tautological_clause: bool,
}

impl ClassFlags {
    pub fn of(f: &Formula) -> Self {
        let st = f.stats();
        let all_equal = |v: &[usize]| match v.first() {
            Some(&first) if v.iter().all(|&x| x == first) => Some(first),
            _ => None,
        };
        let exact_k = all_equal(&st.widths);
        let degrees: Vec<usize> = (0..st.n).map(|s| st.degree(s)).collect();
        let read_p = degrees.iter().copied().max().unwrap_or(0);
        let exact_read_p = all_equal(&degrees);
        let completely_mixed = (0..st.n).all(|s| st.degree(s) == 0 || st.pos[s] * st.neg[s] != 0);
        ClassFlags {
            exact_k,
            read_p,
            exact_read_p,
            completely_mixed,
            square: st.m == st.n,
            trivially_satisfiable_r_le_r: matches!(exact_k, Some(k) if read_p <= k),
            has_tautological_clause: f.clauses().iter().any(Clause::is_tautological),
        }
    }

    /// Every variable has degree exactly 3.
    pub fn is_exact_read3(&self) -> bool {
        self.exact_read_p == Some(3)
    }
}
