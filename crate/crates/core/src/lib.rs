//! Sum-satisfiability analysis of CNF formulas.
//!
//! For an assignment `x`, σ(x) counts the true literals of a formula. Its
//! minimum and maximum over all assignments follow from per-variable
//! occurrence counts, and only `2^n_eq` assignments attain each of them,
//! where `n_eq` counts variables occurring equally often in both polarities.
//! A PART-SAT question ("is there an assignment with exactly `μ_α` clauses
//! holding `α` true literals?") whose implied σ total equals an extreme can
//! therefore be settled by checking those few assignments. This crate
//! provides the formula model, σ analysis, the decider, an NAE-3SAT filter,
//! a brute-force oracle and instance generators.

pub mod assignment;
pub mod cnf;
pub mod decide;
pub mod generators;
pub mod nae;
pub mod oracle;
pub mod sigma;

pub use assignment::{Assignment, AssignmentError};
pub use cnf::{
    parse_dimacs, parse_dimacs_with, parse_matrix, write_dimacs, write_matrix, ClassFlags, Clause,
    CnfError, Formula, Lit, OccurrenceStats, ParseError, ParseOptions,
};
pub use decide::{
    clause_profile, decide, decide_l_in_k, nae_sweep, ClauseProfile, DecideError, Decision,
    NoReason, Partition, PartitionError, PartitionSpec, Verdict, DEFAULT_BUDGET,
};
pub use sigma::{
    achievers, char_function, sigma, sigma_extremes, sigma_histogram, sigma_per_clause, Extreme,
    SigmaExtremes, SigmaHistogram,
};
