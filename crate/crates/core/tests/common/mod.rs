//! Strategies and brute-force helpers shared by the integration tests. The
//! helpers evaluate literals directly and never touch occurrence statistics.

#![allow(dead_code)]

use partsat::{Assignment, Clause, Formula, Lit};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Arbitrary formulas: clause widths 1..=max_k, tautological clauses allowed,
/// identical repeated literals removed.
pub fn any_formula(max_n: usize, max_m: usize, max_k: usize) -> impl Strategy<Value = Formula> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(
            proptest::collection::vec((0..n, any::<bool>()), 1..=max_k),
            0..=max_m,
        )
        .prop_map(move |raw| {
            let clauses = raw
                .into_iter()
                .map(|lits| {
                    let mut out: Vec<Lit> = Vec::new();
                    for (s, p) in lits {
                        let l = Lit::new(s, p);
                        if !out.contains(&l) {
                            out.push(l);
                        }
                    }
                    Clause::new(out).unwrap()
                })
                .collect();
            Formula::new(n, clauses).unwrap()
        })
    })
}

/// Exact 3-CNF with three distinct variables per clause.
pub fn simple_3cnf(min_n: usize, max_n: usize, max_m: usize) -> impl Strategy<Value = Formula> {
    (min_n.max(3)..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(
            (
                subsequence((0..n).collect::<Vec<_>>(), 3),
                proptest::array::uniform3(any::<bool>()),
            ),
            1..=max_m,
        )
        .prop_map(move |raw| {
            let clauses = raw
                .into_iter()
                .map(|(vars, pol)| {
                    Clause::new(vars.iter().zip(pol).map(|(&s, p)| Lit::new(s, p)).collect())
                        .unwrap()
                })
                .collect();
            Formula::new(n, clauses).unwrap()
        })
    })
}

pub fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << n).map(move |i| Assignment::from_index(i, n))
}

pub fn brute_clause_counts(f: &Formula, x: &Assignment) -> Vec<usize> {
    f.clauses()
        .iter()
        .map(|c| {
            c.lits()
                .iter()
                .filter(|l| x.value(l.var()) == l.is_positive())
                .count()
        })
        .collect()
}

pub fn brute_sigma(f: &Formula, x: &Assignment) -> usize {
    brute_clause_counts(f, x).iter().sum()
}
