//! Acceptance suite. Runs every criterion and prints one PASS/FAIL line each;
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use partsat::decide::{decide, decide_l_in_k, DecideError, Partition};
use partsat::generators::{
    fixture, fixture_grid, fixture_names, gen_balanced_regular, gen_random_class, gen_random_cnf,
    gen_square_mixed_read3,
};
use partsat::nae::{sum_of_squares_condition, NaeFilter};
use partsat::oracle::{brute_nae, brute_partsat};
use partsat::sigma::{
    achievers, char_function, char_function_read3_closed_form, sigma_extremes,
    sigma_extremes_from_stats, sigma_histogram, sigma_per_clause,
};
use partsat::{
    clause_profile, parse_dimacs, parse_matrix, write_dimacs, write_matrix, Assignment, Clause,
    Extreme, Formula, Lit, NoReason, OccurrenceStats, Verdict, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn x(signs: &[i64]) -> Assignment {
    Assignment::from_signs(signs).unwrap()
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << n).map(move |i| Assignment::from_index(i, n))
}

/// True literals per clause, evaluated directly.
fn true_counts(f: &Formula, x: &Assignment) -> Vec<usize> {
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

fn criterion_1() -> Outcome {
    let f = fixture("example6").unwrap();
    let d = decide_l_in_k(&f, 1, DEFAULT_BUDGET).unwrap();
    let want = x(&[-1, 1, 1, -1, -1]);
    ensure!(
        d.witnesses() == [want.clone()],
        "witnesses {:?}",
        d.witnesses()
    );
    ensure!(
        d.n_eq == 1 && d.candidates_checked == 2,
        "n_eq {} checked {}",
        d.n_eq,
        d.candidates_checked
    );
    let ext = sigma_extremes(&f);
    ensure!(
        ext.degenerate_vars == [2],
        "degenerate {:?}",
        ext.degenerate_vars
    );
    let rejected: Vec<Assignment> = achievers(&f, Extreme::Min).filter(|a| *a != want).collect();
    ensure!(rejected.len() == 1, "rejected {:?}", rejected);
    let counts = true_counts(&f, &rejected[0]);
    ensure!(
        counts[0] != 1,
        "rejected candidate passes clause 1: {counts:?}"
    );
    let runs: Vec<Duration> = (0..101)
        .map(|_| {
            let t = Instant::now();
            let d = decide_l_in_k(&f, 1, DEFAULT_BUDGET).unwrap();
            let e = t.elapsed();
            assert!(d.is_yes());
            e
        })
        .collect();
    let t = median(runs);
    ensure!(t < Duration::from_millis(1), "median {t:?}");
    Ok(format!(
        "witness {want}, 2 candidates, rejected {} fails clause 1 ({} true), median {t:?}",
        rejected[0], counts[0]
    ))
}

fn criterion_2() -> Outcome {
    let f1 = fixture("F1").unwrap();
    let d = decide_l_in_k(&f1, 1, DEFAULT_BUDGET).unwrap();
    ensure!(
        d.verdict == Verdict::No(NoReason::AllCandidatesFail),
        "F1 one-in-k {:?}",
        d.verdict
    );
    ensure!(
        d.candidates_checked == 1,
        "F1 checked {}",
        d.candidates_checked
    );
    let sole = x(&[-1, 1, 1, -1, -1]);
    ensure!(sigma_extremes(&f1).x_min_base == sole, "F1 x_min");
    let nu = clause_profile(&f1, &sole).unwrap();
    ensure!(
        nu.nu[0] >= 1 && true_counts(&f1, &sole)[1] == 0,
        "F1 clause 2 not in ν_0"
    );

    let m = f1.num_clauses();
    let p = Partition::for_formula(vec![0, 0, m], &f1).unwrap();
    let d = decide(&f1, &p, DEFAULT_BUDGET).unwrap();
    ensure!(
        d.is_no() && d.sigma_max == 10 && d.target == 2 * m,
        "F1 two-in-k {:?}",
        d
    );
    ensure!(d.extreme == Some(Extreme::Max), "F1 two-in-k extreme");
    ensure!(
        sigma_extremes(&f1).x_max_base == x(&[1, -1, -1, 1, 1]),
        "F1 x_max"
    );

    let f2 = fixture("F2").unwrap();
    let d = decide_l_in_k(&f2, 1, DEFAULT_BUDGET).unwrap();
    let all_false = Assignment::all(f2.num_vars(), false);
    ensure!(d.is_no(), "F2 one-in-k {:?}", d.verdict);
    ensure!(
        achievers(&f2, Extreme::Min).collect::<Vec<_>>() == [all_false.clone()],
        "F2 candidate"
    );
    ensure!(
        true_counts(&f2, &all_false)[1] == 0,
        "F2 clause 2 satisfied by all-false"
    );

    let f3 = fixture("F3").unwrap();
    let n3 = f3.num_vars();
    let d1 = decide_l_in_k(&f3, 1, DEFAULT_BUDGET).unwrap();
    ensure!(
        d1.witnesses() == [Assignment::all(n3, false)],
        "F3 one-in-k {:?}",
        d1.verdict
    );
    let m3 = f3.num_clauses();
    let p = Partition::for_formula(vec![0, 0, m3, 0], &f3).unwrap();
    let d2 = decide(&f3, &p, DEFAULT_BUDGET).unwrap();
    ensure!(
        d2.witnesses() == [Assignment::all(n3, true)],
        "F3 two-in-k {:?}",
        d2.verdict
    );
    Ok("F1 No/No (σ_max 10), F2 No, F3 Yes all-false / Yes all-true".into())
}

fn criterion_3() -> Outcome {
    let f = fixture("lopsided5x4").unwrap();
    let st = f.stats();
    let imbalance: usize = (0..st.n).map(|s| st.pos[s].abs_diff(st.neg[s])).sum();
    ensure!(
        imbalance == 5 && st.m == 5,
        "Σ|Δ| = {imbalance}, m = {}",
        st.m
    );
    let d1 = decide_l_in_k(&f, 1, DEFAULT_BUDGET).unwrap();
    let d2 = decide_l_in_k(&f, 2, DEFAULT_BUDGET).unwrap();
    ensure!(
        d1.is_no() && d2.is_no(),
        "verdicts {:?} {:?}",
        d1.verdict,
        d2.verdict
    );
    let ext = sigma_extremes(&f);
    ensure!(
        ext.x_min_base == x(&[-1, 1, -1, 1]),
        "1-in-3 candidate {}",
        ext.x_min_base
    );
    ensure!(
        ext.x_max_base == x(&[1, -1, 1, -1]),
        "2-in-3 candidate {}",
        ext.x_max_base
    );
    ensure!(
        d1.candidates_checked == 1 && d2.candidates_checked == 1,
        "candidate counts"
    );
    Ok("Σ|Δ| = m = 5; (-1,1,-1,1) and (1,-1,1,-1) both rejected".into())
}

fn pascal_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for i in 0..20u64 {
        let n = 6 + (i as usize % 7);
        let f = gen_square_mixed_read3(n, 4000 + i).unwrap();
        let c = f.classify();
        ensure!(
            c.square && c.completely_mixed && c.is_exact_read3() && c.exact_k == Some(3),
            "formula {i} not in class"
        );
        let h = sigma_histogram(&f, 20).unwrap();
        let row = pascal_row(n);
        for (k, &expected) in row.iter().enumerate() {
            ensure!(
                h.count(n + k) == expected,
                "n={n} seed {i}: count at {} is {}, want {expected}",
                n + k,
                h.count(n + k)
            );
        }
        ensure!(h.total() == 1 << n, "histogram total");
        ensure!(h.binomial_check().pass, "binomial_check disagrees");
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(30), "took {t:?}");
    Ok(format!(
        "20 formulas, n in 6..=12, exact binomial counts, {t:?}"
    ))
}

/// Exact READ-3 with some variables made pure, so the closed form sees n_pure > 0.
fn with_pure_vars(f: &Formula, every: usize) -> Formula {
    let clauses = f
        .clauses()
        .iter()
        .map(|c| {
            let lits = c
                .lits()
                .iter()
                .map(|l| {
                    if l.var() % every == 0 {
                        Lit::pos(l.var())
                    } else {
                        *l
                    }
                })
                .collect();
            Clause::new(lits).unwrap()
        })
        .collect();
    Formula::new(f.num_vars(), clauses).unwrap()
}

fn criterion_5() -> Outcome {
    let a_values = [-1.0, -0.3, 0.3, 1.0];
    let mut worst_enum: f64 = 0.0;
    let mut worst_closed: f64 = 0.0;
    let mut formulas = Vec::new();
    for seed in 0..12u64 {
        let n = 1 + seed as usize;
        formulas.push(gen_random_cnf(2 * n, n, n.min(3), seed).unwrap());
        formulas.push(gen_random_class(n + 2, n, 4, 3, seed).unwrap());
    }
    let mut read3 = Vec::new();
    for seed in 0..8u64 {
        let n = 5 + seed as usize;
        let f = gen_square_mixed_read3(n, seed).unwrap();
        read3.push(with_pure_vars(&f, 3));
        read3.push(f);
    }
    for f in formulas.iter().chain(&read3) {
        let n = f.num_vars();
        ensure!(n <= 12, "n = {n}");
        for a in a_values {
            let mean = all_assignments(n)
                .map(|x| (a * true_counts(f, &x).iter().sum::<usize>() as f64).exp())
                .sum::<f64>()
                / (1u64 << n) as f64;
            let chi = char_function(f, a).unwrap();
            let rel = ((chi - mean) / mean).abs();
            worst_enum = worst_enum.max(rel);
            ensure!(rel < 1e-9, "n={n} a={a}: χ {chi} vs mean {mean}");
        }
    }
    let mut pure_seen = false;
    for f in &read3 {
        pure_seen |= f.stats().n_pure > 0;
        for a in a_values {
            let closed = char_function_read3_closed_form(f, a).ok_or("closed form refused")?;
            let chi = char_function(f, a).unwrap();
            let rel = ((closed - chi) / chi).abs();
            worst_closed = worst_closed.max(rel);
            ensure!(rel < 1e-12, "closed form {closed} vs {chi}");
        }
    }
    ensure!(pure_seen, "no READ-3 input with pure variables");
    Ok(format!(
        "{} formulas; worst rel. error vs enumeration {worst_enum:.1e}, closed form {worst_closed:.1e}",
        formulas.len() + read3.len()
    ))
}

fn random_formula(rng: &mut ChaCha8Rng) -> Formula {
    let seed = rng.gen();
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(1..=12);
            let k = rng.gen_range(1..=n.min(4));
            gen_random_cnf(rng.gen_range(1..=16), n, k, seed).unwrap()
        }
        1 => {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=(n * p).min(16));
            gen_random_class(m, n, rng.gen_range(1..=4), p, seed).unwrap()
        }
        2 => {
            let k = [2, 4][rng.gen_range(0..2)];
            gen_balanced_regular(rng.gen_range(k..=12), k, seed).unwrap()
        }
        3 => gen_square_mixed_read3(rng.gen_range(4..=12), seed).unwrap(),
        _ => {
            // balanced pairs force degenerate variables next to lopsided ones
            let n = rng.gen_range(2..=12);
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for _ in 0..rng.gen_range(1..=10) {
                let w = rng.gen_range(1..=n.min(3));
                let vars = rand::seq::index::sample(rng, n, w);
                rows.push(
                    vars.iter()
                        .map(|s| {
                            if rng.gen() {
                                s as i64 + 1
                            } else {
                                -(s as i64 + 1)
                            }
                        })
                        .collect(),
                );
            }
            let row_refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let mut f = Formula::from_dimacs_clauses(n, &row_refs).unwrap();
            let mirrored: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().map(|v| -v).collect())
                .collect();
            if rng.gen() {
                let all: Vec<&[i64]> = rows.iter().chain(&mirrored).map(Vec::as_slice).collect();
                f = Formula::from_dimacs_clauses(n, &all).unwrap();
            }
            f
        }
    }
}

enum Aim {
    Min,
    Max,
    Outside,
}

/// A partition with the requested target, scrambled by total-preserving moves.
fn random_partition(f: &Formula, aim: &Aim, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let k = f.max_width();
    let m = f.num_clauses();
    let ext = sigma_extremes(f);
    let mut mu = match aim {
        Aim::Min | Aim::Max => {
            let which = if matches!(aim, Aim::Min) {
                Extreme::Min
            } else {
                Extreme::Max
            };
            let achs: Vec<_> = achievers(f, which).collect();
            let pick = &achs[rng.gen_range(0..achs.len())];
            let mut mu = vec![0; k + 1];
            for c in true_counts(f, pick) {
                mu[c] += 1;
            }
            mu
        }
        Aim::Outside => {
            let below = ext.sigma_min > 0;
            let above = ext.sigma_max < k * m;
            let target = match (below, above) {
                (false, false) => return None,
                (true, false) => rng.gen_range(0..ext.sigma_min),
                (false, true) => rng.gen_range(ext.sigma_max + 1..=k * m),
                (true, true) => {
                    if rng.gen() {
                        rng.gen_range(0..ext.sigma_min)
                    } else {
                        rng.gen_range(ext.sigma_max + 1..=k * m)
                    }
                }
            };
            let mut mu = vec![0; k + 1];
            mu[0] = m;
            for _ in 0..target {
                let from: Vec<usize> = (0..k).filter(|&a| mu[a] > 0).collect();
                let a = from[rng.gen_range(0..from.len())];
                mu[a] -= 1;
                mu[a + 1] += 1;
            }
            mu
        }
    };
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(1..=k);
        let b = rng.gen_range(0..k);
        if mu[a] == 0 || mu[b] == 0 || (a == b && mu[a] < 2) {
            continue;
        }
        mu[a] -= 1;
        mu[a - 1] += 1;
        mu[b] -= 1;
        mu[b + 1] += 1;
    }
    Some(mu)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut formulas, mut instances, mut yes, mut no, mut enumerated) = (0, 0, 0, 0, 0);
    while formulas < 1200 {
        let f = random_formula(&mut rng);
        if f.num_clauses() == 0 || f.num_vars() > 12 {
            continue;
        }
        formulas += 1;
        for aim in [Aim::Min, Aim::Max, Aim::Outside] {
            let Some(mu) = random_partition(&f, &aim, &mut rng) else {
                continue;
            };
            let p = Partition::for_formula(mu.clone(), &f).map_err(|e| e.to_string())?;
            let d = decide(&f, &p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let oracle = brute_partsat(&f, &p, 20).unwrap().witnesses;
            instances += 1;
            match &d.verdict {
                Verdict::Yes(w) => {
                    ensure!(
                        *w == oracle,
                        "Yes mismatch on μ {mu:?}: {} vs {}",
                        w.len(),
                        oracle.len()
                    );
                    yes += 1;
                }
                Verdict::No(_) => {
                    ensure!(
                        oracle.is_empty(),
                        "No but oracle has {} witnesses for μ {mu:?}",
                        oracle.len()
                    );
                    no += 1;
                }
                Verdict::Inapplicable => {
                    return Err(format!("Inapplicable for forced target, μ {mu:?}"))
                }
            }
            if d.extreme.is_some() {
                enumerated += 1;
                ensure!(
                    d.candidates_checked == 1u64 << f.stats().n_eq,
                    "candidates {} vs 2^{}",
                    d.candidates_checked,
                    f.stats().n_eq
                );
            }
            let outside = matches!(aim, Aim::Outside);
            ensure!(outside == d.extreme.is_none(), "aim/extreme mismatch");
        }
    }
    Ok(format!("{formulas} formulas, {instances} partitions: {yes} Yes, {no} No, all match the oracle; {enumerated} enumerations with 2^n_eq candidates"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut checked, mut with_solutions, mut assignments) = (0, 0, 0u64);
    for i in 0..240u64 {
        let n = rng.gen_range(3..=10);
        let m = rng.gen_range(1..=15);
        let f = gen_random_cnf(m, n, 3, i).unwrap();
        ensure!(f.is_simple_3cnf(), "not simple");
        let filter = NaeFilter::new(&f).unwrap();
        for x in all_assignments(n) {
            let quad = filter.condition(&x).unwrap();
            let squares = sum_of_squares_condition(&f, &x).unwrap();
            ensure!(quad == squares, "forms disagree at {x}");
            assignments += 1;
        }
        let solutions = brute_nae(&f, 20).unwrap().witnesses;
        let kept = filter.filter(solutions.clone()).unwrap();
        ensure!(
            kept.len() == solutions.len(),
            "false rejection: {} of {} kept",
            kept.len(),
            solutions.len()
        );
        if !solutions.is_empty() {
            with_solutions += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} formulas, {assignments} assignments, {with_solutions} NAE-satisfiable, 0 false rejections"))
}

fn counting_ok(f: &Formula) -> bool {
    let st = f.stats();
    let by_width: usize = st.m_alpha.iter().map(|(a, c)| a * c).sum();
    let by_degree: usize = st.n_beta.iter().map(|(b, c)| b * c).sum();
    let ext = sigma_extremes(f);
    by_width == st.total && by_degree == st.total && ext.sigma_min + ext.sigma_max == st.total
}

fn criterion_8() -> Outcome {
    let mut seen = 0;
    let mut check = |label: &str, f: &Formula| -> Result<(), String> {
        seen += 1;
        ensure!(counting_ok(f), "{label}");
        Ok(())
    };
    for name in fixture_names() {
        let f = fixture(name).unwrap();
        check(name, &f)?;
        check(name, &parse_dimacs(write_dimacs(&f).as_bytes()).unwrap())?;
        check(
            name,
            &parse_matrix(fixture_grid(name).unwrap().as_bytes()).unwrap(),
        )?;
        if let Some(grid) = write_matrix(&f) {
            check(name, &parse_matrix(grid.as_bytes()).unwrap())?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let f = random_formula(&mut rng);
        check("generated", &f)?;
        check(
            "generated/reparsed",
            &parse_dimacs(write_dimacs(&f).as_bytes()).unwrap(),
        )?;
    }
    for seed in 0..20 {
        check("class", &gen_random_class(200, 100, 6, 5, seed).unwrap())?;
        check(
            "square",
            &gen_square_mixed_read3(50 + seed as usize, seed).unwrap(),
        )?;
    }
    check("empty", &Formula::new(4, vec![]).unwrap())?;
    Ok(format!(
        "{seen} formulas: Σαm_α = Σβn_β = N and σ_min + σ_max = N"
    ))
}

fn time_stats(f: &Formula) -> Duration {
    // repeat small inputs so each sample spans at least a few milliseconds
    let reps = (300_000 / f.stats().total).max(1);
    let samples: Vec<Duration> = (0..7)
        .map(|_| {
            let t = Instant::now();
            for _ in 0..reps {
                let st = OccurrenceStats::compute(f.num_vars(), f.clauses());
                let ext = sigma_extremes_from_stats(&st);
                std::hint::black_box(ext);
            }
            t.elapsed() / reps as u32
        })
        .collect();
    median(samples)
}

fn criterion_9() -> Outcome {
    let big = gen_random_cnf(100_000, 10_000, 3, 9).unwrap();
    let t_big = time_stats(&big);
    ensure!(
        t_big < Duration::from_millis(200),
        "100k clauses / 10k vars took {t_big:?}"
    );

    let sizes = [10_000usize, 100_000, 1_000_000];
    let mut points = Vec::new();
    for (i, &literals) in sizes.iter().enumerate() {
        let m = literals / 4;
        let f = gen_random_cnf(m, m / 10, 4, 90 + i as u64).unwrap();
        points.push((f.stats().total as f64, time_stats(&f).as_secs_f64()));
    }
    // least-squares slope through the origin
    let slope = points.iter().map(|(n, t)| n * t).sum::<f64>()
        / points.iter().map(|(n, _)| n * n).sum::<f64>();
    let ratios: Vec<f64> = points.iter().map(|(n, t)| t / (slope * n)).collect();
    let detail = points
        .iter()
        .map(|(n, t)| format!("{n:.0}: {:.2} ms", t * 1e3))
        .collect::<Vec<_>>()
        .join(", ");
    ensure!(
        ratios.iter().all(|r| (0.5..=2.0).contains(r)),
        "off linear fit: {detail}, ratios {ratios:?}"
    );
    Ok(format!(
        "100k×10k in {t_big:?}; {detail}; ratios to fit {:?}",
        ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
    ))
}

fn criterion_10() -> Outcome {
    let (mut enumerated, mut over_budget) = (0, 0);
    for n in 4..=16 {
        for seed in 0..3u64 {
            let f = gen_balanced_regular(n, 4, seed).unwrap();
            let st = f.stats();
            ensure!((0..n).all(|s| st.pos[s] == 2 && st.neg[s] == 2), "split");
            let m = f.num_clauses();
            let ext = sigma_extremes(&f);
            ensure!(
                ext.sigma_min == 2 * m && ext.sigma_max == 2 * m,
                "σ range {}..{}",
                ext.sigma_min,
                ext.sigma_max
            );
            let p = Partition::for_formula(vec![0, 0, m, 0, 0], &f).unwrap();
            for budget in [DEFAULT_BUDGET, 1 << 10] {
                match decide(&f, &p, budget) {
                    Ok(d) => {
                        ensure!(
                            d.candidates_checked == 1 << n,
                            "n={n}: {} candidates",
                            d.candidates_checked
                        );
                        let oracle = brute_partsat(&f, &p, 20).unwrap().witnesses;
                        ensure!(
                            d.witnesses() == oracle.as_slice(),
                            "n={n}: witnesses differ from oracle"
                        );
                        enumerated += 1;
                    }
                    Err(DecideError::BudgetExceeded { n_eq, .. }) => {
                        ensure!(
                            n_eq == n && (1u64 << n) > budget,
                            "n={n}: spurious budget error"
                        );
                        over_budget += 1;
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    let f = gen_balanced_regular(4, 4, 1).unwrap();
    let per = sigma_per_clause(&f, &Assignment::all(4, false)).unwrap();
    ensure!(
        per.iter().sum::<usize>() == 2 * f.num_clauses(),
        "all-false total"
    );
    Ok(format!("σ_min = σ_max = 2m throughout; {enumerated} runs enumerated 2^n, {over_budget} exceeded the budget"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("6-clause one-in-k replication", criterion_1),
        ("F1/F2/F3 replication", criterion_2),
        ("lopsided 5x4 instance", criterion_3),
        ("binomial law on square READ-3", criterion_4),
        ("characteristic function identity", criterion_5),
        ("decide vs brute-force oracle", criterion_6),
        ("NAE forms and filter", criterion_7),
        ("counting-relation invariants", criterion_8),
        ("linear-scan performance", criterion_9),
        ("balanced {4,4} degeneracy", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
