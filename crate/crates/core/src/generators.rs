//! Fixture formulas and seeded random instance generators.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{parse_matrix, Clause, Formula, Lit};

/// Rejection-sampling attempts per generated instance.
pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("no valid instance after {0} attempts")]
    RetriesExhausted(usize),
}

const FIXTURES: &[(&str, &str)] = &[
    ("example6", include_str!("../fixtures/example6.mat")),
    ("F1", include_str!("../fixtures/F1.mat")),
    ("F2", include_str!("../fixtures/F2.mat")),
    ("F3", include_str!("../fixtures/F3.mat")),
    ("lopsided5x4", include_str!("../fixtures/lopsided5x4.mat")),
    (
        "two_two_four_a",
        include_str!("../fixtures/two_two_four_a.mat"),
    ),
    (
        "two_two_four_b",
        include_str!("../fixtures/two_two_four_b.mat"),
    ),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(name, _)| *name)
}

/// Grid text of a fixture.
pub fn fixture_grid(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, grid)| *grid)
}

pub fn fixture(name: &str) -> Result<Formula, GenError> {
    let grid = fixture_grid(name).ok_or_else(|| GenError::UnknownFixture(name.to_string()))?;
    Ok(parse_matrix(grid.as_bytes()).expect("fixture grids are well formed"))
}

/// What to generate; the seed makes every kind reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    Fixture(String),
    SquareMixedRead3 {
        n: usize,
    },
    RandomCnf {
        m: usize,
        n: usize,
        k: usize,
    },
    RandomClass {
        m: usize,
        n: usize,
        k_max: usize,
        p_max: usize,
    },
    BalancedRegular {
        n: usize,
        k: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub seed: u64,
}

pub fn generate(spec: &GenSpec) -> Result<Formula, GenError> {
    match &spec.kind {
        GenKind::Fixture(name) => fixture(name),
        GenKind::SquareMixedRead3 { n } => gen_square_mixed_read3(*n, spec.seed),
        GenKind::RandomCnf { m, n, k } => gen_random_cnf(*m, *n, *k, spec.seed),
        GenKind::RandomClass { m, n, k_max, p_max } => {
            gen_random_class(*m, *n, *k_max, *p_max, spec.seed)
        }
        GenKind::BalancedRegular { n, k } => gen_balanced_regular(*n, *k, spec.seed),
    }
}

/// Configuration model for an `n`-clause, `n`-variable incidence structure
/// with every clause and every variable of degree `k`. Matchings that put a
/// variable twice into one clause are rejected and redrawn. With `repair`,
/// a colliding matching is first fixed by random stub swaps between clauses,
/// which keeps wide clauses from exhausting the retry bound.
fn regular_incidence(
    n: usize,
    k: usize,
    repair: bool,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<usize>>, GenError> {
    if n == k {
        // every clause must hold every variable
        return Ok(vec![(0..n).collect(); n]);
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|s| std::iter::repeat_n(s, k)).collect();
    for _ in 0..MAX_RETRIES {
        stubs.shuffle(rng);
        if repair {
            repair_collisions(&mut stubs, k, rng);
        }
        let rows: Vec<Vec<usize>> = stubs
            .chunks(k)
            .map(|chunk| {
                let mut row = chunk.to_vec();
                row.sort_unstable();
                row
            })
            .collect();
        if rows.iter().all(|r| r.windows(2).all(|w| w[0] != w[1])) {
            return Ok(rows);
        }
    }
    Err(GenError::RetriesExhausted(MAX_RETRIES))
}

/// Swaps a repeated stub with a random stub of another clause whenever
/// neither clause then holds that variable twice.
fn repair_collisions(stubs: &mut [usize], k: usize, rng: &mut ChaCha8Rng) {
    let holds = |stubs: &[usize], clause: usize, var: usize, skip: usize| {
        (clause * k..(clause + 1) * k).any(|i| i != skip && stubs[i] == var)
    };
    for _ in 0..stubs.len() * 64 {
        let Some(bad) = (0..stubs.len()).find(|&i| holds(stubs, i / k, stubs[i], i)) else {
            return;
        };
        let other = rng.gen_range(0..stubs.len());
        let (cb, co) = (bad / k, other / k);
        if cb == co {
            continue;
        }
        let (vb, vo) = (stubs[bad], stubs[other]);
        if !holds(stubs, co, vb, other) && !holds(stubs, cb, vo, bad) {
            stubs.swap(bad, other);
        }
    }
}

/// Assigns polarities so that variable `s` gets exactly `positives[s]`
/// positive occurrences, placed uniformly among its occurrences.
fn polarize(
    rows: &[Vec<usize>],
    n: usize,
    positives: &[usize],
    rng: &mut ChaCha8Rng,
) -> Vec<Clause> {
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (j, row) in rows.iter().enumerate() {
        for (i, &s) in row.iter().enumerate() {
            occurrences[s].push((j, i));
        }
    }
    let mut signs: Vec<Vec<bool>> = rows.iter().map(|r| vec![false; r.len()]).collect();
    for (s, occ) in occurrences.iter().enumerate() {
        for pick in index::sample(rng, occ.len(), positives[s]).iter() {
            let (j, i) = occ[pick];
            signs[j][i] = true;
        }
    }
    rows.iter()
        .zip(&signs)
        .map(|(row, sg)| {
            let lits = row.iter().zip(sg).map(|(&s, &p)| Lit::new(s, p)).collect();
            Clause::new(lits).expect("rows hold distinct variables")
        })
        .collect()
}

/// A square, completely mixed, exact 3-CNF in which every variable occurs
/// exactly three times, split one/two between the polarities.
pub fn gen_square_mixed_read3(n: usize, seed: u64) -> Result<Formula, GenError> {
    if n < 4 {
        return Err(GenError::InvalidParameters(format!(
            "square READ-3 generation needs n >= 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = regular_incidence(n, 3, false, &mut rng)?;
    let positives: Vec<usize> = (0..n)
        .map(|_| if rng.gen::<bool>() { 1 } else { 2 })
        .collect();
    let clauses = polarize(&rows, n, &positives, &mut rng);
    Ok(Formula::new(n, clauses).expect("variables in range"))
}

/// A square exact `k`-CNF in which every variable occurs `k` times, half of
/// them negated. Every variable is degenerate. `k` must be even.
pub fn gen_balanced_regular(n: usize, k: usize, seed: u64) -> Result<Formula, GenError> {
    if k == 0 || !k.is_multiple_of(2) || n < k {
        return Err(GenError::InvalidParameters(format!(
            "balanced generation needs an even k >= 2 and n >= k, got n={n}, k={k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = regular_incidence(n, k, true, &mut rng)?;
    let clauses = polarize(&rows, n, &vec![k / 2; n], &mut rng);
    Ok(Formula::new(n, clauses).expect("variables in range"))
}

/// `m` clauses of `k` distinct variables each, polarities uniform.
pub fn gen_random_cnf(m: usize, n: usize, k: usize, seed: u64) -> Result<Formula, GenError> {
    if k == 0 || k > n {
        return Err(GenError::InvalidParameters(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let lits = index::sample(&mut rng, n, k)
                .iter()
                .map(|s| Lit::new(s, rng.gen()))
                .collect();
            Clause::new(lits).expect("sampled variables are distinct")
        })
        .collect();
    Ok(Formula::new(n, clauses).expect("variables in range"))
}

/// `m` clauses of width `1..=k_max` over distinct variables, with no variable
/// occurring more than `p_max` times. Widths are trimmed when the remaining
/// occurrence budget runs short, so this never fails for `m <= n * p_max`.
pub fn gen_random_class(
    m: usize,
    n: usize,
    k_max: usize,
    p_max: usize,
    seed: u64,
) -> Result<Formula, GenError> {
    if k_max == 0 || p_max == 0 || m > n * p_max {
        return Err(GenError::InvalidParameters(format!(
            "need k_max, p_max >= 1 and m <= n*p_max, got m={m}, n={n}, k_max={k_max}, p_max={p_max}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    // free slots left; each clause leaves at least one slot per clause still to come
    let mut capacity = n * p_max;
    let mut clauses = Vec::with_capacity(m);
    for j in 0..m {
        let open: Vec<usize> = (0..n).filter(|&s| degree[s] < p_max).collect();
        let room = capacity - (m - j - 1);
        let width = rng.gen_range(1..=k_max).min(open.len()).min(room);
        capacity -= width;
        let lits = index::sample(&mut rng, open.len(), width)
            .iter()
            .map(|i| {
                let s = open[i];
                degree[s] += 1;
                Lit::new(s, rng.gen())
            })
            .collect();
        clauses.push(Clause::new(lits).expect("sampled variables are distinct"));
    }
    Ok(Formula::new(n, clauses).expect("variables in range"))
}
