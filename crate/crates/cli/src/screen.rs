//! Corpus screening: one record per formula file, rows sorted by path.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use partsat::decide::{decide_with_extremes, PartitionSpec};
use partsat::sigma::sigma_extremes;
use partsat::{ClassFlags, DecideError, Verdict};
use rayon::prelude::*;
use serde::Serialize;

use crate::{read_formula, Format};

pub const HEADER: [&str; 13] = [
    "path",
    "m",
    "n",
    "flags",
    "sigma_min",
    "sigma_max",
    "n_eq",
    "target",
    "applicability",
    "verdict",
    "candidates_checked",
    "elapsed_ms",
    "error",
];

#[derive(Debug, Clone)]
pub struct ScreenOptions {
    pub spec: PartitionSpec,
    pub format: Option<Format>,
    pub budget: u64,
    /// Worker threads; 0 lets rayon pick.
    pub jobs: usize,
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Applicability {
    AtMin,
    AtMax,
    OutOfRange,
    Between,
}

impl Applicability {
    pub fn of(target: usize, sigma_min: usize, sigma_max: usize) -> Self {
        if target < sigma_min || target > sigma_max {
            Applicability::OutOfRange
        } else if target == sigma_min {
            Applicability::AtMin
        } else if target == sigma_max {
            Applicability::AtMax
        } else {
            Applicability::Between
        }
    }
}

/// One report row. Fields that could not be computed stay empty and `error`
/// says why.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ScreenRecord {
    pub path: String,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub flags: Option<String>,
    pub sigma_min: Option<usize>,
    pub sigma_max: Option<usize>,
    pub n_eq: Option<usize>,
    pub target: Option<usize>,
    pub applicability: Option<Applicability>,
    pub verdict: Option<String>,
    pub candidates_checked: Option<u64>,
    pub elapsed_ms: Option<f64>,
    pub error: Option<String>,
}

/// Compact `;`-separated form of the class flags.
pub fn flags_label(c: &ClassFlags) -> String {
    let mut parts = Vec::new();
    if let Some(k) = c.exact_k {
        parts.push(format!("exact_k={k}"));
    }
    parts.push(format!("read_p={}", c.read_p));
    if let Some(p) = c.exact_read_p {
        parts.push(format!("exact_read_p={p}"));
    }
    for (set, name) in [
        (c.completely_mixed, "completely_mixed"),
        (c.square, "square"),
        (c.trivially_satisfiable_r_le_r, "r_le_r"),
        (c.has_tautological_clause, "tautology"),
    ] {
        if set {
            parts.push(name.to_string());
        }
    }
    parts.join(";")
}

/// Formula files directly inside `dir` (`.cnf` and `.mat`), sorted.
pub fn list_inputs(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        let ext = path.extension().and_then(|e| e.to_str());
        if matches!(ext, Some("cnf" | "mat")) && !path.is_dir() {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}

pub fn screen_file(path: &Path, opts: &ScreenOptions) -> ScreenRecord {
    let start = Instant::now();
    let mut rec = ScreenRecord {
        path: path.display().to_string(),
        ..ScreenRecord::default()
    };
    if let Err(e) = fill(&mut rec, path, opts) {
        rec.error = Some(format!("{e:#}"));
    }
    if opts.timing {
        rec.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rec
}

fn fill(rec: &mut ScreenRecord, path: &Path, opts: &ScreenOptions) -> anyhow::Result<()> {
    let f = read_formula(path, opts.format)?;
    let ext = sigma_extremes(&f);
    rec.m = Some(f.num_clauses());
    rec.n = Some(f.num_vars());
    rec.flags = Some(flags_label(&f.classify()));
    rec.sigma_min = Some(ext.sigma_min);
    rec.sigma_max = Some(ext.sigma_max);
    rec.n_eq = Some(ext.n_eq());
    let p = opts.spec.resolve(&f)?;
    let target = p.target_total();
    rec.target = Some(target);
    rec.applicability = Some(Applicability::of(target, ext.sigma_min, ext.sigma_max));
    match decide_with_extremes(&f, &p, &ext, opts.budget) {
        Ok(d) => {
            rec.verdict = Some(
                match d.verdict {
                    Verdict::Yes(_) => "Yes",
                    Verdict::No(_) => "No",
                    Verdict::Inapplicable => "Inapplicable",
                }
                .to_string(),
            );
            rec.candidates_checked = Some(d.candidates_checked);
        }
        Err(DecideError::BudgetExceeded { .. }) => {
            rec.verdict = Some("BudgetExceeded".to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Screens every input of `dir`; row order does not depend on `jobs`.
pub fn screen_dir(dir: &Path, opts: &ScreenOptions) -> anyhow::Result<Vec<ScreenRecord>> {
    let paths = list_inputs(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .context("starting worker pool")?;
    Ok(pool.install(|| paths.par_iter().map(|p| screen_file(p, opts)).collect()))
}

pub fn write_csv<W: Write>(out: W, records: &[ScreenRecord]) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub files: usize,
    pub at_min: usize,
    pub at_max: usize,
    pub out_of_range: usize,
    pub between: usize,
    pub errors: usize,
    pub yes: usize,
    pub no: usize,
    pub budget_exceeded: usize,
}

impl Summary {
    pub fn of(records: &[ScreenRecord]) -> Self {
        let mut s = Summary {
            files: records.len(),
            ..Summary::default()
        };
        for r in records {
            match r.applicability {
                Some(Applicability::AtMin) => s.at_min += 1,
                Some(Applicability::AtMax) => s.at_max += 1,
                Some(Applicability::OutOfRange) => s.out_of_range += 1,
                Some(Applicability::Between) => s.between += 1,
                None => {}
            }
            if r.error.is_some() {
                s.errors += 1;
            }
            match r.verdict.as_deref() {
                Some("Yes") => s.yes += 1,
                Some("No") => s.no += 1,
                Some("BudgetExceeded") => s.budget_exceeded += 1,
                _ => {}
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "screened {} files: AtMin {}, AtMax {}, OutOfRange {}, Between {}; Yes {}, No {}, budget exceeded {}, errors {}",
            self.files,
            self.at_min,
            self.at_max,
            self.out_of_range,
            self.between,
            self.yes,
            self.no,
            self.budget_exceeded,
            self.errors
        )
    }
}
