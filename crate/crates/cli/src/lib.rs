//! Command-line front end: formula statistics, σ analysis, easy-instance
//! decisions, brute-force checks, generators and corpus screening.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use partsat::decide::{nae_sweep, PartitionSpec};
use partsat::generators::{generate, GenKind, GenSpec};
use partsat::nae::{mu_matrix, nae_condition, sum_of_squares_condition};
use partsat::oracle::{brute_nae, brute_partsat, brute_sat, OracleResult};
use partsat::sigma::{char_function, sigma_histogram, SigmaExtremes};
use partsat::{
    clause_profile, decide, parse_dimacs, parse_matrix, sigma, sigma_extremes, sigma_per_clause,
    write_dimacs, write_matrix, Assignment, DecideError, Decision, Formula, NoReason, Verdict,
    DEFAULT_BUDGET,
};
use serde::Serialize;
use serde_json::json;

pub mod screen;

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INAPPLICABLE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "partsat",
    version,
    about = "Sum-satisfiability analysis of CNF formulas"
)]
pub struct Cli {
    /// Tables instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,

    /// Input format; by default `.mat` files are grids and anything else DIMACS.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest number of extreme achievers a decision may enumerate.
    #[arg(long, global = true, env = "PARTSAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dimacs,
    Matrix,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct PartitionArgs {
    /// μ vector indexed by true-literal count, e.g. `0,m,0,0`.
    #[arg(long, value_name = "MU")]
    pub mu: Option<String>,
    /// Every clause holds exactly one true literal.
    #[arg(long)]
    pub one_in_k: bool,
    /// Every clause holds exactly L true literals.
    #[arg(long, value_name = "L")]
    pub l_in_k: Option<usize>,
}

impl PartitionArgs {
    pub fn spec(&self) -> anyhow::Result<PartitionSpec> {
        if let Some(text) = &self.mu {
            return text.parse().map_err(|e| anyhow!("--mu {text}: {e}"));
        }
        if let Some(l) = self.l_in_k {
            return Ok(PartitionSpec::LInK(l));
        }
        Ok(PartitionSpec::one_in_k())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Occurrence statistics.
    Stats { file: PathBuf },
    /// Class flags.
    Classify { file: PathBuf },
    /// σ extremes, or σ and clause profile at one assignment.
    Sigma {
        file: PathBuf,
        /// Comma-separated ±1 values, `all-false` or `all-true`.
        #[arg(long, allow_hyphen_values = true)]
        assign: Option<String>,
        /// Also report the characteristic function at these points.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chi: Vec<f64>,
    },
    /// Decide a partition when its target is at or beyond an extreme of σ.
    Decide {
        file: PathBuf,
        #[command(flatten)]
        partition: PartitionArgs,
    },
    /// Screen every `.cnf`/`.mat` file of a directory.
    Screen {
        dir: PathBuf,
        #[command(flatten)]
        partition: PartitionArgs,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        report: ReportFormat,
        /// Leave elapsed_ms empty so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// Exhaustive enumeration over all assignments.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        query: OracleQuery,
        #[arg(long, default_value_t = partsat::oracle::DEFAULT_ORACLE_LIMIT)]
        limit: usize,
    },
    /// Compare the σ histogram with binomial(n, k) at σ = n + k.
    DistCheck {
        file: PathBuf,
        #[arg(long, default_value_t = partsat::sigma::DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
    },
    /// Write a fixture or a generated formula.
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// NAE quadratic condition at an assignment, or the sweep over μ.
    NaeCheck {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        assign: Option<String>,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct OracleQuery {
    #[arg(long, value_name = "MU")]
    pub mu: Option<String>,
    #[arg(long)]
    pub one_in_k: bool,
    #[arg(long, value_name = "L")]
    pub l_in_k: Option<usize>,
    /// Plain satisfiability.
    #[arg(long)]
    pub sat: bool,
    /// Not-all-equal satisfiability (exact 3-CNF).
    #[arg(long)]
    pub nae: bool,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// A named worked example (example6, F1, F2, F3, lopsided5x4, ...).
    Fixture { name: String },
    /// Square completely mixed exact READ-3 3-CNF.
    Square {
        #[arg(long)]
        n: usize,
    },
    /// Uniform random exact k-CNF.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Random formula with bounded clause width and variable degree.
    Class {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        p_max: usize,
    },
    /// Square exact k-CNF with every variable split k/2 : k/2.
    Balanced {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            error,
        }
    }
}

type CmdResult = Result<u8, Failure>;

pub fn read_formula(path: &Path, format: Option<Format>) -> anyhow::Result<Formula> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format.unwrap_or_else(|| format_for(path));
    let parsed = match format {
        Format::Dimacs => parse_dimacs(&bytes),
        Format::Matrix => parse_matrix(&bytes),
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

pub fn format_for(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("mat") => Format::Matrix,
        _ => Format::Dimacs,
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn print_text(text: &str) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Exit code of a finished decision.
pub fn verdict_code(d: &Decision) -> u8 {
    match d.verdict {
        Verdict::Yes(_) => EXIT_YES,
        Verdict::No(_) => EXIT_NO,
        Verdict::Inapplicable => EXIT_INAPPLICABLE,
    }
}

pub fn run(cli: Cli) -> CmdResult {
    let fmt = cli.format;
    match cli.command {
        Command::Stats { file } => cmd_stats(&read_formula(&file, fmt)?, cli.human),
        Command::Classify { file } => cmd_classify(&read_formula(&file, fmt)?, cli.human),
        Command::Sigma { file, assign, chi } => cmd_sigma(
            &read_formula(&file, fmt)?,
            assign.as_deref(),
            &chi,
            cli.human,
        ),
        Command::Decide { file, partition } => {
            let f = read_formula(&file, fmt)?;
            cmd_decide(&f, &partition.spec()?, cli.budget, cli.human)
        }
        Command::Screen {
            dir,
            partition,
            jobs,
            report,
            no_timing,
        } => {
            let opts = screen::ScreenOptions {
                spec: partition.spec()?,
                format: fmt,
                budget: cli.budget,
                jobs,
                timing: !no_timing,
            };
            cmd_screen(&dir, &opts, report)
        }
        Command::Oracle { file, query, limit } => {
            cmd_oracle(&read_formula(&file, fmt)?, &query, limit, cli.human)
        }
        Command::DistCheck { file, limit } => {
            cmd_dist_check(&read_formula(&file, fmt)?, limit, cli.human)
        }
        Command::Gen { kind, seed, output } => cmd_gen(kind, seed, output.as_deref(), fmt),
        Command::NaeCheck { file, assign } => cmd_nae_check(
            &read_formula(&file, fmt)?,
            assign.as_deref(),
            cli.budget,
            cli.human,
        ),
    }
}

/// Parses arguments, runs, reports errors on stderr and maps to an exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            let closed = failure
                .error
                .root_cause()
                .downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe);
            if closed {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}

fn cmd_stats(f: &Formula, human: bool) -> CmdResult {
    let st = f.stats();
    if !human {
        print_json(st)?;
        return Ok(0);
    }
    let mut t = format!(
        "m {}\nn {}\nN {} ({} positive, {} negative)\nn_pure {}\nn_eq {}\nwidths {}\n\nvar  pos  neg\n",
        st.m,
        st.n,
        st.total,
        st.total_pos,
        st.total_neg,
        st.n_pure,
        st.n_eq,
        join(st.m_alpha.iter().map(|(a, c)| format!("{a}:{c}"))),
    );
    for s in 0..st.n {
        t.push_str(&format!(
            "{:>3}  {:>3}  {:>3}\n",
            s + 1,
            st.pos[s],
            st.neg[s]
        ));
    }
    print_text(&t)?;
    Ok(0)
}

fn join<I: Iterator<Item = String>>(items: I) -> String {
    items.collect::<Vec<_>>().join(" ")
}

fn cmd_classify(f: &Formula, human: bool) -> CmdResult {
    let c = f.classify();
    if !human {
        print_json(&c)?;
        return Ok(0);
    }
    print_text(&format!("{}\n", screen::flags_label(&c)))?;
    Ok(0)
}

fn extremes_json(ext: &SigmaExtremes) -> serde_json::Value {
    json!({
        "sigma_min": ext.sigma_min,
        "sigma_max": ext.sigma_max,
        "n_eq": ext.n_eq(),
        "degenerate_vars": ext.degenerate_vars.iter().map(|s| s + 1).collect::<Vec<_>>(),
        "x_min": ext.x_min_base,
        "x_max": ext.x_max_base,
        "achievers_per_extreme": ext.achiever_count(),
    })
}

fn cmd_sigma(f: &Formula, assign: Option<&str>, chi: &[f64], human: bool) -> CmdResult {
    let ext = sigma_extremes(f);
    let mut out = extremes_json(&ext);
    let mut text = format!(
        "sigma_min {} at {}\nsigma_max {} at {}\nn_eq {}\n",
        ext.sigma_min,
        ext.x_min_base,
        ext.sigma_max,
        ext.x_max_base,
        ext.n_eq()
    );
    if let Some(a) = assign {
        let x = Assignment::parse(a, f.num_vars()).context("--assign")?;
        let value = sigma(f, &x).map_err(anyhow::Error::from)?;
        let per = sigma_per_clause(f, &x).map_err(anyhow::Error::from)?;
        let profile = clause_profile(f, &x).map_err(anyhow::Error::from)?;
        out["assignment"] = json!(x);
        out["sigma"] = json!(value);
        out["per_clause"] = json!(per);
        out["profile"] = json!(profile.nu);
        text.push_str(&format!(
            "sigma {value} at {x}\nper clause {}\nprofile {}\n",
            join(per.iter().map(usize::to_string)),
            join(profile.nu.iter().map(usize::to_string)),
        ));
    }
    if !chi.is_empty() {
        let mut values = Vec::new();
        for &a in chi {
            let v = char_function(f, a).map_err(anyhow::Error::from)?;
            values.push(json!({ "a": a, "chi": v }));
            text.push_str(&format!("chi({a}) {v}\n"));
        }
        out["chi"] = json!(values);
    }
    if human {
        print_text(&text)?;
    } else {
        print_json(&out)?;
    }
    Ok(0)
}

fn budget_failure(e: DecideError) -> Failure {
    match e {
        DecideError::BudgetExceeded { .. } => Failure {
            code: EXIT_BUDGET,
            error: e.into(),
        },
        other => Failure {
            code: EXIT_USAGE,
            error: other.into(),
        },
    }
}

fn cmd_decide(f: &Formula, spec: &PartitionSpec, budget: u64, human: bool) -> CmdResult {
    let p = spec.resolve(f).map_err(anyhow::Error::from)?;
    let d = decide(f, &p, budget).map_err(budget_failure)?;
    if human {
        let mut t = format!(
            "verdict {}\ntarget {} (sigma_min {}, sigma_max {})\nn_eq {}\ncandidates checked {}\n",
            d.verdict_name(),
            d.target,
            d.sigma_min,
            d.sigma_max,
            d.n_eq,
            d.candidates_checked
        );
        if let Verdict::No(reason) = &d.verdict {
            let why = match reason {
                NoReason::TargetBelowMin => "target below sigma_min",
                NoReason::TargetAboveMax => "target above sigma_max",
                NoReason::AllCandidatesFail => "no extreme achiever has the profile",
            };
            t.push_str(&format!("reason {why}\n"));
        }
        for w in d.witnesses() {
            t.push_str(&format!("witness {w}\n"));
        }
        print_text(&t)?;
    } else {
        print_json(&d)?;
    }
    Ok(verdict_code(&d))
}

fn cmd_screen(dir: &Path, opts: &screen::ScreenOptions, report: ReportFormat) -> CmdResult {
    let records = screen::screen_dir(dir, opts)?;
    let summary = screen::Summary::of(&records);
    let mut out = io::stdout().lock();
    match report {
        ReportFormat::Csv => {
            screen::write_csv(&mut out, &records)?;
            eprintln!("{summary}");
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(
                &mut out,
                &json!({ "records": records, "summary": summary }),
            )
            .map_err(anyhow::Error::from)?;
            writeln!(out).map_err(anyhow::Error::from)?;
        }
    }
    Ok(0)
}

fn oracle_json(r: &OracleResult) -> serde_json::Value {
    json!({
        "witnesses": r.witnesses,
        "count": r.witnesses.len(),
        "enumerated": r.enumerated,
        "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
    })
}

fn cmd_oracle(f: &Formula, q: &OracleQuery, limit: usize, human: bool) -> CmdResult {
    let result = if q.sat {
        brute_sat(f, limit)
    } else if q.nae {
        brute_nae(f, limit)
    } else {
        let spec = PartitionArgs {
            mu: q.mu.clone(),
            one_in_k: q.one_in_k,
            l_in_k: q.l_in_k,
        }
        .spec()?;
        let p = spec.resolve(f).map_err(anyhow::Error::from)?;
        brute_partsat(f, &p, limit)
    }
    .map_err(anyhow::Error::from)?;
    if human {
        let mut t = format!(
            "{} of {} assignments\n",
            result.witnesses.len(),
            result.enumerated
        );
        for w in &result.witnesses {
            t.push_str(&format!("{w}\n"));
        }
        print_text(&t)?;
    } else {
        print_json(&oracle_json(&result))?;
    }
    Ok(if result.witnesses.is_empty() {
        EXIT_NO
    } else {
        EXIT_YES
    })
}

fn cmd_dist_check(f: &Formula, limit: usize, human: bool) -> CmdResult {
    let h = sigma_histogram(f, limit).map_err(anyhow::Error::from)?;
    let check = h.binomial_check();
    let verdict = if check.pass { "PASS" } else { "FAIL" };
    let matched = check
        .rows
        .iter()
        .filter(|r| r.observed == r.expected)
        .count();
    if human {
        let mut t = String::from("   k  sigma  observed  binomial\n");
        for r in &check.rows {
            let mark = if r.observed == r.expected { "" } else { "  *" };
            t.push_str(&format!(
                "{:>4}  {:>5}  {:>8}  {:>8}{mark}\n",
                r.k, r.sigma, r.observed, r.expected
            ));
        }
        if !check.stray_values.is_empty() {
            t.push_str(&format!(
                "sigma outside n..2n: {}\n",
                join(check.stray_values.iter().map(usize::to_string))
            ));
        }
        t.push_str(&format!(
            "{verdict} ({matched} of {} counts matched)\n",
            check.rows.len()
        ));
        print_text(&t)?;
    } else {
        print_json(&json!({
            "result": verdict,
            "matched": matched,
            "n": h.n,
            "rows": check.rows,
            "stray_values": check.stray_values,
            "histogram": h,
        }))?;
    }
    Ok(if check.pass { 0 } else { 1 })
}

fn cmd_gen(kind: GenCommand, seed: u64, output: Option<&Path>, fmt: Option<Format>) -> CmdResult {
    let kind = match kind {
        GenCommand::Fixture { name } => GenKind::Fixture(name),
        GenCommand::Square { n } => GenKind::SquareMixedRead3 { n },
        GenCommand::Random { m, n, k } => GenKind::RandomCnf { m, n, k },
        GenCommand::Class { m, n, k_max, p_max } => GenKind::RandomClass { m, n, k_max, p_max },
        GenCommand::Balanced { n, k } => GenKind::BalancedRegular { n, k },
    };
    let f = generate(&GenSpec { kind, seed }).map_err(anyhow::Error::from)?;
    let format = fmt
        .or_else(|| output.map(format_for))
        .unwrap_or(Format::Dimacs);
    let text = match format {
        Format::Dimacs => write_dimacs(&f),
        Format::Matrix => match write_matrix(&f) {
            Some(t) => t,
            None => {
                return Err(
                    anyhow!("a clause repeats a variable; the grid format cannot hold it").into(),
                )
            }
        },
    };
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print_text(&text)?,
    }
    Ok(0)
}

fn cmd_nae_check(f: &Formula, assign: Option<&str>, budget: u64, human: bool) -> CmdResult {
    let Some(a) = assign else {
        let sweep = nae_sweep(f, budget).map_err(budget_failure)?;
        if human {
            let t = match sweep.nae_satisfiable {
                Some(true) => "NAE-satisfiable\n".to_string(),
                Some(false) => "not NAE-satisfiable\n".to_string(),
                None => "undecided: some μ lies strictly between the extremes\n".to_string(),
            };
            print_text(&t)?;
        } else {
            print_json(&sweep)?;
        }
        return Ok(match sweep.nae_satisfiable {
            Some(true) => EXIT_YES,
            Some(false) => EXIT_NO,
            None => EXIT_INAPPLICABLE,
        });
    };
    let x = Assignment::parse(a, f.num_vars()).context("--assign")?;
    let quadratic = nae_condition(f, &x).map_err(anyhow::Error::from)?;
    let squares = sum_of_squares_condition(f, &x).map_err(anyhow::Error::from)?;
    let mu = mu_matrix(f).map_err(anyhow::Error::from)?;
    let value = f.num_clauses() as i64 + mu.quadratic_form(&x);
    if human {
        print_text(&format!(
            "m + Σ μ x x = {value}\ncondition {quadratic}\nsum of squares form {squares}\n"
        ))?;
    } else {
        print_json(&json!({
            "assignment": x,
            "quadratic_value": value,
            "condition": quadratic,
            "sum_of_squares": squares,
        }))?;
    }
    Ok(if quadratic { EXIT_YES } else { EXIT_NO })
}
