use std::fmt::Write as _;

use super::{Clause, Formula, Lit, ParseError};

/// Upper bound on the declared variable count accepted by default.
pub const DEFAULT_MAX_VARS: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Keep repeated identical literals instead of rejecting the clause.
    pub permissive: bool,
    /// Reject headers declaring more variables than this.
    pub max_vars: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            permissive: false,
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

/// Reads a DIMACS CNF document with default options.
pub fn parse_dimacs(input: &[u8]) -> Result<Formula, ParseError> {
    parse_dimacs_with(input, ParseOptions::default())
}

/// Reads a DIMACS CNF document.
///
/// Lines starting with `c` are comments. A line starting with `%` ends the
/// clause section (SATLIB convention). Clauses may span lines; a final clause
/// missing its terminating `0` is accepted.
pub fn parse_dimacs_with(input: &[u8], opts: ParseOptions) -> Result<Formula, ParseError> {
    let text = std::str::from_utf8(input).map_err(|_| ParseError::NotUtf8)?;
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line: line_no });
            }
            let (n, m) = parse_header(line, line_no, opts.max_vars)?;
            clauses.reserve(m.min(1 << 20));
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or(ParseError::MissingHeader)?;
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if current.is_empty() {
                current_line = line_no;
            }
            if value == 0 {
                if current.is_empty() {
                    return Err(ParseError::EmptyClause { line: line_no });
                }
                clauses.push(finish_clause(
                    std::mem::take(&mut current),
                    current_line,
                    opts.permissive,
                )?);
                continue;
            }
            let var = value.unsigned_abs();
            if var > n as u64 {
                return Err(ParseError::VariableOutOfRange {
                    line: line_no,
                    var,
                    n,
                });
            }
            current.push(Lit::new((var - 1) as usize, value > 0));
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if !current.is_empty() {
        clauses.push(finish_clause(current, current_line, opts.permissive)?);
    }
    if clauses.len() != m {
        return Err(ParseError::ClauseCountMismatch {
            declared: m,
            found: clauses.len(),
        });
    }
    Ok(Formula::new(n, clauses).expect("literals were range-checked while parsing"))
}

fn parse_header(line: &str, line_no: usize, max_vars: usize) -> Result<(usize, usize), ParseError> {
    let malformed = |reason: &str| ParseError::MalformedHeader {
        line: line_no,
        reason: reason.to_string(),
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["p", "cnf", n, m] => {
            let n: u64 = n
                .parse()
                .map_err(|_| malformed("variable count is not a number"))?;
            let m: usize = m
                .parse()
                .map_err(|_| malformed("clause count is not a number"))?;
            if n > max_vars as u64 {
                return Err(ParseError::TooManyVariables { n, limit: max_vars });
            }
            Ok((n as usize, m))
        }
        ["p", fmt, ..] if *fmt != "cnf" => Err(malformed("format is not `cnf`")),
        _ => Err(malformed("expected `p cnf <variables> <clauses>`")),
    }
}

fn finish_clause(lits: Vec<Lit>, line: usize, permissive: bool) -> Result<Clause, ParseError> {
    let built = if permissive {
        Clause::new_permissive(lits)
    } else {
        Clause::new(lits)
    };
    built.map_err(|e| match e {
        super::CnfError::DuplicateLiteral(lit) => ParseError::DuplicateLiteral { line, lit },
        _ => ParseError::EmptyClause { line },
    })
}

/// Serializes a formula as DIMACS CNF, one clause per line.
pub fn write_dimacs(f: &Formula) -> String {
    let mut out = String::with_capacity(16 + f.stats().total * 4);
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    for clause in f.clauses() {
        for lit in clause.lits() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}
