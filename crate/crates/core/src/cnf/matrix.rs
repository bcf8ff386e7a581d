//! Clause-by-variable grid format.
//!
//! One row per clause, one whitespace-separated cell per variable: `+` for a
//! positive occurrence, `-` for a negative one, `0` for absence. Blank lines
//! and lines starting with `#` are skipped.

use super::{Clause, Formula, Lit, ParseError};

pub fn parse_matrix(input: &[u8]) -> Result<Formula, ParseError> {
    let text = std::str::from_utf8(input).map_err(|_| ParseError::NotUtf8)?;
    let mut width: Option<usize> = None;
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut lits = Vec::new();
        let mut cells = 0;
        for (s, token) in line.split_whitespace().enumerate() {
            cells += 1;
            match token {
                "+" => lits.push(Lit::pos(s)),
                "-" => lits.push(Lit::neg(s)),
                "0" => {}
                _ => {
                    return Err(ParseError::InvalidCell {
                        line: line_no,
                        token: token.to_string(),
                    })
                }
            }
        }
        match width {
            None => width = Some(cells),
            Some(expected) if expected != cells => {
                return Err(ParseError::RaggedRow {
                    line: line_no,
                    expected,
                    found: cells,
                })
            }
            _ => {}
        }
        clauses.push(Clause::new(lits).map_err(|_| ParseError::EmptyClause { line: line_no })?);
    }
    Ok(Formula::new(width.unwrap_or(0), clauses).expect("cells index within row width"))
}

/// Renders the grid form. Returns `None` when a clause holds a variable twice,
/// which a single cell cannot express.
pub fn write_matrix(f: &Formula) -> Option<String> {
    let n = f.num_vars();
    let mut out = String::with_capacity(f.num_clauses() * (2 * n + 1));
    let mut row = vec!["0"; n];
    for clause in f.clauses() {
        if clause.has_repeated_var() {
            return None;
        }
        row.iter_mut().for_each(|c| *c = "0");
        for lit in clause.lits() {
            row[lit.var()] = if lit.is_positive() { "+" } else { "-" };
        }
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Some(out)
}
