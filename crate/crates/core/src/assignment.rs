use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentError {
    #[error("assignment has {found} entries, formula has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid assignment entry `{0}`, expected 1 or -1")]
    InvalidEntry(String),
}

/// A total truth assignment, written as a sign vector: `+1` is true, `-1` false.
///
/// The binary encoding maps variable `s` to bit `s` (variable 1 in DIMACS
/// numbering is the least significant bit) with `-1` as bit 0. `Ord` follows
/// that encoding for assignments of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all(n: usize, value: bool) -> Self {
        Assignment {
            values: vec![value; n],
        }
    }

    pub fn from_signs(signs: &[i64]) -> Result<Self, AssignmentError> {
        signs
            .iter()
            .map(|&s| match s {
                1 => Ok(true),
                -1 => Ok(false),
                other => Err(AssignmentError::InvalidEntry(other.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Assignment::new)
    }

    /// Decodes the low `n` bits of `index`. Requires `n <= 64`.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n <= 64, "binary encoding limited to 64 variables");
        Assignment {
            values: (0..n).map(|s| (index >> s) & 1 == 1).collect(),
        }
    }

    /// Binary encoding, if it fits in 64 bits.
    pub fn index(&self) -> Option<u64> {
        if self.values.len() > 64 {
            return None;
        }
        Some(
            self.values
                .iter()
                .enumerate()
                .fold(0u64, |acc, (s, &v)| acc | (u64::from(v) << s)),
        )
    }

    /// Parses `-1,1,1`, `[-1, 1, 1]`, `(-1,1,1)`, `all-false` or `all-true`
    /// against `n` variables.
    pub fn parse(text: &str, n: usize) -> Result<Self, AssignmentError> {
        let text = text.trim();
        let x = match text {
            "all-false" => Assignment::all(n, false),
            "all-true" => Assignment::all(n, true),
            _ => {
                let inner = text
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .or_else(|| text.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
                    .unwrap_or(text);
                if inner.trim().is_empty() {
                    Assignment::new(Vec::new())
                } else {
                    let signs = inner
                        .split(',')
                        .map(|tok| {
                            let tok = tok.trim();
                            tok.parse::<i64>()
                                .map_err(|_| AssignmentError::InvalidEntry(tok.to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Assignment::from_signs(&signs)?
                }
            }
        };
        x.check_len(n)?;
        Ok(x)
    }

    pub fn check_len(&self, n: usize) -> Result<(), AssignmentError> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(AssignmentError::LengthMismatch {
                expected: n,
                found: self.values.len(),
            })
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    #[inline]
    pub fn sign(&self, var: usize) -> i64 {
        if self.values[var] {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i64> {
        (0..self.len()).map(|s| self.sign(s)).collect()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.values[var] = value;
    }

    pub fn flip(&mut self, var: usize) {
        self.values[var] = !self.values[var];
    }

    pub fn negated(&self) -> Assignment {
        Assignment {
            values: self.values.iter().map(|v| !v).collect(),
        }
    }
}

impl Ord for Assignment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values
            .len()
            .cmp(&other.values.len())
            .then_with(|| self.values.iter().rev().cmp(other.values.iter().rev()))
    }
}

impl PartialOrd for Assignment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for s in 0..self.len() {
            if s > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.sign(s))?;
        }
        f.write_str(")")
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq((0..self.len()).map(|s| self.sign(s)))
    }
}
