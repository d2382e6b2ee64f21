//! DIMACS-flavoured text for exactly-1-in-3 formulas:
//!
//! ```text
//! c comment
//! p 1in3 4 1
//! 1 -2 3
//! ```
//!
//! The header gives the variable count then the clause count. Each clause
//! line holds three nonzero literals, optionally followed by a terminating `0`.

use drtomo_core::hardness::{HardnessError, OneInThreeInstance};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p 1in3` header")]
    MissingHeader,
    #[error("header announces {expected} clauses, found {found}")]
    ClauseCount { expected: usize, found: usize },
    #[error(transparent)]
    Formula(#[from] HardnessError),
}

pub fn parse_sat(text: &str) -> Result<OneInThreeInstance, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| SatError::Syntax { line, message };
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(err("duplicate header".into()));
            }
            let parsed = match tokens.as_slice() {
                ["p", "1in3", t, s] => t.parse().ok().zip(s.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| err("expected `p 1in3 <vars> <clauses>`".into()))?);
            continue;
        }
        if header.is_none() {
            return Err(SatError::MissingHeader);
        }
        let mut lits: Vec<i32> = tokens
            .iter()
            .map(|t| {
                t.parse()
                    .map_err(|_| err(format!("`{t}` is not a literal")))
            })
            .collect::<Result<_, _>>()?;
        if lits.len() == 4 && lits[3] == 0 {
            lits.pop();
        }
        let clause: [i32; 3] = lits
            .try_into()
            .map_err(|_| err("a clause has exactly three literals".into()))?;
        clauses.push(clause);
    }
    let (vars, count) = header.ok_or(SatError::MissingHeader)?;
    if clauses.len() != count {
        return Err(SatError::ClauseCount {
            expected: count,
            found: clauses.len(),
        });
    }
    let sat = OneInThreeInstance { vars, clauses };
    sat.validate()?;
    Ok(sat)
}

pub fn write_sat(sat: &OneInThreeInstance) -> String {
    let mut out = format!("p 1in3 {} {}\n", sat.vars, sat.clauses.len());
    for [a, b, c] in &sat.clauses {
        out.push_str(&format!("{a} {b} {c}\n"));
    }
    out
}

/// Parses `TTFF`-style assignments (also accepts `1`/`0`).
pub fn parse_assignment(text: &str) -> Option<Vec<bool>> {
    text.trim()
        .chars()
        .map(|c| match c {
            'T' | 't' | '1' => Some(true),
            'F' | 'f' | '0' => Some(false),
            _ => None,
        })
        .collect()
}

pub fn format_assignment(a: &[bool]) -> String {
    a.iter().map(|&b| if b { 'T' } else { 'F' }).collect()
}
