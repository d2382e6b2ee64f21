//! The line-oriented instance format.
//!
//! ```text
//! NSR 1
//! k 2
//! eps 1
//! size 4 4
//! rows 1 2 0 1        # r_1 (bottom) .. r_n
//! cols 1 1 1 1        # c_1 (left) .. c_m
//! blocks              # top block row first
//! 0 1?
//! 2 1
//! ```
//!
//! A trailing `?` marks an unreliable block. `#` starts a comment.

use std::fmt::Write as _;

use drtomo_core::{validate_instance, Instance, InstanceError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<InstanceError>),
}

fn join(errors: &[InstanceError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next line with content, as `(line number, tokens)`.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.inner.by_ref() {
            let text = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((idx + 1, tokens));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next_tokens()
            .ok_or_else(|| ParseError::Eof(format!("expected `{what}`")))
    }

    /// A line `<key> <values...>`.
    fn keyed(&mut self, key: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let (line, tokens) = self.expect(key)?;
        if tokens[0] != key {
            return Err(syntax(
                line,
                format!("expected `{key}`, found `{}`", tokens[0]),
            ));
        }
        Ok((line, tokens[1..].to_vec()))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("`{token}` is not a non-negative integer")))
}

fn numbers<T: std::str::FromStr>(
    line: usize,
    tokens: &[&str],
    count: usize,
    what: &str,
) -> Result<Vec<T>, ParseError> {
    if tokens.len() != count {
        return Err(syntax(
            line,
            format!("expected {count} {what}, found {}", tokens.len()),
        ));
    }
    tokens.iter().map(|t| number(line, t)).collect()
}

/// Parses an instance. Structural problems are errors; unequal row and
/// column totals are not, since that is an infeasibility verdict.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (line, header) = lines.expect("NSR 1")?;
    if header != ["NSR", "1"] {
        return Err(syntax(line, "expected header `NSR 1`"));
    }
    let (line, v) = lines.keyed("k")?;
    let k: usize = numbers(line, &v, 1, "value")?[0];
    if k == 0 {
        return Err(syntax(line, "block size must be positive"));
    }
    let (line, v) = lines.keyed("eps")?;
    let epsilon: u32 = numbers(line, &v, 1, "value")?[0];
    let (line, v) = lines.keyed("size")?;
    let size: Vec<usize> = numbers(line, &v, 2, "values")?;
    let (width, height) = (size[0], size[1]);
    if width == 0 || height == 0 || width % k != 0 || height % k != 0 {
        return Err(syntax(
            line,
            format!("size {width} x {height} is not a positive multiple of k = {k}"),
        ));
    }
    let (line, v) = lines.keyed("rows")?;
    let row_sums = numbers(line, &v, height, "row sums")?;
    let (line, v) = lines.keyed("cols")?;
    let col_sums = numbers(line, &v, width, "column sums")?;
    let (line, v) = lines.keyed("blocks")?;
    if !v.is_empty() {
        return Err(syntax(line, "`blocks` takes no values"));
    }
    let (bx, by) = (width / k, height / k);
    let mut rows_top_first = Vec::with_capacity(by);
    for _ in 0..by {
        let (line, tokens) = lines.expect("block row")?;
        if tokens.len() != bx {
            return Err(syntax(
                line,
                format!("expected {bx} block values, found {}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(bx);
        for t in tokens {
            let (digits, reliable) = match t.strip_suffix('?') {
                Some(d) => (d, false),
                None => (t, true),
            };
            row.push((number::<u32>(line, digits)?, reliable));
        }
        rows_top_first.push(row);
    }
    if let Some((line, _)) = lines.next_tokens() {
        return Err(syntax(line, "unexpected content after the block rows"));
    }
    let (block_values, reliable) = rows_top_first.into_iter().rev().flatten().unzip();
    let inst = Instance {
        k,
        epsilon,
        width,
        height,
        row_sums,
        col_sums,
        block_values,
        reliable,
    };
    let structural: Vec<InstanceError> = validate_instance(&inst)
        .into_iter()
        .filter(InstanceError::is_structural)
        .collect();
    if structural.is_empty() {
        Ok(inst)
    } else {
        Err(ParseError::Invalid(structural))
    }
}

fn join_numbers<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text of an instance; [`parse_instance`] inverts it.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NSR 1");
    let _ = writeln!(out, "k {}", inst.k);
    let _ = writeln!(out, "eps {}", inst.epsilon);
    let _ = writeln!(out, "size {} {}", inst.width, inst.height);
    let _ = writeln!(out, "rows {}", join_numbers(&inst.row_sums));
    let _ = writeln!(out, "cols {}", join_numbers(&inst.col_sums));
    let _ = writeln!(out, "blocks");
    let bx = inst.blocks_x();
    for v in (0..inst.blocks_y()).rev() {
        let row: Vec<String> = (0..bx)
            .map(|u| {
                let idx = v * bx + u;
                let mark = if inst.reliable[idx] { "" } else { "?" };
                format!("{}{mark}", inst.block_values[idx])
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "NSR 1\nk 2\neps 0\nsize 2 2\nrows 0 0\ncols 0 0\nblocks\n0\n";

    #[test]
    fn minimal_document() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.block_values, vec![0]);
        assert_eq!(inst.reliable, vec![true]);
        assert_eq!(write_instance(&inst), MINIMAL);
    }

    #[test]
    fn unreliable_marker_and_comments() {
        let text = "# a comment\nNSR 1\nk 2\neps 1   # noise\nsize 2 2\nrows 2 1\ncols 2 1\n\nblocks\n3?\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.block_values, vec![3]);
        assert_eq!(inst.reliable, vec![false]);
    }

    #[test]
    fn block_rows_are_top_first() {
        let text = "NSR 1\nk 2\neps 0\nsize 2 4\nrows 1 0 0 0\ncols 1 0\nblocks\n0\n1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.block_values, vec![1, 0]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "NSR 1\nk 2\neps 0\nsize 2 2\nrows 0 x\ncols 0 0\nblocks\n0\n";
        assert!(matches!(
            parse_instance(text),
            Err(ParseError::Syntax { line: 5, .. })
        ));
        let text = "NSR 1\nk 2\neps 0\nsize 2 2\nrows 0 0\ncols 0 0\nblocks\n0 0\n";
        assert!(matches!(
            parse_instance(text),
            Err(ParseError::Syntax { line: 8, .. })
        ));
        let text = "NSR 2\n";
        assert!(matches!(
            parse_instance(text),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        let text = "NSR 1\nk 2\neps 0\nsize 2 2\nrows 0 0\ncols 0 0\nblocks\n";
        assert!(matches!(parse_instance(text), Err(ParseError::Eof(_))));
        let text = "NSR 1\nk 2\neps 0\nsize 3 2\nrows 0 0\ncols 0 0 0\nblocks\n0\n";
        assert!(matches!(
            parse_instance(text),
            Err(ParseError::Syntax { line: 4, .. })
        ));
    }

    #[test]
    fn out_of_range_is_rejected_but_imbalance_is_not() {
        let text = "NSR 1\nk 2\neps 0\nsize 2 2\nrows 0 0\ncols 0 0\nblocks\n5\n";
        assert!(matches!(parse_instance(text), Err(ParseError::Invalid(_))));
        let text = "NSR 1\nk 2\neps 0\nsize 2 2\nrows 1 0\ncols 0 0\nblocks\n0\n";
        assert!(parse_instance(text).is_ok());
    }
}
