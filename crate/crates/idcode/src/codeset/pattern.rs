//! Text format for periodic-code domains.
//!
//! ```text
//! period W H
//! <H rows of W characters: `#` codeword, `.` non-codeword>
//! ```
//!
//! Row 0 is `y = 0`, column 0 is `x = 0`. A trailing newline is optional;
//! anything else (short rows, stray characters, extra lines) is a parse
//! error carrying a 1-based line and column.

use super::PeriodicCode;
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, reason: impl Into<String>) -> Error {
    Error::PatternParse {
        line,
        column,
        reason: reason.into(),
    }
}

/// Parses the `period W H` format into a [`PeriodicCode`].
pub fn parse_pattern(text: &str) -> Result<PeriodicCode> {
    let mut lines = text.split('\n').enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let header = header.strip_suffix('\r').unwrap_or(header);
    let mut fields = header.split_whitespace();
    if fields.next() != Some("period") {
        return Err(parse_err(1, 1, "expected header `period W H`"));
    }
    let mut dim = |name: &str| -> Result<u32> {
        fields
            .next()
            .ok_or_else(|| parse_err(1, header.len() + 1, format!("missing {name}")))?
            .parse::<u32>()
            .map_err(|_| parse_err(1, 1, format!("{name} must be a positive integer")))
    };
    let width = dim("width")?;
    let height = dim("height")?;
    if fields.next().is_some() {
        return Err(parse_err(1, 1, "trailing fields after `period W H`"));
    }
    let mut cells = vec![false; width as usize * height as usize];
    for y in 0..height {
        let (idx, row) = lines
            .next()
            .ok_or_else(|| parse_err(y as usize + 2, 1, format!("expected {height} rows")))?;
        let lineno = idx + 1;
        let row = row.strip_suffix('\r').unwrap_or(row);
        let mut chars = row.chars();
        for x in 0..width {
            let c = chars
                .next()
                .ok_or_else(|| parse_err(lineno, x as usize + 1, format!("row is shorter than width {width}")))?;
            cells[(y * width + x) as usize] = match c {
                '#' => true,
                '.' => false,
                other => {
                    return Err(parse_err(
                        lineno,
                        x as usize + 1,
                        format!("expected `#` or `.`, found {other:?}"),
                    ))
                }
            };
        }
        if chars.next().is_some() {
            return Err(parse_err(
                lineno,
                width as usize + 1,
                format!("row is longer than width {width}"),
            ));
        }
    }
    for (idx, extra) in lines {
        let extra = extra.strip_suffix('\r').unwrap_or(extra);
        if !extra.is_empty() {
            return Err(parse_err(idx + 1, 1, "unexpected content after the last row"));
        }
    }
    // Dimension zero-checks live in the constructor.
    PeriodicCode::new(width, height, cells)
}

/// Renders a domain back into the `period W H` format, trailing newline
/// included. Parsing the result reproduces the code exactly.
pub fn pattern_string(code: &PeriodicCode) -> String {
    let (w, h) = (code.width(), code.height());
    let mut out = format!("period {w} {h}\n");
    for y in 0..h {
        for x in 0..w {
            out.push(if code.is_codeword(crate::lattice::GridPoint::new(x as i32, y as i32)) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}
