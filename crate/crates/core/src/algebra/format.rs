//! Plain-text algebra files.
//!
//! ```text
//! # quaternion-like table, one-based indices
//! dim 4
//! alpha 1 1 1 1
//! alpha 2 3 4 1
//! ```
//!
//! Unlisted triples are zero and duplicates are rejected. Two shorthand forms
//! replace the `alpha` lines: `table2 <I..VI> a12 b12 a21 b21 [a22 b22]`
//! (with `dim 2` or no `dim` line) and `cd <n>` as the only line.

use std::collections::HashSet;

use thiserror::Error;

use super::{cayley_dickson, StructureConstants, Table2D, TableFamily, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// One-based line number, 0 when the error concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn number(line: usize, tok: &str) -> Result<f64, ParseError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| err(line, format!("`{tok}` is not a number")))?;
    if !v.is_finite() {
        return Err(err(line, format!("`{tok}` is not finite")));
    }
    Ok(v)
}

fn index(line: usize, tok: &str, dim: usize) -> Result<usize, ParseError> {
    let v: usize = tok
        .parse()
        .map_err(|_| err(line, format!("`{tok}` is not an index")))?;
    if v == 0 || v > dim {
        return Err(err(line, format!("index {v} outside 1..={dim}")));
    }
    Ok(v - 1)
}

pub fn parse_algebra(text: &str) -> Result<StructureConstants, ParseError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| (n, l.split_whitespace().collect()))
        .collect();

    let Some((first_line, first)) = lines.first() else {
        return Err(err(0, "empty algebra file"));
    };

    match first[0] {
        "cd" => {
            if let Some((n, _)) = lines.get(1) {
                return Err(err(*n, "`cd` must be the only line"));
            }
            if first.len() != 2 {
                return Err(err(*first_line, "expected `cd <level>`"));
            }
            let level: u32 = first[1]
                .parse()
                .map_err(|_| err(*first_line, format!("`{}` is not a level", first[1])))?;
            cayley_dickson(level).map_err(|e| err(*first_line, e.to_string()))
        }
        "table2" => parse_table2(&lines),
        "dim" => {
            if first.len() != 2 {
                return Err(err(*first_line, "expected `dim <m>`"));
            }
            let dim: usize = first[1]
                .parse()
                .map_err(|_| err(*first_line, format!("`{}` is not a dimension", first[1])))?;
            if !(2..=MAX_DIM).contains(&dim) {
                return Err(err(
                    *first_line,
                    format!("dimension {dim} outside 2..={MAX_DIM}"),
                ));
            }
            if lines[1..].iter().any(|(_, t)| t[0] == "table2") {
                if dim != 2 {
                    return Err(err(*first_line, "`table2` requires `dim 2`"));
                }
                return parse_table2(&lines[1..]);
            }
            parse_alpha_lines(dim, &lines[1..])
        }
        other => Err(err(
            *first_line,
            format!("expected `dim`, `table2` or `cd`, found `{other}`"),
        )),
    }
}

fn parse_alpha_lines(
    dim: usize,
    lines: &[(usize, Vec<&str>)],
) -> Result<StructureConstants, ParseError> {
    let mut alpha = vec![0.0; dim * dim * dim];
    let mut seen = HashSet::new();
    for (n, toks) in lines {
        match toks[0] {
            "alpha" => {
                if toks.len() != 5 {
                    return Err(err(*n, "expected `alpha <i> <j> <k> <value>`"));
                }
                let i = index(*n, toks[1], dim)?;
                let j = index(*n, toks[2], dim)?;
                let k = index(*n, toks[3], dim)?;
                let v = number(*n, toks[4])?;
                if !seen.insert((i, j, k)) {
                    return Err(err(
                        *n,
                        format!("duplicate alpha {} {} {}", i + 1, j + 1, k + 1),
                    ));
                }
                alpha[(i * dim + j) * dim + k] = v;
            }
            "dim" => return Err(err(*n, "repeated `dim` line")),
            "cd" => return Err(err(*n, "`cd` must be the only line")),
            other => return Err(err(*n, format!("unknown directive `{other}`"))),
        }
    }
    StructureConstants::new(dim, alpha).map_err(|e| err(0, e.to_string()))
}

fn parse_table2(lines: &[(usize, Vec<&str>)]) -> Result<StructureConstants, ParseError> {
    let (n, toks) = &lines[0];
    if let Some((extra, _)) = lines.get(1) {
        return Err(err(*extra, "`table2` must be the only line besides `dim`"));
    }
    if toks[0] != "table2" {
        return Err(err(*n, "expected `table2`"));
    }
    let family: TableFamily = toks
        .get(1)
        .ok_or_else(|| err(*n, "missing table family"))?
        .parse()
        .map_err(|e: String| err(*n, e))?;
    let values = toks[2..]
        .iter()
        .map(|t| number(*n, t))
        .collect::<Result<Vec<_>, _>>()?;
    let table = table2_from_values(family, &values).map_err(|m| err(*n, m))?;
    Ok(table.to_structure_constants())
}

/// Builds a table from `a12 b12 a21 b21 [a22 b22]` (Table I additionally
/// takes `a11 b11` first).
pub(crate) fn table2_from_values(family: TableFamily, v: &[f64]) -> Result<Table2D, String> {
    match family {
        TableFamily::General => {
            if v.len() != 8 {
                return Err("table I needs a11 b11 a12 b12 a21 b21 a22 b22".into());
            }
            Ok(Table2D::general(
                v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7],
            ))
        }
        TableFamily::SingleIdempotent => {
            if v.len() != 6 {
                return Err("table II needs a12 b12 a21 b21 a22 b22".into());
            }
            Ok(Table2D::new(family, v[0], v[1], v[2], v[3], v[4], v[5]))
        }
        _ => {
            if v.len() != 4 {
                return Err(format!("table {family} needs a12 b12 a21 b21"));
            }
            Ok(Table2D::new(family, v[0], v[1], v[2], v[3], 0.0, 0.0))
        }
    }
}

/// Serializes as `dim` plus one `alpha` line per nonzero constant; values
/// use the shortest representation that parses back to the same bits.
pub fn write_algebra(sc: &StructureConstants) -> String {
    let dim = sc.dim();
    let mut out = format!("dim {dim}\n");
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let v = sc.get(i, j, k);
                if v != 0.0 {
                    out.push_str(&format!("alpha {} {} {} {:?}\n", i + 1, j + 1, k + 1, v));
                }
            }
        }
    }
    out
}
