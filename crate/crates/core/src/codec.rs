//! The `TRN1` text format.
//!
//! ```text
//! TRN1
//! <n>
//! <row 0: n characters '0'/'1'>
//! ...
//! <row n-1>
//! ```
//!
//! Column `j` of row `i` is `1` iff alternative `i` dominates `j`. Canonical
//! output uses `\n` line endings, one trailing newline, and no other
//! whitespace.

use std::fs;
use std::path::Path;

use crate::bits::AltSet;
use crate::error::{Error, Result};
use crate::tournament::Tournament;

pub const MAGIC: &str = "TRN1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<Tournament> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();

    if lines.first().copied() != Some(MAGIC) {
        return Err(parse_err(1, format!("expected header `{MAGIC}`")));
    }
    let n_line = lines
        .get(1)
        .ok_or_else(|| parse_err(2, "missing alternative count"))?;
    let n: usize = n_line
        .parse()
        .map_err(|_| parse_err(2, format!("invalid alternative count `{n_line}`")))?;
    if n < 2 {
        return Err(parse_err(2, format!("need at least 2 alternatives, got {n}")));
    }
    if lines.len() != n + 2 {
        return Err(parse_err(
            lines.len().min(n + 2) + 1,
            format!("expected {n} rows, found {}", lines.len() - 2),
        ));
    }

    let mut dominion = vec![AltSet::empty(); n];
    for (i, row) in lines[2..].iter().enumerate() {
        let line = i + 3;
        if row.len() != n {
            return Err(parse_err(
                line,
                format!("row {i} has length {}, expected {n}", row.len()),
            ));
        }
        for (j, ch) in row.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' if i == j => return Err(parse_err(line, format!("alternative {i} dominates itself"))),
                b'1' => dominion[i].insert(j),
                other => {
                    return Err(parse_err(
                        line,
                        format!("unexpected character `{}`", other as char),
                    ))
                }
            }
        }
        // Each pair is checked once both rows are known.
        for j in 0..i {
            match (dominion[j].contains(i), dominion[i].contains(j)) {
                (true, true) => return Err(parse_err(line, format!("pair ({j},{i}) is oriented both ways"))),
                (false, false) => return Err(parse_err(line, format!("pair ({j},{i}) has no orientation"))),
                _ => {}
            }
        }
    }
    Tournament::from_dominions(dominion).map_err(|e| parse_err(0, e.to_string()))
}

pub fn serialize(t: &Tournament) -> String {
    let n = t.n();
    let mut out = String::with_capacity(8 + n * (n + 1));
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&n.to_string());
    out.push('\n');
    for x in t.alternatives() {
        let d = t.dominion(x);
        for j in 0..n {
            out.push(if d.contains(j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn read_file(path: &Path) -> Result<Tournament> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text)
}

pub fn write_file(path: &Path, t: &Tournament) -> Result<()> {
    fs::write(path, serialize(t)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
