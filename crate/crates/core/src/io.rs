//! Reading polytopes, matrices and rational vectors from files.

use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatVector};
use crate::polytope::RationalPolytope;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// A polytope in the text format of [`RationalPolytope`]'s `Display`, or as JSON
/// `{"dim": n, "vertices": [[...], ...]}`.
pub fn parse_polytope(s: &str) -> Result<RationalPolytope> {
    if s.trim_start().starts_with('{') {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    } else {
        s.parse()
    }
}

pub fn read_polytope(path: &Path) -> Result<RationalPolytope> {
    parse_polytope(&read(path)?)
}

/// An integer matrix with a leading "rows cols" line. The header may be omitted; a first line of
/// two integers is read as a header whenever it matches the rows that follow.
pub fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let lines: Vec<Vec<&str>> = s
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>())
        .filter(|l| !l.is_empty())
        .collect();
    let Some(first) = lines.first() else {
        return Err(Error::Parse("empty matrix".into()));
    };
    let with_header = first.len() == 2
        && lines.len() > 1
        && first[0].parse::<usize>().ok() == Some(lines.len() - 1)
        && lines[1..].iter().all(|l| Some(l.len()) == first[1].parse::<usize>().ok());
    if with_header {
        return s.parse();
    }
    let cols = first.len();
    let rows: Vec<Vec<num_bigint::BigInt>> = lines
        .iter()
        .map(|l| {
            if l.len() != cols {
                return Err(Error::Parse(format!("ragged row {l:?}")));
            }
            l.iter()
                .map(|t| t.parse().map_err(|e| Error::Parse(format!("entry {t:?}: {e}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(&rows, cols)
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    parse_matrix(&read(path)?)
}

/// One rational vector per nonempty line.
pub fn parse_rational_rows(s: &str) -> Result<Vec<RatVector>> {
    s.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

pub fn read_rational_rows(path: &Path) -> Result<Vec<RatVector>> {
    parse_rational_rows(&read(path)?)
}
