//! Text formats for matrices and graphs.
//!
//! Dense matrix: first line `n`, then `n` lines of `n` decimals.
//! Coordinate matrix: header `%SymCoord n m`, then `m` lines `i j value`
//! (1-based, `i <= j`). Graph: first line `n m`, then `m` lines `i j` (1-based).

use crate::error::{Error, Result};
use crate::matcore::SymMatrix;
use crate::specgraph::SupportGraph;

/// Relative asymmetry tolerated in the dense format.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let v = tok
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite value `{tok}`")));
    }
    Ok(v)
}

/// Parses either matrix format, chosen by the first non-blank line.
pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    match content_lines(text).next() {
        Some((_, first)) if first.starts_with("%SymCoord") => parse_coordinate(text),
        Some(_) => parse_dense(text),
        None => Err(parse_err(1, "empty input")),
    }
}

pub fn parse_dense(text: &str) -> Result<SymMatrix> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n = parse_usize(header, l0, "the dimension n")?;
    if n == 0 {
        return Err(parse_err(l0, "dimension must be at least 1"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(l0, format!("expected {n} rows")))?;
        let row = line
            .split_whitespace()
            .map(|t| parse_f64(t, ln))
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != n {
            return Err(parse_err(
                ln,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the last row"));
    }
    SymMatrix::from_rows_with_tolerance(&rows, SYMMETRY_TOLERANCE).map_err(|e| match e {
        Error::NotSymmetric { row, col } => parse_err(
            l0 + 1 + row,
            format!(
                "entries ({}, {}) and ({}, {}) differ",
                row + 1,
                col + 1,
                col + 1,
                row + 1
            ),
        ),
        other => other,
    })
}

pub fn parse_coordinate(text: &str) -> Result<SymMatrix> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "%SymCoord" {
        return Err(parse_err(l0, "expected header `%SymCoord n m`"));
    }
    let n = parse_usize(toks[1], l0, "the dimension n")?;
    let m = parse_usize(toks[2], l0, "the entry count m")?;
    if n == 0 {
        return Err(parse_err(l0, "dimension must be at least 1"));
    }
    let mut a = SymMatrix::zeros(n);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(l0, format!("expected {m} entries")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(ln, "expected `i j value`"));
        }
        let i = parse_usize(toks[0], ln, "a row index")?;
        let j = parse_usize(toks[1], ln, "a column index")?;
        let v = parse_f64(toks[2], ln)?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(parse_err(ln, format!("index out of range 1..={n}")));
        }
        if i > j {
            return Err(parse_err(ln, "coordinate entries must satisfy i <= j"));
        }
        if !seen.insert((i, j)) {
            return Err(parse_err(ln, format!("duplicate entry ({i}, {j})")));
        }
        a.set(i - 1, j - 1, v);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the last entry"));
    }
    Ok(a)
}

/// Dense text using shortest round-trip formatting, so parsing reproduces the matrix.
pub fn write_dense(a: &SymMatrix) -> String {
    let mut out = format!("{}\n", a.n());
    for i in 0..a.n() {
        let row: Vec<String> = (0..a.n()).map(|j| format!("{:e}", a.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_coordinate(a: &SymMatrix, tol_zero: f64) -> String {
    let mut entries = Vec::new();
    for i in 0..a.n() {
        for j in i..a.n() {
            let v = a.get(i, j);
            if v.abs() > tol_zero {
                entries.push(format!("{} {} {:e}", i + 1, j + 1, v));
            }
        }
    }
    let mut out = format!("%SymCoord {} {}\n", a.n(), entries.len());
    for e in entries {
        out.push_str(&e);
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<SupportGraph> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(l0, "expected header `n m`"));
    }
    let n = parse_usize(toks[0], l0, "the vertex count n")?;
    let m = parse_usize(toks[1], l0, "the edge count m")?;
    if n == 0 {
        return Err(parse_err(l0, "graph needs at least one vertex"));
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(l0, format!("expected {m} edges")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(ln, "expected `i j`"));
        }
        let i = parse_usize(toks[0], ln, "a vertex")?;
        let j = parse_usize(toks[1], ln, "a vertex")?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(parse_err(ln, format!("vertex out of range 1..={n}")));
        }
        if i == j {
            return Err(parse_err(ln, "self-loops are not allowed"));
        }
        let e = (i.min(j) - 1, i.max(j) - 1);
        if edges.contains(&e) {
            return Err(parse_err(ln, format!("duplicate edge {i} {j}")));
        }
        edges.push(e);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the last edge"));
    }
    SupportGraph::new(n, &edges)
}

pub fn write_graph(g: &SupportGraph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (i, j) in edges {
        out.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    out
}
