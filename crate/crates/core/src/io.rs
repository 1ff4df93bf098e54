//! Plain-text formats. Lines starting with `#` and blank lines are ignored
//! everywhere.
//!
//! - matrix: `rows cols`, then one line of scalar tokens per row;
//! - graph: `n m`, then `m` lines `u v w` (0-indexed nodes);
//! - function: CSV with header `x,value` on a uniform grid;
//! - group: `n identity`, then the `n × n` Cayley table;
//! - representation: `group: <file or builtin:name>`, optionally
//!   `semiring: <name>`, then one line `perm: p₀ … ; weights: w₀ …` per
//!   group element in index order.

use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, MonomialMatrix, WeightedGraph};
use crate::representations::{FiniteGroup, Representation};
use crate::semiring::{format_real, Scalar, SemiringId};
use crate::transforms::{Grid, SampledFunction, GRID_TOL};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got {token:?}")))
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, what: &str) -> Result<(usize, usize, usize)> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| Error::Parse(format!("empty {what} file")))?;
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(parse_err(line, format!("expected two integers in the {what} header")));
    }
    Ok((parse_usize(parts[0], line)?, parse_usize(parts[1], line)?, line))
}

pub fn read_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_matrix(text: &str, s: SemiringId) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (rows, cols, _) = header(&mut lines, "matrix")?;
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, row) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {rows} matrix rows")))?;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(parse_err(line, format!("expected {cols} entries, got {}", tokens.len())));
        }
        for t in tokens {
            entries.push(s.parse_scalar(t).map_err(|e| parse_err(line, e))?);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected content after the last row"));
    }
    Matrix::new(s, rows, cols, entries)
}

pub fn write_matrix(a: &Matrix) -> String {
    let s = a.semiring();
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|&v| s.format_scalar(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str, s: SemiringId) -> Result<WeightedGraph> {
    let mut lines = content_lines(text);
    let (n, m, _) = header(&mut lines, "graph")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, edge) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} edges")))?;
        let parts: Vec<&str> = edge.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(line, "expected \"u v w\""));
        }
        let (u, v) = (parse_usize(parts[0], line)?, parse_usize(parts[1], line)?);
        let w = s.parse_scalar(parts[2]).map_err(|e| parse_err(line, e))?;
        edges.push((u, v, w));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "more edges than declared"));
    }
    WeightedGraph::new(n, edges)
}

pub fn write_graph(g: &WeightedGraph, s: SemiringId) -> String {
    let mut out = format!("{} {}\n", g.node_count(), g.edges().len());
    for &(u, v, w) in g.edges() {
        out.push_str(&format!("{u} {v} {}\n", s.format_scalar(w)));
    }
    out
}

/// Function CSV; the sample points must form a uniform grid up to a
/// relative tolerance of `1e-9`.
pub fn parse_function(text: &str, s: SemiringId) -> Result<SampledFunction> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, h)) if h.replace(' ', "") == "x,value" => {}
        Some((line, _)) => return Err(parse_err(line, "expected the header \"x,value\"")),
        None => return Err(Error::Parse("empty function file".into())),
    }
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (line, row) in lines {
        let (x, v) = row
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected \"x,value\""))?;
        let x: f64 = x
            .trim()
            .parse()
            .ok()
            .filter(|x: &f64| x.is_finite())
            .ok_or_else(|| parse_err(line, format!("invalid x {x:?}")))?;
        xs.push(x);
        values.push(s.parse_scalar(v).map_err(|e| parse_err(line, e))?);
    }
    let grid = uniform_grid(&xs)?;
    SampledFunction::new(s, grid, values)
}

fn uniform_grid(xs: &[f64]) -> Result<Grid> {
    match xs {
        [] => Err(Error::Parse("function file has no samples".into())),
        [x] => Grid::new(*x, 1.0, 1),
        _ => {
            let n = xs.len();
            let step = (xs[n - 1] - xs[0]) / (n - 1) as f64;
            if !(step > 0.0) {
                return Err(Error::Parse("sample points must increase".into()));
            }
            let scale = xs[0].abs().max(xs[n - 1].abs()).max(step);
            for (i, &x) in xs.iter().enumerate() {
                let expected = xs[0] + i as f64 * step;
                if (x - expected).abs() > GRID_TOL * scale {
                    return Err(Error::Parse(format!(
                        "sample {i} at x = {x} is off the uniform grid (expected {expected})"
                    )));
                }
            }
            Grid::new(xs[0], step, n)
        }
    }
}

pub fn write_function(f: &SampledFunction) -> String {
    write_function_with_header(f, "x")
}

/// Like [`write_function`] with a different name for the abscissa column.
pub fn write_function_with_header(f: &SampledFunction, x_name: &str) -> String {
    let mut out = format!("{x_name},value\n");
    for (i, &v) in f.values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", format_real(f.grid.point(i)), f.semiring.format_scalar(v)));
    }
    out
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (n, identity, _) = header(&mut lines, "group")?;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, row) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} table rows")))?;
        let row = row
            .split_whitespace()
            .map(|t| parse_usize(t, line))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected content after the table"));
    }
    FiniteGroup::with_identity(table, identity)
}

pub fn write_group(g: &FiniteGroup) -> String {
    let mut out = format!("{} {}\n", g.order(), g.identity());
    for row in g.table() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// A group given by a built-in name (`c6`, `q8`, `heis3`, …) or a group file.
pub fn load_group(spec: &str, base: Option<&Path>) -> Result<FiniteGroup> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return FiniteGroup::from_name(name);
    }
    let path = Path::new(spec);
    if path.exists() || spec.contains(['/', '.']) {
        let full = match base {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        };
        return parse_group(&read_file(full)?);
    }
    FiniteGroup::from_name(spec)
}

/// Parses a representation file; `resolve` turns the `group:` reference
/// into a group.
pub fn parse_representation(
    text: &str,
    resolve: impl FnOnce(&str) -> Result<FiniteGroup>,
) -> Result<Representation> {
    let mut lines = content_lines(text).peekable();
    let group_ref = match lines.next() {
        Some((line, l)) => l
            .strip_prefix("group:")
            .map(str::trim)
            .ok_or_else(|| parse_err(line, "expected \"group: <reference>\""))?,
        None => return Err(Error::Parse("empty representation file".into())),
    };
    let group = std::sync::Arc::new(resolve(group_ref)?);
    let mut s = SemiringId::MaxPlus;
    if let Some(&(line, l)) = lines.peek() {
        if let Some(name) = l.strip_prefix("semiring:") {
            s = name.trim().parse().map_err(|e| parse_err(line, e))?;
            lines.next();
        }
    }
    let mut images = Vec::with_capacity(group.order());
    for (line, l) in lines {
        let (perm, weights) = l
            .split_once(';')
            .ok_or_else(|| parse_err(line, "expected \"perm: …; weights: …\""))?;
        let perm = perm
            .trim()
            .strip_prefix("perm:")
            .ok_or_else(|| parse_err(line, "missing \"perm:\""))?;
        let weights = weights
            .trim()
            .strip_prefix("weights:")
            .ok_or_else(|| parse_err(line, "missing \"weights:\""))?;
        let perm = perm
            .split_whitespace()
            .map(|t| parse_usize(t, line))
            .collect::<Result<Vec<_>>>()?;
        let weights = weights
            .split_whitespace()
            .map(|t| s.parse_scalar(t).map_err(|e| parse_err(line, e)))
            .collect::<Result<Vec<_>>>()?;
        images.push(MonomialMatrix::new(s, perm, weights).map_err(|e| parse_err(line, e))?);
    }
    Representation::new(group, images)
}

pub fn read_representation(path: impl AsRef<Path>) -> Result<Representation> {
    let path = path.as_ref();
    let text = read_file(path)?;
    parse_representation(&text, |r| load_group(r, path.parent()))
}

pub fn write_representation(pi: &Representation, group_ref: &str) -> String {
    let s = pi.semiring();
    let mut out = format!("group: {group_ref}\nsemiring: {s}\n");
    for m in pi.images() {
        let perm: Vec<String> = m.perm().iter().map(usize::to_string).collect();
        let weights: Vec<String> = m.weights().iter().map(|&w| s.format_scalar(w)).collect();
        out.push_str(&format!("perm: {}; weights: {}\n", perm.join(" "), weights.join(" ")));
    }
    out
}

/// A vector given as comma- or space-separated scalar tokens.
pub fn parse_vector(text: &str, s: SemiringId) -> Result<Vec<Scalar>> {
    text.split([',', ' '])
        .filter(|t| !t.trim().is_empty())
        .map(|t| s.parse_scalar(t))
        .collect()
}
