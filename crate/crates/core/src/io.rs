//! Plain-text formats.
//!
//! ```text
//! metric <n>              n rows of n comma-separated distances
//! points <n> <dim>        n rows of dim comma-separated coordinates
//! navgraph <n> <edges>    one "s t" pair per line, 0-indexed
//! setcover <n> <m>        m rows of space-separated element indices
//! ```
//!
//! Floats are written in shortest round-trip form, so reading back a written
//! file gives bit-identical values.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::NavGraph;
use crate::metric::{Metric, PointSet};
use crate::setcover::SetCoverSpec;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-blank lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    tag: &str,
    fields: usize,
) -> Result<Vec<usize>> {
    let (ln, line) = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut words = line.split_whitespace();
    if words.next() != Some(tag) {
        return Err(parse_err(ln, format!("expected header `{tag} ...`")));
    }
    let nums = words
        .map(|w| {
            w.parse::<usize>()
                .map_err(|e| parse_err(ln, format!("{w:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if nums.len() != fields {
        return Err(parse_err(
            ln,
            format!("`{tag}` header takes {fields} numbers"),
        ));
    }
    Ok(nums)
}

fn float_row(ln: usize, line: &str, want: usize) -> Result<Vec<f64>> {
    let row = line
        .split(',')
        .map(|w| {
            let w = w.trim();
            w.parse::<f64>()
                .map_err(|e| parse_err(ln, format!("{w:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if row.len() != want {
        return Err(parse_err(
            ln,
            format!("expected {want} values, got {}", row.len()),
        ));
    }
    Ok(row)
}

fn float_rows<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    rows: usize,
    cols: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(rows * cols);
    let mut last = 1;
    for _ in 0..rows {
        let (ln, line) = it
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {rows} rows")))?;
        out.extend(float_row(ln, line, cols)?);
        last = ln;
    }
    trailing(it)?;
    Ok(out)
}

fn trailing<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<()> {
    match it.next() {
        Some((ln, _)) => Err(parse_err(ln, "unexpected trailing line")),
        None => Ok(()),
    }
}

fn join_floats(out: &mut String, row: &[f64]) {
    for (k, v) in row.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

pub fn write_metric(m: &Metric) -> String {
    let mut out = format!("metric {}\n", m.n());
    for i in 0..m.n() {
        join_floats(&mut out, m.row(i));
    }
    out
}

/// Parses a metric file, including the triangle inequality check.
pub fn read_metric(text: &str) -> Result<Metric> {
    let mut it = lines(text);
    let n = header(&mut it, "metric", 1)?[0];
    let dist = float_rows(&mut it, n, n)?;
    Metric::new_checked(n, dist)
}

pub fn write_points(ps: &PointSet) -> String {
    let mut out = format!("points {} {}\n", ps.n_points(), ps.dim());
    for i in 0..ps.n_points() {
        join_floats(&mut out, ps.point(i));
    }
    out
}

pub fn read_points(text: &str) -> Result<PointSet> {
    let mut it = lines(text);
    let h = header(&mut it, "points", 2)?;
    let coords = float_rows(&mut it, h[0], h[1])?;
    PointSet::new(h[1], coords)
}

/// Reads either a metric file or a point file, the latter turned into its
/// Euclidean metric.
pub fn read_metric_or_points(text: &str) -> Result<Metric> {
    let first = lines(text).next().map(|(_, l)| l).unwrap_or("");
    if first.starts_with("points") {
        Metric::from_points(&read_points(text)?)
    } else {
        read_metric(text)
    }
}

pub fn write_graph(g: &NavGraph) -> String {
    let mut out = format!("navgraph {} {}\n", g.n(), g.edge_count());
    for (s, t) in g.edges() {
        writeln!(out, "{s} {t}").unwrap();
    }
    out
}

pub fn read_graph(text: &str) -> Result<NavGraph> {
    let mut it = lines(text);
    let h = header(&mut it, "navgraph", 2)?;
    let (n, count) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, line) = it
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {count} edges, got {}", edges.len())))?;
        let ends = usize_words(ln, line)?;
        if ends.len() != 2 {
            return Err(parse_err(ln, "expected `s t`"));
        }
        if ends[0] >= n || ends[1] >= n || ends[0] == ends[1] {
            return Err(parse_err(ln, format!("bad edge {} {}", ends[0], ends[1])));
        }
        edges.push((ends[0], ends[1]));
    }
    trailing(&mut it)?;
    let g = NavGraph::from_edges(n, edges)?;
    if g.edge_count() != count {
        return Err(parse_err(1, "duplicate edges"));
    }
    Ok(g)
}

fn usize_words(ln: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|e| parse_err(ln, format!("{w:?}: {e}")))
        })
        .collect()
}

pub fn write_setcover(spec: &SetCoverSpec) -> String {
    let mut out = format!("setcover {} {}\n", spec.n_elements(), spec.n_sets());
    for set in spec.sets() {
        let words: Vec<String> = set.iter().map(usize::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// Empty sets are written as blank lines, so rows are taken line by line
/// after the header rather than skipping blanks.
pub fn read_setcover(text: &str) -> Result<SetCoverSpec> {
    let mut raw = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut head = raw.by_ref().skip_while(|(_, l)| l.is_empty());
    let h = header(&mut head, "setcover", 2)?;
    let (n, m) = (h[0], h[1]);
    let mut sets = Vec::with_capacity(m);
    let mut last = 1;
    for _ in 0..m {
        let (ln, line) = raw
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {m} sets")))?;
        let set = usize_words(ln, line)?;
        if let Some(&x) = set.iter().find(|&&x| x >= n) {
            return Err(parse_err(ln, format!("element {x} out of range")));
        }
        sets.push(set);
        last = ln;
    }
    if let Some((ln, _)) = raw.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(ln, "unexpected trailing line"));
    }
    SetCoverSpec::new(n, sets)
}
