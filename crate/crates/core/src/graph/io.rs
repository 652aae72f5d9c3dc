//! Graph text formats.
//!
//! Edge list: a header `n <count>` followed by one `u v` pair per line.
//! Matrix: `n` lines of `n` characters `0`/`1`. Blank lines and `#`
//! comments are ignored in both; the format is picked from the first
//! significant line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::Graph;

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = significant_lines(text).peekable();
    let Some(&(_, first)) = lines.peek() else {
        return Err(Error::parse(0, "empty graph file"));
    };
    if first.starts_with('n') && first.split_whitespace().count() == 2 {
        parse_edge_list(lines)
    } else {
        parse_matrix(lines)
    }
}

fn parse_edge_list<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph> {
    let (line_no, header) = lines.next().expect("peeked");
    let n: usize = header
        .split_whitespace()
        .nth(1)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(line_no, format!("bad header {header:?}")))?;
    let mut rows = vec![BitSet::new(n); n];
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(
                line_no,
                format!("expected `u v`, got {line:?}"),
            ));
        };
        let endpoint = |t: &str| -> Result<usize> {
            let v: usize = t
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex {t:?}")))?;
            if v >= n {
                return Err(Error::parse(
                    line_no,
                    format!("vertex {v} out of range (n = {n})"),
                ));
            }
            Ok(v)
        };
        let (u, v) = (endpoint(a)?, endpoint(b)?);
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at {u}")));
        }
        if rows[u].contains(v) {
            return Err(Error::parse(line_no, format!("repeated edge {u}-{v}")));
        }
        rows[u].insert(v);
        rows[v].insert(u);
    }
    Graph::from_rows(rows).map_err(|e| Error::parse(0, e.to_string()))
}

fn parse_matrix<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph> {
    let lines: Vec<_> = lines.collect();
    let n = lines.len();
    let mut rows = vec![BitSet::new(n); n];
    for (u, &(line_no, line)) in lines.iter().enumerate() {
        if line.len() != n {
            return Err(Error::parse(
                line_no,
                format!("matrix row has {} entries, expected {n}", line.len()),
            ));
        }
        for (v, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if u == v => return Err(Error::parse(line_no, format!("self-loop at {u}"))),
                '1' => rows[u].insert(v),
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
    }
    for (u, &(line_no, _)) in lines.iter().enumerate() {
        for v in rows[u].iter() {
            if !rows[v].contains(u) {
                return Err(Error::parse(
                    line_no,
                    format!("matrix not symmetric at {u},{v}"),
                ));
            }
        }
    }
    Graph::from_rows(rows).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

/// Canonical edge-list rendering; parsing it back yields the same graph.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_graph_file(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_graph(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments() {
        let g = parse_graph("# a path\n\nn 4\n0 1\n1 2 # middle\n2 3\n").unwrap();
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn matrix_format() {
        let g = parse_graph("0100\n1010\n0101\n0010\n").unwrap();
        assert_eq!(g, Graph::path(4));
        assert!(parse_graph("010\n000\n000\n").is_err());
        assert!(parse_graph("110\n100\n000\n").is_err());
        assert!(parse_graph("01\n1\n").is_err());
    }

    #[test]
    fn edge_list_errors() {
        for bad in [
            "n 3\n0 1\n1 x\n",
            "n 3\n0 0\n",
            "n 3\n0 1\n1 0\n",
            "n 3\n0 5\n",
            "n 3\n0 1 2\n",
            "",
        ] {
            assert!(
                matches!(parse_graph(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn write_is_a_fixed_point() {
        let g = parse_graph("n 5\n3 1\n0 4\n2 1\n").unwrap();
        let text = write_graph(&g);
        assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
        assert_eq!(text, "n 5\n0 4\n1 2\n1 3\n");
    }
}
