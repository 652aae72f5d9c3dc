//! Family definition files.
//!
//! ```text
//! family p4
//! c 1/2
//! const 1/1
//! graph P4
//! n 4
//! 0 1
//! 1 2
//! 2 3
//! end
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num::traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, parse_rational, Rational};

use super::{FamilySpec, Member};

pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let mut name = None;
    let mut c = None;
    let mut c_const = None;
    let mut members = Vec::new();
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    });
    let rational = |line_no: usize, v: &str| {
        parse_rational(v).map_err(|e| Error::parse(line_no, e.to_string()))
    };
    while let Some((line_no, line)) = lines.next() {
        let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let value = value.trim();
        match key {
            "family" => name = Some(value.to_string()),
            "c" => c = Some(rational(line_no, value)?),
            "const" => c_const = Some(rational(line_no, value)?),
            "graph" => {
                let member_name = value.to_string();
                let (hdr_no, header) = lines
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "graph block without `n` line"))?;
                let n: usize = header
                    .strip_prefix('n')
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| {
                        Error::parse(hdr_no, format!("expected `n <count>`, got {header:?}"))
                    })?;
                let mut edges = Vec::new();
                let mut closed = false;
                for (edge_no, edge_line) in lines.by_ref() {
                    if edge_line == "end" {
                        closed = true;
                        break;
                    }
                    let parsed: Vec<usize> = edge_line
                        .split_whitespace()
                        .map(str::parse)
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| {
                            Error::parse(edge_no, format!("bad edge line {edge_line:?}"))
                        })?;
                    let [u, v] = parsed[..] else {
                        return Err(Error::parse(
                            edge_no,
                            format!("expected `u v`, got {edge_line:?}"),
                        ));
                    };
                    edges.push((u, v));
                }
                if !closed {
                    return Err(Error::parse(
                        line_no,
                        format!("graph {member_name} missing `end`"),
                    ));
                }
                let graph = Graph::from_edges(n, &edges)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                members.push(Member::new(member_name, graph));
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive {other:?}"),
                ))
            }
        }
    }
    let name = name.ok_or_else(|| Error::parse(0, "missing `family <name>`"))?;
    let c = c.ok_or_else(|| Error::parse(0, "missing `c <p>/<q>`"))?;
    FamilySpec::new(name, members, c, c_const.unwrap_or_else(Rational::one))
        .map_err(|e| Error::parse(0, e.to_string()))
}

pub fn read_family(path: impl AsRef<Path>) -> Result<FamilySpec> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn write_family(fam: &FamilySpec) -> String {
    let mut out = String::new();
    writeln!(out, "family {}", fam.name).unwrap();
    writeln!(out, "c {}", format_rational(&fam.c)).unwrap();
    writeln!(out, "const {}", format_rational(&fam.c_const)).unwrap();
    for m in &fam.members {
        writeln!(out, "graph {}", m.name).unwrap();
        writeln!(out, "n {}", m.graph.n()).unwrap();
        for (u, v) in m.graph.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn parses_shipped_p4_family() {
        let fam = parse_family(include_str!("../../data/families/p4.fam")).unwrap();
        assert_eq!(fam, FamilySpec::p4());
    }

    #[test]
    fn round_trip() {
        let text = write_family(&FamilySpec::p4());
        assert_eq!(parse_family(&text).unwrap(), FamilySpec::p4());
    }

    #[test]
    fn multi_member_file() {
        let fam = parse_family(
            "family trio\nc 1/3\nconst 1/2\ngraph C4\nn 4\n0 1\n1 2\n2 3\n3 0\nend\ngraph K3\nn 3\n0 1\n1 2\n0 2\nend\n",
        )
        .unwrap();
        assert_eq!(fam.members.len(), 2);
        assert_eq!(fam.c, ratio(1, 3));
        assert_eq!(fam.c_const, ratio(1, 2));
        assert_eq!(fam.f(), 4);
        assert_eq!(fam.members[0].automorphisms, 8);
        assert_eq!(fam.members[1].automorphisms, 6);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "c 1/2\n",
            "family x\n",
            "family x\nc 1/2\ngraph A\nn 2\n0 1\n",
            "family x\nc 1/2\ngraph A\nn 2\n0 0\nend\n",
            "family x\nc 2/1\n",
            "family x\nc 1/2\nbogus 3\n",
        ] {
            assert!(
                matches!(parse_family(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
    }
}
