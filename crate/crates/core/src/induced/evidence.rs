//! Induced-copy evidence and its text serialization.
//!
//! ```text
//! evidence begin
//! pattern P4
//! pattern_graph 4 0-1 1-2 2-3
//! source reduced_graph
//! claimed_lower_bound 1
//! derivation_gamma 1/12800
//! derivation_part 0 17 : 4
//! derivation_density 0 1 1/1
//! copy 4 9 2 31
//! evidence end
//! ```

use std::fmt::Write as _;

use num::traits::One;
use num::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Density, Graph, VertexSet};
use crate::rational::{format_rational, parse_rational, Rational};

use super::InducedCopy;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceSource {
    /// Found while probing non-homogeneous pairs of a partition.
    PartitionProbe,
    /// Sampled across the parts of an induced copy in the reduced graph.
    ReducedGraph,
}

impl EvidenceSource {
    fn tag(self) -> &'static str {
        match self {
            EvidenceSource::PartitionProbe => "partition_probe",
            EvidenceSource::ReducedGraph => "reduced_graph",
        }
    }
}

/// Part `part_index` of the partition, hosting one pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationPart {
    pub part_index: usize,
    pub members: VertexSet,
}

/// Why the graph has at least `ceil(prod |V_i| / 2)` copies: pattern vertex
/// `a` is hosted by `parts[a]`, and every pair of hosts is dense (at least
/// `1 - gamma`) on pattern edges and sparse (at most `gamma`) on non-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundDerivation {
    pub gamma: Rational,
    pub parts: Vec<DerivationPart>,
    /// `(a, b, d(V_a, V_b))` for pattern vertices `a < b`.
    pub pair_densities: Vec<(usize, usize, Density)>,
}

impl BoundDerivation {
    /// `ceil(prod |V_i| / 2)`.
    pub fn bound(&self) -> BigUint {
        let product = self.parts.iter().fold(BigUint::one(), |acc, p| {
            acc * BigUint::from(p.members.size())
        });
        (product + BigUint::one()) / BigUint::from(2u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCopyEvidence {
    pub pattern_name: String,
    pub pattern: Graph,
    pub copies: Vec<InducedCopy>,
    pub claimed_lower_bound: BigUint,
    pub derivation: Option<BoundDerivation>,
    pub source: EvidenceSource,
}

impl InducedCopyEvidence {
    pub fn write(&self, out: &mut String) {
        writeln!(out, "evidence begin").unwrap();
        writeln!(out, "pattern {}", self.pattern_name).unwrap();
        write!(out, "pattern_graph {}", self.pattern.n()).unwrap();
        for (u, v) in self.pattern.edges() {
            write!(out, " {u}-{v}").unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "source {}", self.source.tag()).unwrap();
        writeln!(out, "claimed_lower_bound {}", self.claimed_lower_bound).unwrap();
        if let Some(d) = &self.derivation {
            writeln!(out, "derivation_gamma {}", format_rational(&d.gamma)).unwrap();
            for (a, part) in d.parts.iter().enumerate() {
                write!(out, "derivation_part {a} {} :", part.part_index).unwrap();
                for v in part.members.iter() {
                    write!(out, " {v}").unwrap();
                }
                writeln!(out).unwrap();
            }
            for (a, b, dens) in &d.pair_densities {
                writeln!(out, "derivation_density {a} {b} {dens}").unwrap();
            }
        }
        for c in &self.copies {
            write!(out, "copy").unwrap();
            for v in &c.vertex_map {
                write!(out, " {v}").unwrap();
            }
            writeln!(out).unwrap();
        }
        writeln!(out, "evidence end").unwrap();
    }

    /// Parses a block written by [`InducedCopyEvidence::write`]; the
    /// `evidence begin` line must already have been consumed. `n` is the
    /// order of the host graph.
    pub fn parse<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, n: usize) -> Result<Self> {
        let mut pattern_name = None;
        let mut pattern = None;
        let mut source = None;
        let mut claimed = None;
        let mut gamma = None;
        let mut parts: Vec<DerivationPart> = Vec::new();
        let mut densities = Vec::new();
        let mut copies = Vec::new();
        let mut last_line = 0;
        for (line_no, line) in lines.by_ref() {
            last_line = line_no;
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let uint = |t: &str| -> Result<usize> {
                t.parse()
                    .map_err(|_| Error::parse(line_no, format!("bad integer {t:?}")))
            };
            match key {
                "evidence" if rest == "end" => {
                    let pattern: Graph = pattern
                        .ok_or_else(|| Error::parse(line_no, "evidence without pattern_graph"))?;
                    let derivation = match gamma {
                        Some(gamma) => Some(BoundDerivation {
                            gamma,
                            parts,
                            pair_densities: densities,
                        }),
                        None if parts.is_empty() => None,
                        None => {
                            return Err(Error::parse(line_no, "derivation parts without gamma"))
                        }
                    };
                    return Ok(InducedCopyEvidence {
                        pattern_name: pattern_name.ok_or_else(|| {
                            Error::parse(line_no, "evidence without pattern name")
                        })?,
                        pattern,
                        copies,
                        claimed_lower_bound: claimed.ok_or_else(|| {
                            Error::parse(line_no, "evidence without claimed_lower_bound")
                        })?,
                        derivation,
                        source: source
                            .ok_or_else(|| Error::parse(line_no, "evidence without source"))?,
                    });
                }
                "pattern" => pattern_name = Some(rest.to_string()),
                "pattern_graph" => {
                    let mut fields = rest.split_whitespace();
                    let m = uint(fields.next().unwrap_or(""))?;
                    let mut edges = Vec::new();
                    for f in fields {
                        let (a, b) = f.split_once('-').ok_or_else(|| {
                            Error::parse(line_no, format!("bad pattern edge {f:?}"))
                        })?;
                        edges.push((uint(a)?, uint(b)?));
                    }
                    pattern = Some(
                        Graph::from_edges(m, &edges)
                            .map_err(|e| Error::parse(line_no, e.to_string()))?,
                    );
                }
                "source" => {
                    source = Some(match rest {
                        "partition_probe" => EvidenceSource::PartitionProbe,
                        "reduced_graph" => EvidenceSource::ReducedGraph,
                        other => {
                            return Err(Error::parse(line_no, format!("unknown source {other:?}")))
                        }
                    })
                }
                "claimed_lower_bound" => {
                    claimed = Some(
                        rest.parse::<BigUint>()
                            .map_err(|_| Error::parse(line_no, format!("bad bound {rest:?}")))?,
                    )
                }
                "derivation_gamma" => {
                    gamma = Some(
                        parse_rational(rest).map_err(|e| Error::parse(line_no, e.to_string()))?,
                    )
                }
                "derivation_part" => {
                    let (head, members) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::parse(line_no, "derivation_part needs `:`"))?;
                    let head: Vec<usize> =
                        head.split_whitespace().map(uint).collect::<Result<_>>()?;
                    let [a, part_index] = head[..] else {
                        return Err(Error::parse(
                            line_no,
                            "derivation_part needs `<vertex> <part>`",
                        ));
                    };
                    if a != parts.len() {
                        return Err(Error::parse(line_no, "derivation parts out of order"));
                    }
                    let members: Vec<usize> = members
                        .split_whitespace()
                        .map(uint)
                        .collect::<Result<_>>()?;
                    if members.iter().any(|&v| v >= n) {
                        return Err(Error::parse(line_no, "derivation part vertex out of range"));
                    }
                    parts.push(DerivationPart {
                        part_index,
                        members: VertexSet::from_slice(n, &members),
                    });
                }
                "derivation_density" => {
                    let fields: Vec<&str> = rest.split_whitespace().collect();
                    let [a, b, d] = fields[..] else {
                        return Err(Error::parse(line_no, "derivation_density needs `a b e/p`"));
                    };
                    let (e, p) = d
                        .split_once('/')
                        .ok_or_else(|| Error::parse(line_no, "density must be e/p"))?;
                    let (e, p) = (uint(e)? as u64, uint(p)? as u64);
                    if p == 0 || e > p {
                        return Err(Error::parse(line_no, "density out of range"));
                    }
                    densities.push((uint(a)?, uint(b)?, Density::new(e, p)));
                }
                "copy" => {
                    let map: Vec<usize> =
                        rest.split_whitespace().map(uint).collect::<Result<_>>()?;
                    copies.push(InducedCopy::new(map));
                }
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("unknown evidence field {other:?}"),
                    ))
                }
            }
        }
        Err(Error::parse(
            last_line,
            "truncated evidence block (missing `evidence end`)",
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sample() -> InducedCopyEvidence {
        InducedCopyEvidence {
            pattern_name: "P4".into(),
            pattern: Graph::path(4),
            copies: vec![
                InducedCopy::new(vec![0, 1, 2, 3]),
                InducedCopy::new(vec![7, 6, 5, 4]),
            ],
            claimed_lower_bound: BigUint::from(8u32),
            derivation: Some(BoundDerivation {
                gamma: ratio(1, 16),
                parts: (0..4)
                    .map(|a| DerivationPart {
                        part_index: a + 10,
                        members: VertexSet::from_slice(8, &[a, 7 - a]),
                    })
                    .collect(),
                pair_densities: vec![(0, 1, Density::new(4, 4)), (0, 2, Density::new(0, 4))],
            }),
            source: EvidenceSource::ReducedGraph,
        }
    }

    #[test]
    fn derivation_bound_rounds_up() {
        let ev = sample();
        assert_eq!(ev.derivation.unwrap().bound(), BigUint::from(8u32));
    }

    #[test]
    fn write_then_parse() {
        let ev = sample();
        let mut text = String::new();
        ev.write(&mut text);
        let mut lines = text.lines().enumerate().skip(1).map(|(i, l)| (i + 1, l));
        assert_eq!(InducedCopyEvidence::parse(&mut lines, 8).unwrap(), ev);
    }

    #[test]
    fn truncated_block_is_rejected() {
        let mut text = String::new();
        sample().write(&mut text);
        let cut: Vec<&str> = text.lines().collect();
        let mut lines = cut[1..cut.len() - 1]
            .iter()
            .enumerate()
            .map(|(i, l)| (i + 2, *l));
        assert!(matches!(
            InducedCopyEvidence::parse(&mut lines, 8),
            Err(Error::Parse { .. })
        ));
    }
}
