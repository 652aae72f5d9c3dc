//! Partition text format.
//!
//! ```text
//! partition
//! k 3
//! gamma 1/20
//! membership 0 1 2 0 1 2
//! labels
//! L
//! BH
//! bad_count 1
//! end
//! ```
//!
//! `membership` gives the part of each vertex; label row `j` lists the pairs
//! `(0, j) .. (j-1, j)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::rational::{format_rational, parse_rational};

use super::{pair_index, PairLabel, PairLabels, RegularPartition};

pub fn write_partition(p: &RegularPartition) -> String {
    let n = p.parts.first().map_or(0, VertexSet::universe);
    let mut membership = vec![0usize; n];
    for (i, part) in p.parts.iter().enumerate() {
        for v in part.iter() {
            membership[v] = i;
        }
    }
    let mut out = String::from("partition\n");
    writeln!(out, "k {}", p.k()).unwrap();
    writeln!(out, "gamma {}", format_rational(&p.gamma)).unwrap();
    write!(out, "membership").unwrap();
    for m in membership {
        write!(out, " {m}").unwrap();
    }
    writeln!(out, "\nlabels").unwrap();
    for j in 1..p.k() {
        let row: String = (0..j).map(|i| p.label(i, j).symbol()).collect();
        writeln!(out, "{row}").unwrap();
    }
    writeln!(out, "bad_count {}", p.bad_count()).unwrap();
    out.push_str("end\n");
    out
}

pub fn parse_partition(text: &str) -> Result<RegularPartition> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("truncated partition: expected {what}")))
    };
    let field = |(no, line): (usize, &str), key: &str| -> Result<String> {
        line.strip_prefix(key)
            .map(|v| v.trim().to_string())
            .ok_or_else(|| Error::parse(no, format!("expected `{key}`, got {line:?}")))
    };
    let header = next("partition")?;
    if header.1 != "partition" {
        return Err(Error::parse(header.0, "expected `partition`"));
    }
    let k_line = next("k")?;
    let k: usize = field(k_line, "k")?
        .parse()
        .map_err(|_| Error::parse(k_line.0, "bad k"))?;
    let g_line = next("gamma")?;
    let gamma = parse_rational(&field(g_line, "gamma")?)
        .map_err(|e| Error::parse(g_line.0, e.to_string()))?;
    let m_line = next("membership")?;
    let membership: Vec<usize> = field(m_line, "membership")?
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(m_line.0, format!("bad part index {t:?}")))
        })
        .collect::<Result<_>>()?;
    let n = membership.len();
    let mut parts = vec![VertexSet::empty(n); k];
    for (v, &p) in membership.iter().enumerate() {
        if p >= k {
            return Err(Error::parse(
                m_line.0,
                format!("vertex {v} in part {p} >= k"),
            ));
        }
        parts[p].insert(v);
    }
    let l_line = next("labels")?;
    if l_line.1 != "labels" {
        return Err(Error::parse(l_line.0, "expected `labels`"));
    }
    let mut labels = vec![PairLabel::Low; k * k.saturating_sub(1) / 2];
    for j in 1..k {
        let (no, row) = next("label row")?;
        if row.chars().count() != j {
            return Err(Error::parse(
                no,
                format!("label row {j} must have {j} entries"),
            ));
        }
        for (i, ch) in row.chars().enumerate() {
            labels[pair_index(i, j)] = match ch {
                'L' => PairLabel::Low,
                'H' => PairLabel::High,
                'B' => PairLabel::Bad,
                other => return Err(Error::parse(no, format!("unknown label {other:?}"))),
            };
        }
    }
    let b_line = next("bad_count")?;
    let bad_count: usize = field(b_line, "bad_count")?
        .parse()
        .map_err(|_| Error::parse(b_line.0, "bad bad_count"))?;
    if bad_count != labels.iter().filter(|&&l| l == PairLabel::Bad).count() {
        return Err(Error::parse(
            b_line.0,
            "bad_count disagrees with the label triangle",
        ));
    }
    let end = next("end")?;
    if end.1 != "end" {
        return Err(Error::parse(end.0, "expected `end`"));
    }
    Ok(RegularPartition {
        parts,
        gamma,
        labels: PairLabels {
            k,
            labels,
            bad_count,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{equipartition, Graph};
    use crate::rational::ratio;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(9);
        let p = RegularPartition::new(&g, equipartition(&g, 3, 2).unwrap(), ratio(1, 20));
        let text = write_partition(&p);
        assert_eq!(parse_partition(&text).unwrap(), p);
    }

    #[test]
    fn rejects_inconsistent_bad_count() {
        let text = "partition\nk 2\ngamma 1/20\nmembership 0 1\nlabels\nB\nbad_count 0\nend\n";
        assert!(parse_partition(text).is_err());
        let text = "partition\nk 2\ngamma 1/20\nmembership 0 1\nlabels\nB\nbad_count 1\n";
        assert!(parse_partition(text).is_err());
    }
}
