//! Self-describing certificate files.
//!
//! ```text
//! homog-certificate 1
//! branch homogeneous_set
//! eps 1/10
//! param gamma 1/12800
//! ...
//! digest n 200 edges 19900 sha256 9f2c...
//! trace k 200
//! trace round 200 0 19900
//! ...
//! set side dense
//! set density 19900/19900
//! set delta_actual 1/1
//! chain bound 19900/12800
//! ...
//! part 0 : 17
//! x 0 1 2 ...
//! end
//! ```
//!
//! The evidence branch carries an `evidence begin .. evidence end` block in
//! place of the `set`, `chain`, `part` and `x` lines.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Density, GraphDigest, VertexSet};
use crate::induced::InducedCopyEvidence;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::regularity::RoundStat;

use super::{
    Branch, Certificate, ChainCheck, HomogeneousSetCertificate, Outcome, Parameters, Side, Trace,
};

const MAGIC: &str = "homog-certificate 1";

pub fn write_certificate(outcome: &Outcome) -> String {
    let mut out = String::new();
    let p = &outcome.parameters;
    let r = format_rational;
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "branch {}", outcome.branch.tag()).unwrap();
    writeln!(out, "eps {}", r(&p.eps)).unwrap();
    writeln!(out, "param f {}", p.f).unwrap();
    writeln!(out, "param c {}", r(&p.c)).unwrap();
    writeln!(out, "param c_const {}", r(&p.c_const)).unwrap();
    writeln!(out, "param gamma {}", r(&p.gamma)).unwrap();
    writeln!(out, "param k0 {}", p.k0).unwrap();
    writeln!(out, "param k_max {}", p.k_max).unwrap();
    writeln!(out, "param clique_target {}", p.clique_target).unwrap();
    writeln!(out, "param b_target {}", r(&p.b_target)).unwrap();
    writeln!(out, "param greedy_guarantee {}", p.greedy_guarantee).unwrap();
    writeln!(out, "param tightened {}", p.tightened).unwrap();
    let d = &outcome.digest;
    writeln!(
        out,
        "digest n {} edges {} sha256 {}",
        d.n, d.edge_count, d.sha256
    )
    .unwrap();

    let t = &outcome.trace;
    writeln!(out, "trace n {}", t.n).unwrap();
    writeln!(out, "trace k0 {}", t.k0).unwrap();
    writeln!(out, "trace k_max {}", t.k_max).unwrap();
    writeln!(out, "trace k_clamped {}", t.k_clamped).unwrap();
    writeln!(out, "trace k {}", t.k).unwrap();
    for round in &t.rounds {
        writeln!(
            out,
            "trace round {} {} {}",
            round.k, round.bad_count, round.pairs
        )
        .unwrap();
    }
    writeln!(out, "trace bad_count {}", t.bad_count).unwrap();
    let opt = |out: &mut String, key: &str, v: Option<String>| {
        if let Some(v) = v {
            writeln!(out, "trace {key} {v}").unwrap();
        }
    };
    opt(
        &mut out,
        "r_prime_edges",
        t.r_prime_edges.map(|v| v.to_string()),
    );
    opt(
        &mut out,
        "r_prime_meets_bound",
        t.r_prime_meets_bound.map(|v| v.to_string()),
    );
    opt(&mut out, "a_target", t.a_target.map(|v| v.to_string()));
    opt(&mut out, "a_size", t.a_size.map(|v| v.to_string()));
    opt(
        &mut out,
        "exact_fallback",
        t.exact_fallback.map(|v| v.to_string()),
    );
    opt(&mut out, "b_size", t.b_size.map(|v| v.to_string()));
    opt(&mut out, "member", t.member.clone());

    match &outcome.certificate {
        Certificate::Homogeneous(c) => {
            writeln!(out, "set side {}", c.side.tag()).unwrap();
            writeln!(out, "set density {}", c.density).unwrap();
            writeln!(out, "set delta_actual {}", r(&c.delta_actual)).unwrap();
            let ch = &c.chain;
            writeln!(out, "chain internal_pairs {}", ch.internal_pairs).unwrap();
            writeln!(out, "chain cross_pairs {}", ch.cross_pairs).unwrap();
            writeln!(out, "chain bound {}", r(&ch.bound)).unwrap();
            writeln!(out, "chain allowance {}", r(&ch.allowance)).unwrap();
            writeln!(out, "chain holds {}", ch.holds).unwrap();
            writeln!(out, "chain t_meets_target {}", ch.t_meets_target).unwrap();
            for (i, members) in c.parts_used.iter().zip(&c.part_members) {
                write!(out, "part {i} :").unwrap();
                for v in members.iter() {
                    write!(out, " {v}").unwrap();
                }
                writeln!(out).unwrap();
            }
            write!(out, "x").unwrap();
            for v in c.x.iter() {
                write!(out, " {v}").unwrap();
            }
            writeln!(out).unwrap();
        }
        Certificate::Evidence(e) => e.write(&mut out),
    }
    out.push_str("end\n");
    out
}

fn field<T: FromStr>(line: usize, text: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {text:?}")))
}

fn rational(line: usize, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::parse(line, e.to_string()))
}

fn density(line: usize, text: &str) -> Result<Density> {
    let (e, p) = text
        .split_once('/')
        .ok_or_else(|| Error::parse(line, "density must be e/p"))?;
    let (e, p): (u64, u64) = (field(line, e)?, field(line, p)?);
    if p == 0 || e > p {
        return Err(Error::parse(line, "density out of range"));
    }
    Ok(Density::new(e, p))
}

fn vertex_list(line: usize, text: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::empty(n);
    for t in text.split_whitespace() {
        let v: usize = field(line, t)?;
        if v >= n {
            return Err(Error::parse(
                line,
                format!("vertex {v} out of range for n = {n}"),
            ));
        }
        if set.contains(v) {
            return Err(Error::parse(line, format!("vertex {v} listed twice")));
        }
        set.insert(v);
    }
    Ok(set)
}

fn require<T>(v: Option<T>, what: &str, line: usize) -> Result<T> {
    v.ok_or_else(|| Error::parse(line, format!("certificate is missing {what}")))
}

#[derive(Default)]
struct ParamFields {
    f: Option<usize>,
    c: Option<Rational>,
    c_const: Option<Rational>,
    gamma: Option<Rational>,
    k0: Option<u64>,
    k_max: Option<u64>,
    clique_target: Option<u64>,
    b_target: Option<Rational>,
    greedy_guarantee: Option<u64>,
    tightened: Option<bool>,
}

#[derive(Default)]
struct SetFields {
    side: Option<Side>,
    density: Option<Density>,
    delta_actual: Option<Rational>,
    internal_pairs: Option<u64>,
    cross_pairs: Option<u64>,
    bound: Option<Rational>,
    allowance: Option<Rational>,
    holds: Option<bool>,
    t_meets_target: Option<bool>,
    parts_used: Vec<usize>,
    part_members: Vec<VertexSet>,
    x: Option<VertexSet>,
}

pub fn parse_certificate(text: &str) -> Result<Outcome> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((line, other)) => {
            return Err(Error::parse(
                line,
                format!("expected {MAGIC:?}, found {other:?}"),
            ))
        }
        None => return Err(Error::parse(0, "empty certificate")),
    }
    let mut branch = None;
    let mut eps = None;
    let mut pf = ParamFields::default();
    let mut digest: Option<GraphDigest> = None;
    let mut trace = Trace::default();
    let mut sf = SetFields::default();
    let mut evidence = None;
    let mut last = 1;
    while let Some((ln, line)) = lines.next() {
        last = ln;
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let n = || {
            digest
                .as_ref()
                .map(|d| d.n)
                .ok_or_else(|| Error::parse(ln, "digest must precede vertex data"))
        };
        match key {
            "end" => {
                let branch = require(branch, "branch", ln)?;
                let eps = require(eps, "eps", ln)?;
                let parameters = Parameters {
                    eps,
                    f: require(pf.f, "param f", ln)?,
                    c: require(pf.c, "param c", ln)?,
                    c_const: require(pf.c_const, "param c_const", ln)?,
                    gamma: require(pf.gamma, "param gamma", ln)?,
                    k0: require(pf.k0, "param k0", ln)?,
                    k_max: require(pf.k_max, "param k_max", ln)?,
                    clique_target: require(pf.clique_target, "param clique_target", ln)?,
                    b_target: require(pf.b_target, "param b_target", ln)?,
                    greedy_guarantee: require(pf.greedy_guarantee, "param greedy_guarantee", ln)?,
                    tightened: require(pf.tightened, "param tightened", ln)?,
                };
                let certificate = match branch {
                    Branch::HomogeneousSet => Certificate::Homogeneous(HomogeneousSetCertificate {
                        x: require(sf.x, "x", ln)?,
                        density: require(sf.density, "set density", ln)?,
                        side: require(sf.side, "set side", ln)?,
                        parts_used: sf.parts_used,
                        part_members: sf.part_members,
                        delta_actual: require(sf.delta_actual, "set delta_actual", ln)?,
                        chain: ChainCheck {
                            internal_pairs: require(sf.internal_pairs, "chain internal_pairs", ln)?,
                            cross_pairs: require(sf.cross_pairs, "chain cross_pairs", ln)?,
                            bound: require(sf.bound, "chain bound", ln)?,
                            allowance: require(sf.allowance, "chain allowance", ln)?,
                            holds: require(sf.holds, "chain holds", ln)?,
                            t_meets_target: require(sf.t_meets_target, "chain t_meets_target", ln)?,
                        },
                    }),
                    Branch::PartitionEvidence | Branch::ReducedCopy => {
                        Certificate::Evidence(require(evidence, "evidence block", ln)?)
                    }
                };
                if let Some((extra, _)) = lines.next() {
                    return Err(Error::parse(extra, "content after `end`"));
                }
                return Ok(Outcome {
                    branch,
                    certificate,
                    parameters,
                    trace,
                    digest: require(digest, "digest", ln)?,
                });
            }
            "branch" => {
                branch = Some(match rest {
                    "partition_evidence" => Branch::PartitionEvidence,
                    "reduced_copy" => Branch::ReducedCopy,
                    "homogeneous_set" => Branch::HomogeneousSet,
                    other => return Err(Error::parse(ln, format!("unknown branch {other:?}"))),
                })
            }
            "eps" => eps = Some(rational(ln, rest)?),
            "param" => {
                let (name, v) = rest.split_once(' ').unwrap_or((rest, ""));
                match name {
                    "f" => pf.f = Some(field(ln, v)?),
                    "c" => pf.c = Some(rational(ln, v)?),
                    "c_const" => pf.c_const = Some(rational(ln, v)?),
                    "gamma" => pf.gamma = Some(rational(ln, v)?),
                    "k0" => pf.k0 = Some(field(ln, v)?),
                    "k_max" => pf.k_max = Some(field(ln, v)?),
                    "clique_target" => pf.clique_target = Some(field(ln, v)?),
                    "b_target" => pf.b_target = Some(rational(ln, v)?),
                    "greedy_guarantee" => pf.greedy_guarantee = Some(field(ln, v)?),
                    "tightened" => pf.tightened = Some(field(ln, v)?),
                    other => return Err(Error::parse(ln, format!("unknown parameter {other:?}"))),
                }
            }
            "digest" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                let ["n", n, "edges", e, "sha256", h] = f[..] else {
                    return Err(Error::parse(ln, "digest needs `n N edges E sha256 H`"));
                };
                digest = Some(GraphDigest {
                    n: field(ln, n)?,
                    edge_count: field(ln, e)?,
                    sha256: h.to_string(),
                });
            }
            "trace" => {
                let (name, v) = rest.split_once(' ').unwrap_or((rest, ""));
                match name {
                    "n" => trace.n = field(ln, v)?,
                    "k0" => trace.k0 = field(ln, v)?,
                    "k_max" => trace.k_max = field(ln, v)?,
                    "k_clamped" => trace.k_clamped = field(ln, v)?,
                    "k" => trace.k = field(ln, v)?,
                    "round" => {
                        let f: Vec<usize> = v
                            .split_whitespace()
                            .map(|t| field(ln, t))
                            .collect::<Result<_>>()?;
                        let [k, bad_count, pairs] = f[..] else {
                            return Err(Error::parse(ln, "round needs `k bad pairs`"));
                        };
                        trace.rounds.push(RoundStat {
                            k,
                            bad_count,
                            pairs,
                        });
                    }
                    "bad_count" => trace.bad_count = field(ln, v)?,
                    "r_prime_edges" => trace.r_prime_edges = Some(field(ln, v)?),
                    "r_prime_meets_bound" => trace.r_prime_meets_bound = Some(field(ln, v)?),
                    "a_target" => trace.a_target = Some(field(ln, v)?),
                    "a_size" => trace.a_size = Some(field(ln, v)?),
                    "exact_fallback" => trace.exact_fallback = Some(field(ln, v)?),
                    "b_size" => trace.b_size = Some(field(ln, v)?),
                    "member" => trace.member = Some(v.to_string()),
                    other => {
                        return Err(Error::parse(ln, format!("unknown trace field {other:?}")))
                    }
                }
            }
            "set" => {
                let (name, v) = rest.split_once(' ').unwrap_or((rest, ""));
                match name {
                    "side" => {
                        sf.side = Some(match v {
                            "sparse" => Side::Sparse,
                            "dense" => Side::Dense,
                            other => {
                                return Err(Error::parse(ln, format!("unknown side {other:?}")))
                            }
                        })
                    }
                    "density" => sf.density = Some(density(ln, v)?),
                    "delta_actual" => sf.delta_actual = Some(rational(ln, v)?),
                    other => return Err(Error::parse(ln, format!("unknown set field {other:?}"))),
                }
            }
            "chain" => {
                let (name, v) = rest.split_once(' ').unwrap_or((rest, ""));
                match name {
                    "internal_pairs" => sf.internal_pairs = Some(field(ln, v)?),
                    "cross_pairs" => sf.cross_pairs = Some(field(ln, v)?),
                    "bound" => sf.bound = Some(rational(ln, v)?),
                    "allowance" => sf.allowance = Some(rational(ln, v)?),
                    "holds" => sf.holds = Some(field(ln, v)?),
                    "t_meets_target" => sf.t_meets_target = Some(field(ln, v)?),
                    other => {
                        return Err(Error::parse(ln, format!("unknown chain field {other:?}")))
                    }
                }
            }
            "part" => {
                let (idx, members) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(ln, "part needs `index : members`"))?;
                sf.parts_used.push(field(ln, idx.trim())?);
                sf.part_members.push(vertex_list(ln, members, n()?)?);
            }
            "x" => sf.x = Some(vertex_list(ln, rest, n()?)?),
            "evidence" if rest == "begin" => {
                let n = n()?;
                evidence = Some(InducedCopyEvidence::parse(&mut lines, n)?);
            }
            other => {
                return Err(Error::parse(
                    ln,
                    format!("unknown certificate field {other:?}"),
                ))
            }
        }
    }
    Err(Error::parse(last, "truncated certificate (missing `end`)"))
}

pub fn read_certificate(path: impl AsRef<Path>) -> Result<Outcome> {
    parse_certificate(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::graph::Graph;
    use crate::oracle::{generate, GeneratorSpec};
    use crate::pipeline::{run, RunConfig};
    use crate::rational::ratio;

    #[test]
    fn homogeneous_round_trip() {
        let g = generate(&GeneratorSpec::cograph(80, 2)).unwrap();
        let out = run(&g, &ratio(1, 10), &FamilySpec::p4(), &RunConfig::default()).unwrap();
        let text = write_certificate(&out);
        assert_eq!(parse_certificate(&text).unwrap(), out);
    }

    #[test]
    fn evidence_round_trip() {
        let g = generate(&GeneratorSpec::gnp(60, ratio(1, 2), 1)).unwrap();
        let out = run(&g, &ratio(1, 10), &FamilySpec::p4(), &RunConfig::default()).unwrap();
        assert!(out.evidence().is_some());
        let text = write_certificate(&out);
        assert_eq!(parse_certificate(&text).unwrap(), out);
    }

    #[test]
    fn truncation_is_a_parse_error() {
        let out = run(
            &Graph::complete(50),
            &ratio(1, 10),
            &FamilySpec::p4(),
            &RunConfig::default(),
        )
        .unwrap();
        let text = write_certificate(&out);
        let lines: Vec<&str> = text.lines().collect();
        for cut in [1, 5, lines.len() / 2, lines.len() - 1] {
            let truncated = lines[..cut].join("\n");
            assert!(
                matches!(parse_certificate(&truncated), Err(Error::Parse { .. })),
                "cut at {cut}"
            );
        }
    }
}
