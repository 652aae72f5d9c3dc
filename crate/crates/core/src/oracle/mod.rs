//! Brute-force ground truth, generators and the certificate verifier.
//!
//! Nothing here reuses the density, embedding or digest code of the modules
//! it checks: the verifier works from its own adjacency matrix built from
//! the edge list.

mod generate;
mod manifest;

use std::collections::HashSet;
use std::fmt;

use num::{BigInt, BigUint, One};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::induced::InducedCopyEvidence;
use crate::pipeline::{Certificate, HomogeneousSetCertificate, Outcome, Side};
use crate::rational::Rational;

pub use generate::{generate, GeneratorKind, GeneratorSpec};
pub use manifest::{parse_manifest, read_manifest, write_manifest};

/// Largest `n` accepted by [`brute_best_homogeneous`].
pub const BRUTE_CAP: usize = 18;

/// Plain adjacency matrix.
struct Matrix {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Matrix {
    fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Matrix { n, adj }
    }

    fn edges_within(&self, xs: &[usize]) -> u64 {
        let mut e = 0;
        for (i, &u) in xs.iter().enumerate() {
            for &v in &xs[i + 1..] {
                e += self.adj[u][v] as u64;
            }
        }
        e
    }

    fn edges_between(&self, a: &[usize], b: &[usize]) -> u64 {
        let mut e = 0;
        for &u in a {
            for &v in b {
                e += self.adj[u][v] as u64;
            }
        }
        e
    }

    fn sha256(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("n {}\n", self.n));
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    h.update(format!("{u} {v}\n"));
                }
            }
        }
        hex::encode(h.finalize())
    }
}

/// `a / b <= r`, by cross-multiplication.
fn frac_le(a: u64, b: u64, r: &Rational) -> bool {
    BigInt::from(a) * r.denom() <= r.numer() * BigInt::from(b)
}

/// Every `m`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, m: usize, mut visit: impl FnMut(&[usize])) {
    if m > n {
        return;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..m).rev().find(|&i| idx[i] != i + n - m) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of vertex subsets of `g` inducing a graph isomorphic to
/// `pattern`, by trying every subset and every bijection.
pub fn brute_count_induced(g: &Graph, pattern: &Graph) -> u64 {
    let host = Matrix::of(g);
    let pat = Matrix::of(pattern);
    let m = pat.n;
    let mut count = 0;
    for_each_subset(host.n, m, |subset| {
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let fits = (0..m).all(|a| {
                (a + 1..m).all(|b| pat.adj[a][b] == host.adj[subset[perm[a]]][subset[perm[b]]])
            });
            if fits {
                count += 1;
                return;
            }
            if !next_permutation(&mut perm) {
                return;
            }
        }
    });
    count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteHomogeneous {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// The largest `X` with `d(X) <= eps` or `d(X) >= 1 - eps`, by exhaustive
/// search from the largest size down. Sets of fewer than two vertices count
/// as homogeneous. Accepts `eps = 0`.
pub fn brute_best_homogeneous(g: &Graph, eps: &Rational) -> Result<BruteHomogeneous> {
    let n = g.n();
    if n > BRUTE_CAP {
        return Err(Error::Capacity(format!(
            "exhaustive search is capped at n = {BRUTE_CAP}, got {n}"
        )));
    }
    let m = Matrix::of(g);
    for size in (2..=n).rev() {
        let pairs = (size * (size - 1) / 2) as u64;
        let mut found = None;
        for_each_subset(n, size, |s| {
            if found.is_some() {
                return;
            }
            let e = m.edges_within(s);
            if frac_le(e, pairs, eps) || frac_le(pairs - e, pairs, eps) {
                found = Some(s.to_vec());
            }
        });
        if let Some(witness) = found {
            return Ok(BruteHomogeneous { size, witness });
        }
    }
    Ok(BruteHomogeneous {
        size: n.min(1),
        witness: (0..n.min(1)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }

    /// Whether the certificate was computed on a different graph.
    pub fn digest_mismatch(&self) -> bool {
        self.checks.iter().any(|c| c.name == "digest" && !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "verified"
            } else {
                "rejected"
            }
        )
    }
}

/// Re-derives every claim in `outcome` from `g`. Failures are report
/// entries, never errors.
pub fn verify_outcome(g: &Graph, outcome: &Outcome, eps: &Rational) -> VerificationReport {
    let mut r = VerificationReport::default();
    let m = Matrix::of(g);
    let total: u64 = (0..m.n)
        .map(|u| (u + 1..m.n).filter(|&v| m.adj[u][v]).count() as u64)
        .sum();
    let d = &outcome.digest;
    let sha = m.sha256();
    r.check(
        "digest",
        d.n == m.n && d.edge_count == total && d.sha256 == sha,
        format!(
            "certificate n={} edges={} sha256={}; graph n={} edges={total} sha256={sha}",
            d.n, d.edge_count, d.sha256, m.n
        ),
    );
    r.check(
        "eps",
        &outcome.parameters.eps == eps,
        format!(
            "certificate eps {} vs requested {}",
            outcome.parameters.eps, eps
        ),
    );
    match &outcome.certificate {
        Certificate::Homogeneous(c) => verify_set(&mut r, &m, outcome, c, eps),
        Certificate::Evidence(e) => verify_evidence(&mut r, &m, e),
    }
    r
}

fn verify_set(
    r: &mut VerificationReport,
    m: &Matrix,
    outcome: &Outcome,
    c: &HomogeneousSetCertificate,
    eps: &Rational,
) {
    let n = m.n;
    if !r.check(
        "universe",
        c.x.universe() == n,
        format!("X is over {} vertices, graph has {n}", c.x.universe()),
    ) {
        return;
    }
    let xs = c.x.to_vec();
    let size = xs.len() as u64;
    if !r.check("size", size >= 2, format!("|X| = {size}")) {
        return;
    }
    let pairs = size * (size - 1) / 2;
    let e = m.edges_within(&xs);
    r.check(
        "density",
        c.density.edges == e && c.density.pairs == pairs,
        format!("claimed {}, recounted {e}/{pairs}", c.density),
    );
    let side_ok = match c.side {
        Side::Sparse => frac_le(e, pairs, eps),
        Side::Dense => frac_le(pairs - e, pairs, eps),
    };
    r.check(
        "side",
        side_ok,
        format!("{} side with recounted density {e}/{pairs}", c.side.tag()),
    );
    r.check(
        "delta_actual",
        c.delta_actual == Rational::new(BigInt::from(size), BigInt::from(n)),
        format!("claimed {}, |X|/n = {size}/{n}", c.delta_actual),
    );

    let distinct: HashSet<usize> = c.parts_used.iter().copied().collect();
    let mut seen = vec![false; n];
    let mut disjoint =
        distinct.len() == c.parts_used.len() && c.parts_used.len() == c.part_members.len();
    let mut sizes = Vec::new();
    for p in &c.part_members {
        let vs = p.to_vec();
        sizes.push(vs.len() as u64);
        for v in vs {
            if v >= n || seen[v] {
                disjoint = false;
            } else {
                seen[v] = true;
            }
        }
    }
    let union_ok =
        disjoint && xs.iter().all(|&v| seen[v]) && seen.iter().filter(|&&s| s).count() == xs.len();
    r.check(
        "parts",
        union_ok,
        format!(
            "{} distinct disjoint parts whose union is X",
            c.parts_used.len()
        ),
    );
    let t = c.parts_used.len() as u64;
    let k = outcome.trace.k as u64;
    r.check(
        "size_vs_trace",
        k >= 1 && k <= n as u64 && size >= t * (n as u64 / k.max(1)),
        format!("|X| = {size}, t = {t}, k = {k}, n = {n}"),
    );
    let internal: u64 = sizes.iter().map(|s| s * s.saturating_sub(1) / 2).sum();
    let cross = pairs - internal.min(pairs);
    let gamma = &outcome.parameters.gamma;
    let bound = Rational::from_integer(BigInt::from(internal))
        + gamma * Rational::from_integer(BigInt::from(cross));
    let allowance = eps * Rational::from_integer(BigInt::from(pairs));
    let ch = &c.chain;
    r.check(
        "chain",
        ch.internal_pairs == internal
            && ch.cross_pairs == cross
            && ch.bound == bound
            && ch.allowance == allowance
            && ch.holds == (bound <= allowance),
        format!("internal {internal}, cross {cross}, bound {bound}, allowance {allowance}"),
    );
}

fn verify_evidence(r: &mut VerificationReport, m: &Matrix, e: &InducedCopyEvidence) {
    let n = m.n;
    let pat = Matrix::of(&e.pattern);
    let size = pat.n;
    r.check(
        "copies_present",
        !e.copies.is_empty(),
        format!("{} copies", e.copies.len()),
    );
    let mut keys = HashSet::new();
    let mut valid = 0u64;
    for c in &e.copies {
        let map = &c.vertex_map;
        let injective = map.len() == size
            && map.iter().all(|&v| v < n)
            && map.iter().collect::<HashSet<_>>().len() == size;
        let induced = injective
            && (0..size).all(|a| (a + 1..size).all(|b| pat.adj[a][b] == m.adj[map[a]][map[b]]));
        if !r.check(
            "copy",
            induced,
            format!(
                "{map:?} {}",
                if induced {
                    "induces the pattern"
                } else {
                    "is not an induced copy"
                }
            ),
        ) {
            continue;
        }
        let mut key = map.clone();
        key.sort_unstable();
        if r.check("distinct", keys.insert(key), format!("{map:?}")) {
            valid += 1;
        }
    }

    let mut derived: Option<BigUint> = None;
    if let Some(d) = &e.derivation {
        let gamma = &d.gamma;
        let m2 = (size * size.saturating_sub(1) / 2) as u64;
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let union_ok = Rational::from_integer(BigInt::from(m2)) * gamma < half;
        r.check(
            "union_bound",
            union_ok,
            format!("C({size}, 2) * gamma = {m2} * {gamma}"),
        );
        let hosts: Vec<Vec<usize>> = d.parts.iter().map(|p| p.members.to_vec()).collect();
        let mut owner = vec![usize::MAX; n];
        let mut parts_ok = hosts.len() == size && hosts.iter().all(|h| !h.is_empty());
        for (a, h) in hosts.iter().enumerate() {
            for &v in h {
                if v >= n || owner[v] != usize::MAX {
                    parts_ok = false;
                } else {
                    owner[v] = a;
                }
            }
        }
        r.check(
            "derivation_parts",
            parts_ok,
            format!(
                "{} non-empty disjoint parts for {size} pattern vertices",
                hosts.len()
            ),
        );
        let mut densities_ok =
            parts_ok && d.pair_densities.len() == size * size.saturating_sub(1) / 2;
        if parts_ok {
            let mut covered = HashSet::new();
            for (a, b, dens) in &d.pair_densities {
                let (a, b) = (*a, *b);
                if a >= b || b >= size || !covered.insert((a, b)) {
                    densities_ok = false;
                    continue;
                }
                let cross = m.edges_between(&hosts[a], &hosts[b]);
                let total = (hosts[a].len() * hosts[b].len()) as u64;
                let fits = if pat.adj[a][b] {
                    frac_le(total - cross, total, gamma)
                } else {
                    frac_le(cross, total, gamma)
                };
                if !(dens.edges == cross && dens.pairs == total && fits) {
                    densities_ok = false;
                }
            }
        }
        r.check(
            "derivation_densities",
            densities_ok,
            "every host pair recounted and on the pattern's side of gamma",
        );
        if union_ok && parts_ok && densities_ok {
            let product = hosts
                .iter()
                .fold(BigUint::one(), |acc, h| acc * BigUint::from(h.len()));
            derived = Some((product + BigUint::one()) / BigUint::from(2u32));
        }
    }
    let supported = derived
        .clone()
        .unwrap_or_default()
        .max(BigUint::from(valid));
    r.check(
        "claimed_lower_bound",
        e.claimed_lower_bound <= supported,
        format!(
            "claimed {}, supported {} (derivation {}, verified copies {valid})",
            e.claimed_lower_bound,
            supported,
            derived.map_or("none".to_string(), |b| b.to_string())
        ),
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::induced::InducedCopy;
    use crate::pipeline::{run, RunConfig};
    use crate::rational::{int, ratio};

    #[test]
    fn brute_examples() {
        assert_eq!(
            brute_best_homogeneous(&Graph::complete(4), &int(0))
                .unwrap()
                .size,
            4
        );
        assert_eq!(
            brute_best_homogeneous(&Graph::path(3), &int(0))
                .unwrap()
                .size,
            2
        );
        assert_eq!(
            brute_best_homogeneous(&Graph::cycle(5), &int(0))
                .unwrap()
                .size,
            2
        );
        assert!(matches!(
            brute_best_homogeneous(&Graph::empty(19), &int(0)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn brute_counts() {
        assert_eq!(brute_count_induced(&Graph::cycle(5), &Graph::path(4)), 5);
        assert_eq!(brute_count_induced(&Graph::complete(4), &Graph::path(4)), 0);
        assert_eq!(brute_count_induced(&Graph::path(4), &Graph::path(4)), 1);
        assert_eq!(
            brute_count_induced(&Graph::complete(5), &Graph::complete(3)),
            10
        );
    }

    #[test]
    fn digest_matches_graph_digest() {
        let g = generate(&GeneratorSpec::gnp(30, ratio(1, 3), 2)).unwrap();
        assert_eq!(Matrix::of(&g).sha256(), g.digest().sha256);
    }

    #[test]
    fn valid_sparse_certificate_passes() {
        let g = Graph::empty(60);
        let out = run(&g, &ratio(1, 10), &FamilySpec::p4(), &RunConfig::default()).unwrap();
        assert!(verify_outcome(&g, &out, &ratio(1, 10)).passed());
    }

    #[test]
    fn swapped_vertex_fails_density() {
        // star centre 0 joined to everything; X avoids it
        let edges: Vec<(usize, usize)> = (1..60).map(|v| (0, v)).collect();
        let g = Graph::from_edges(60, &edges).unwrap();
        let out = run(&g, &ratio(1, 10), &FamilySpec::p4(), &RunConfig::default()).unwrap();
        let mut bad = out.clone();
        let Certificate::Homogeneous(c) = &mut bad.certificate else {
            panic!("a star is a cograph");
        };
        assert_eq!(c.side, Side::Sparse);
        assert!(!c.x.contains(0));
        // swap some member of X for the centre, keeping the claimed density
        let victim = c.x.iter().find(|&v| v != 0).unwrap();
        let mut members: Vec<usize> = c.x.iter().filter(|&v| v != victim).collect();
        members.push(0);
        c.x = crate::graph::VertexSet::from_slice(60, &members);
        let report = verify_outcome(&g, &bad, &ratio(1, 10));
        assert!(!report.passed());
        assert!(report.failures().iter().any(|f| f.starts_with("density")));
    }

    #[test]
    fn corrupted_copy_is_named() {
        let g = generate(&GeneratorSpec::gnp(60, ratio(1, 2), 8)).unwrap();
        let mut out = run(&g, &ratio(1, 10), &FamilySpec::p4(), &RunConfig::default()).unwrap();
        let Certificate::Evidence(e) = &mut out.certificate else {
            panic!("expected evidence");
        };
        // a triangle plus a vertex is never an induced P4
        let tri = (0..60)
            .flat_map(|a| (a + 1..60).flat_map(move |b| (b + 1..60).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))
            .unwrap();
        let extra = (0..60)
            .find(|&v| v != tri.0 && v != tri.1 && v != tri.2)
            .unwrap();
        let bogus = vec![tri.0, tri.1, tri.2, extra];
        e.copies[0] = InducedCopy::new(bogus.clone());
        let report = verify_outcome(&g, &out, &ratio(1, 10));
        assert!(!report.passed());
        assert!(report
            .failures()
            .iter()
            .any(|f| f.contains(&format!("{bogus:?}"))));
    }

    #[test]
    fn mutated_graph_fails_digest() {
        let g = Graph::complete(50);
        let out = run(&g, &ratio(1, 10), &FamilySpec::p4(), &RunConfig::default()).unwrap();
        let report = verify_outcome(&g.with_toggled(3, 7), &out, &ratio(1, 10));
        assert!(report.digest_mismatch());
    }
}
