//! Forbidden families: classification of members, the
//! bipartite/co-bipartite/split hypothesis check, and neighborhood VC
//! dimension for small graphs.

mod file;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::induced::count_embeddings;
use crate::rational::{format_rational, ratio, Rational};

pub use file::{parse_family, read_family, write_family};

/// Members larger than this are not classified by exhaustive split search.
pub const EXHAUSTIVE_SPLIT_CAP: usize = 20;

/// Default vertex cap for [`neighborhood_vc_dimension`].
pub const DEFAULT_VC_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub name: String,
    pub graph: Graph,
    /// `|Aut(F)|`, computed by brute force when the family is built.
    pub automorphisms: u64,
}

impl Member {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let automorphisms = count_embeddings(&graph, &graph);
        Member {
            name: name.into(),
            graph,
            automorphisms,
        }
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }
}

/// A finite forbidden family together with its Erdős–Hajnal constants:
/// every induced-free graph on `n` vertices is assumed to hold a clique or
/// independent set of size at least `c_const * n^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub members: Vec<Member>,
    pub c: Rational,
    pub c_const: Rational,
    f: usize,
}

impl FamilySpec {
    pub fn new(
        name: impl Into<String>,
        members: Vec<Member>,
        c: Rational,
        c_const: Rational,
    ) -> Result<Self> {
        if c <= Rational::zero() || c > Rational::one() {
            return Err(Error::arg(format!(
                "EH exponent must lie in (0, 1], got {}",
                format_rational(&c)
            )));
        }
        if c_const <= Rational::zero() {
            return Err(Error::arg("EH constant must be positive"));
        }
        if let Some(m) = members.iter().find(|m| m.order() < 2) {
            return Err(Error::arg(format!(
                "member {} has fewer than two vertices",
                m.name
            )));
        }
        let f = members.iter().map(Member::order).max().unwrap_or(0);
        Ok(FamilySpec {
            name: name.into(),
            members,
            c,
            c_const,
            f,
        })
    }

    /// `{P4}` with `c = 1/2` and constant 1: P4-free graphs are perfect, so
    /// `omega * alpha >= n` and the larger of the two is at least `sqrt(n)`.
    pub fn p4() -> Self {
        FamilySpec::new(
            "p4",
            vec![Member::new("P4", Graph::path(4))],
            ratio(1, 2),
            Rational::one(),
        )
        .expect("builtin family is well formed")
    }

    /// Looks up a family shipped with the crate by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "p4" => Some(FamilySpec::p4()),
            _ => None,
        }
    }

    /// Largest member order.
    pub fn f(&self) -> usize {
        self.f
    }

    /// Index of a member isomorphic to P4, if any.
    pub fn p4_member(&self) -> Option<usize> {
        let p4 = Graph::path(4);
        self.members.iter().position(|m| {
            m.graph.n() == 4 && m.graph.edge_count() == 3 && count_embeddings(&p4, &m.graph) > 0
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ClassFlags {
    pub bipartite: bool,
    pub co_bipartite: bool,
    pub split: bool,
}

pub fn classify(f: &Graph) -> ClassFlags {
    ClassFlags {
        bipartite: is_bipartite(f),
        co_bipartite: is_bipartite(&f.complement()),
        split: is_split(f),
    }
}

/// Two-colouring by breadth-first search.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut color = vec![None; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for v in g.neighbors(u).iter() {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Whether the vertices split into a clique and an independent set.
///
/// Exhaustive over all bipartitions for small graphs; larger graphs use the
/// Hammer–Simeone degree-sequence test.
pub fn is_split(g: &Graph) -> bool {
    let n = g.n();
    if n > EXHAUSTIVE_SPLIT_CAP {
        return split_by_degrees(g);
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, v| m | 1 << v))
        .collect();
    (0u32..1 << n).any(|clique| {
        let indep = !clique & ((1u64 << n) - 1) as u32;
        (0..n).all(|u| {
            if clique >> u & 1 == 1 {
                // every other clique vertex is a neighbour
                adj[u] & clique == clique & !(1 << u)
            } else {
                adj[u] & indep == 0
            }
        })
    })
}

pub(crate) fn split_by_degrees(g: &Graph) -> bool {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let m = deg
        .iter()
        .enumerate()
        .filter(|&(i, &d)| d >= i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    head == m * m.saturating_sub(1) + tail
}

/// Which member covers which role of the hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub passed: bool,
    pub bipartite: Option<usize>,
    pub co_bipartite: Option<usize>,
    pub split: Option<usize>,
    pub flags: Vec<ClassFlags>,
    pub reason: Option<String>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = |r: Option<usize>| r.map_or("none".to_string(), |i| format!("member #{i}"));
        write!(
            f,
            "{}: bipartite={}, co-bipartite={}, split={}",
            if self.passed { "pass" } else { "fail" },
            role(self.bipartite),
            role(self.co_bipartite),
            role(self.split)
        )?;
        if let Some(reason) = &self.reason {
            write!(f, " ({reason})")?;
        }
        Ok(())
    }
}

pub fn validate_family(fam: &FamilySpec) -> ValidationReport {
    let flags: Vec<ClassFlags> = fam.members.iter().map(|m| classify(&m.graph)).collect();
    let bipartite = flags.iter().position(|f| f.bipartite);
    let co_bipartite = flags.iter().position(|f| f.co_bipartite);
    let split = flags.iter().position(|f| f.split);
    let reason = if fam.members.is_empty() {
        Some("family has no members".to_string())
    } else {
        let missing: Vec<&str> = [
            (bipartite, "bipartite"),
            (co_bipartite, "co-bipartite"),
            (split, "split"),
        ]
        .into_iter()
        .filter(|(r, _)| r.is_none())
        .map(|(_, name)| name)
        .collect();
        (!missing.is_empty()).then(|| format!("no {} member", missing.join(", no ")))
    };
    ValidationReport {
        passed: reason.is_none(),
        bipartite,
        co_bipartite,
        split,
        flags,
        reason,
    }
}

/// VC dimension of `{N(v) : v in V}` over the ground set `V`, by exhaustive
/// shatter checks of increasing size.
pub fn neighborhood_vc_dimension(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap.min(30) {
        return Err(Error::Capacity(format!(
            "neighborhood VC dimension is brute force; n = {n} exceeds the cap {cap}"
        )));
    }
    let hoods: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, v| m | 1 << v))
        .collect();
    let mut best = 0;
    // Shattering is hereditary, so stop at the first size with no shattered set.
    for d in 1..=n {
        if 1usize << d > n {
            break;
        }
        if !subsets_of_size(n, d).any(|s| shatters(&hoods, s, d)) {
            break;
        }
        best = d;
    }
    Ok(best)
}

fn shatters(hoods: &[u32], set: u32, d: usize) -> bool {
    let traces: HashSet<u32> = hoods.iter().map(|h| h & set).collect();
    traces.len() == 1 << d
}

/// All `d`-subsets of `0..n` as bitmasks (Gosper's hack).
pub(crate) fn subsets_of_size(n: usize, d: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let mut next = if d == 0 {
        Some(0u64)
    } else if d <= n {
        Some((1u64 << d) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let p4 = classify(&Graph::path(4));
        assert_eq!(
            p4,
            ClassFlags {
                bipartite: true,
                co_bipartite: true,
                split: true
            }
        );
        assert_eq!(classify(&Graph::cycle(5)), ClassFlags::default());
        assert_eq!(
            classify(&Graph::complete(3)),
            ClassFlags {
                bipartite: false,
                co_bipartite: true,
                split: true
            }
        );
    }

    #[test]
    fn validate_examples() {
        let r = validate_family(&FamilySpec::p4());
        assert!(r.passed);
        assert_eq!(
            (r.bipartite, r.co_bipartite, r.split),
            (Some(0), Some(0), Some(0))
        );

        let k3 = FamilySpec::new(
            "k3",
            vec![Member::new("K3", Graph::complete(3))],
            ratio(1, 2),
            Rational::one(),
        )
        .unwrap();
        let r = validate_family(&k3);
        assert!(!r.passed);
        assert!(r.reason.unwrap().contains("bipartite"));

        let c4 = Graph::cycle(4);
        let trio = FamilySpec::new(
            "trio",
            vec![
                Member::new("C4", c4.clone()),
                Member::new("co-C4", c4.complement()),
                Member::new("K3", Graph::complete(3)),
            ],
            ratio(1, 2),
            Rational::one(),
        )
        .unwrap();
        let r = validate_family(&trio);
        assert!(r.passed);
        // C4 is bipartite and, since its complement is 2K2, co-bipartite too.
        assert_eq!(
            (r.bipartite, r.co_bipartite, r.split),
            (Some(0), Some(0), Some(2))
        );

        let empty = FamilySpec::new("none", vec![], ratio(1, 2), Rational::one()).unwrap();
        let r = validate_family(&empty);
        assert!(!r.passed);
        assert_eq!(r.reason.as_deref(), Some("family has no members"));
    }

    #[test]
    fn family_invariants_enforced() {
        assert_eq!(FamilySpec::p4().f(), 4);
        assert!(FamilySpec::new("x", vec![], Rational::zero(), Rational::one()).is_err());
        assert!(FamilySpec::new("x", vec![], ratio(3, 2), Rational::one()).is_err());
        assert!(FamilySpec::new(
            "x",
            vec![Member::new("K1", Graph::empty(1))],
            ratio(1, 2),
            Rational::one()
        )
        .is_err());
        assert_eq!(FamilySpec::p4().members[0].automorphisms, 2);
        assert_eq!(FamilySpec::p4().p4_member(), Some(0));
    }

    #[test]
    fn vc_dimension_examples() {
        assert_eq!(
            neighborhood_vc_dimension(&Graph::empty(5), DEFAULT_VC_CAP).unwrap(),
            0
        );
        assert_eq!(
            neighborhood_vc_dimension(&Graph::complete(5), DEFAULT_VC_CAP).unwrap(),
            1
        );
        assert!(matches!(
            neighborhood_vc_dimension(&Graph::empty(17), DEFAULT_VC_CAP),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn gosper_enumerates_all_subsets() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(4, 4).collect::<Vec<_>>(), vec![0b1111]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
    }
}
