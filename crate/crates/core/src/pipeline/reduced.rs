//! Reduced graphs on part indices, the Turán clique step, and the
//! clique-or-independent-set step.

use crate::bitset::BitSet;
use crate::clique::{clique_search, greedy_clique, is_clique, max_clique, max_independent_set};
use crate::cotree::{recognize, Recognition};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::induced::{find_embedding, InducedCopy};
use crate::rational::{cmp_fraction, format_rational, int, pow_le, Rational};
use crate::regularity::{PairLabel, RegularPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedRule {
    /// `ij` is an edge iff the pair is LOW or HIGH.
    Homogeneous,
    /// On a homogeneous clique: `ij` is an edge iff HIGH, a non-edge iff LOW.
    Signed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    pub rule: ReducedRule,
    /// `vertices[a]` is the part index represented by reduced vertex `a`.
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

/// `R'` together with the edge-count check `e(R') >= (1 - gamma) C(k, 2)`.
#[derive(Clone, Debug)]
pub struct HomogeneousReduced {
    pub reduced: ReducedGraph,
    pub meets_edge_bound: bool,
}

pub fn build_r_prime(partition: &RegularPartition) -> HomogeneousReduced {
    let k = partition.k();
    let mut rows = vec![BitSet::new(k); k];
    for j in 1..k {
        for i in 0..j {
            if partition.label(i, j).is_homogeneous() {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
    }
    let graph = Graph::from_rows(rows).expect("symmetric by construction");
    let pairs = (k * k.saturating_sub(1) / 2) as u64;
    // e >= (1 - gamma) * pairs  <=>  pairs - e <= gamma * pairs
    let meets_edge_bound =
        pairs == 0 || cmp_fraction(pairs - graph.edge_count(), pairs, &partition.gamma).is_le();
    HomogeneousReduced {
        reduced: ReducedGraph {
            rule: ReducedRule::Homogeneous,
            vertices: (0..k).collect(),
            graph,
        },
        meets_edge_bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranClique {
    /// Reduced-vertex indices, sorted.
    pub members: Vec<usize>,
    pub used_exact_search: bool,
}

/// A clique of size at least `target`: greedy elimination first, exact
/// branch-and-bound if the greedy result falls short.
pub fn turan_clique(r_prime: &ReducedGraph, target: usize) -> Result<TuranClique> {
    let g = &r_prime.graph;
    let greedy = greedy_clique(g);
    debug_assert!(is_clique(g, &greedy));
    if greedy.len() >= target {
        return Ok(TuranClique {
            members: greedy,
            used_exact_search: false,
        });
    }
    let exact = clique_search(g, target);
    if exact.len() >= target {
        return Ok(TuranClique {
            members: exact,
            used_exact_search: true,
        });
    }
    Err(Error::Violation(format!(
        "reduced graph on {} vertices with {} edges has no clique of size {target} (maximum {})",
        g.n(),
        g.edge_count(),
        exact.len()
    )))
}

/// `R` on the homogeneous clique `a` (part indices).
pub fn build_signed_reduced(partition: &RegularPartition, a: &[usize]) -> Result<ReducedGraph> {
    let m = a.len();
    let mut rows = vec![BitSet::new(m); m];
    for x in 0..m {
        for y in x + 1..m {
            match partition.label(a[x], a[y]) {
                PairLabel::High => {
                    rows[x].insert(y);
                    rows[y].insert(x);
                }
                PairLabel::Low => {}
                PairLabel::Bad => {
                    return Err(Error::Violation(format!(
                        "parts {} and {} inside the clique form a BAD pair",
                        a[x], a[y]
                    )))
                }
            }
        }
    }
    Ok(ReducedGraph {
        rule: ReducedRule::Signed,
        vertices: a.to_vec(),
        graph: Graph::from_rows(rows).expect("symmetric by construction"),
    })
}

/// An induced copy of family member `member` inside a reduced graph, in
/// reduced-vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHit {
    pub member: usize,
    pub copy: InducedCopy,
}

/// The first member (in family order) with an induced copy in `r`.
pub fn find_induced_in_reduced(r: &ReducedGraph, fam: &FamilySpec) -> Option<ReducedHit> {
    let p4_index = fam.p4_member();
    fam.members.iter().enumerate().find_map(|(mi, member)| {
        let copy = if Some(mi) == p4_index {
            // Cograph recognition finds a P4 without scanning all 4-subsets.
            match recognize(&r.graph) {
                Recognition::Cograph(_) => None,
                Recognition::InducedP4(path) => {
                    let iso = find_embedding(&member.graph, &Graph::path(4), None)
                        .expect("member is isomorphic to P4");
                    Some(InducedCopy::new(
                        iso.vertex_map.iter().map(|&p| path.vertex_map[p]).collect(),
                    ))
                }
            }
        } else {
            find_embedding(&member.graph, &r.graph, None)
        }?;
        Some(ReducedHit { member: mi, copy })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EhSide {
    Independent,
    Clique,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhSet {
    /// Reduced-vertex indices, sorted.
    pub members: Vec<usize>,
    pub side: EhSide,
}

/// The larger of a maximum clique and a maximum independent set of an
/// induced-family-free reduced graph (ties go to the independent set),
/// checked against `|B| >= c_const * |A|^c`.
pub fn eh_clique_or_independent(r: &ReducedGraph, fam: &FamilySpec) -> Result<EhSet> {
    let (clique, independent) = if fam.p4_member().is_some() {
        match recognize(&r.graph) {
            Recognition::Cograph(tree) => (tree.max_clique(), tree.max_independent_set()),
            Recognition::InducedP4(w) => {
                return Err(Error::Violation(format!(
                    "reduced graph contains an induced P4 at {:?}",
                    w.vertex_map
                )))
            }
        }
    } else {
        (max_clique(&r.graph), max_independent_set(&r.graph))
    };
    let set = if independent.len() >= clique.len() {
        EhSet {
            members: independent,
            side: EhSide::Independent,
        }
    } else {
        EhSet {
            members: clique,
            side: EhSide::Clique,
        }
    };
    let a = int(r.graph.n() as u64);
    let allowance: Rational = int(set.members.len() as u64) / &fam.c_const;
    if !pow_le(&a, &fam.c, &allowance) {
        return Err(Error::EhHypothesis(format!(
            "largest clique/independent set has {} vertices, below {} * {}^{}",
            set.members.len(),
            format_rational(&fam.c_const),
            r.graph.n(),
            format_rational(&fam.c)
        )));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::rational::ratio;
    use crate::regularity::PairLabels;

    fn labelled(k: usize, labels: Vec<PairLabel>) -> RegularPartition {
        let bad_count = labels.iter().filter(|&&l| l == PairLabel::Bad).count();
        RegularPartition {
            parts: (0..k).map(|i| VertexSet::from_slice(k, &[i])).collect(),
            gamma: ratio(1, 10),
            labels: PairLabels {
                k,
                labels,
                bad_count,
            },
        }
    }

    fn reduced(graph: Graph) -> ReducedGraph {
        ReducedGraph {
            rule: ReducedRule::Signed,
            vertices: (0..graph.n()).collect(),
            graph,
        }
    }

    #[test]
    fn r_prime_examples() {
        let all_high = labelled(4, vec![PairLabel::High; 6]);
        assert_eq!(build_r_prime(&all_high).reduced.graph, Graph::complete(4));
        let all_bad = labelled(4, vec![PairLabel::Bad; 6]);
        let rp = build_r_prime(&all_bad);
        assert_eq!(rp.reduced.graph, Graph::empty(4));
        assert!(!rp.meets_edge_bound);
        // pairs (0,1)=L, (0,2)=B, (1,2)=H
        let mixed = labelled(3, vec![PairLabel::Low, PairLabel::Bad, PairLabel::High]);
        assert_eq!(
            build_r_prime(&mixed).reduced.graph,
            Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
        );
    }

    #[test]
    fn turan_examples() {
        let t = turan_clique(&reduced(Graph::complete(8)), 4).unwrap();
        assert_eq!(t.members.len(), 8);
        let t = turan_clique(&reduced(Graph::cycle(5)), 2).unwrap();
        assert_eq!(t.members.len(), 2);
        assert!(is_clique(&Graph::cycle(5), &t.members));
        let t = turan_clique(&reduced(Graph::empty(3)), 1).unwrap();
        assert_eq!(t.members.len(), 1);
        assert!(matches!(
            turan_clique(&reduced(Graph::cycle(5)), 3),
            Err(Error::Violation(_))
        ));
    }

    #[test]
    fn turan_falls_back_to_exact_search() {
        let g = Graph::from_edges(
            10,
            &[
                (0, 1),
                (0, 3),
                (0, 7),
                (1, 2),
                (1, 5),
                (1, 6),
                (1, 9),
                (2, 6),
                (2, 7),
                (2, 9),
                (3, 5),
                (4, 5),
                (4, 7),
                (5, 6),
                (5, 7),
                (5, 8),
                (6, 8),
                (6, 9),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        assert_eq!(greedy_clique(&g).len(), 3);
        let t = turan_clique(&reduced(g.clone()), 4).unwrap();
        assert!(t.used_exact_search);
        assert_eq!(t.members.len(), 4);
        assert!(is_clique(&g, &t.members));
    }

    #[test]
    fn signed_reduced_examples() {
        let p = labelled(3, vec![PairLabel::High; 3]);
        assert_eq!(
            build_signed_reduced(&p, &[0, 1, 2]).unwrap().graph,
            Graph::complete(3)
        );
        let p = labelled(3, vec![PairLabel::Low; 3]);
        assert_eq!(
            build_signed_reduced(&p, &[0, 1, 2]).unwrap().graph,
            Graph::empty(3)
        );
        let p = labelled(3, vec![PairLabel::High, PairLabel::Low, PairLabel::High]);
        let r = build_signed_reduced(&p, &[0, 1, 2]).unwrap();
        assert_eq!(r.graph, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        let p = labelled(3, vec![PairLabel::High, PairLabel::Bad, PairLabel::High]);
        assert!(build_signed_reduced(&p, &[0, 1, 2]).is_err());
        assert!(build_signed_reduced(&p, &[0, 1]).is_ok());
    }

    #[test]
    fn find_induced_examples() {
        let fam = FamilySpec::p4();
        let hit = find_induced_in_reduced(&reduced(Graph::path(4)), &fam).unwrap();
        assert!(hit.copy.verify(&Graph::path(4), &Graph::path(4)));
        assert!(find_induced_in_reduced(&reduced(Graph::complete(6)), &fam).is_none());
        let hit = find_induced_in_reduced(&reduced(Graph::cycle(5)), &fam).unwrap();
        assert!(hit.copy.verify(&Graph::cycle(5), &Graph::path(4)));
    }

    #[test]
    fn eh_examples() {
        let fam = FamilySpec::p4();
        let s = eh_clique_or_independent(&reduced(Graph::complete(7)), &fam).unwrap();
        assert_eq!((s.members.len(), s.side), (7, EhSide::Clique));
        let s = eh_clique_or_independent(&reduced(Graph::empty(5)), &fam).unwrap();
        assert_eq!((s.members.len(), s.side), (5, EhSide::Independent));
        let triangles = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (6, 7),
                (7, 8),
                (6, 8),
            ],
        )
        .unwrap();
        let s = eh_clique_or_independent(&reduced(triangles), &fam).unwrap();
        assert_eq!(s.members.len(), 3);
        assert!(eh_clique_or_independent(&reduced(Graph::path(4)), &fam).is_err());
    }

    #[test]
    fn eh_hypothesis_violation() {
        let fam = FamilySpec::new(
            "overclaim",
            vec![crate::family::Member::new("P4", Graph::path(4))],
            int(1),
            int(1),
        )
        .unwrap();
        // three disjoint triangles: max(omega, alpha) = 3 < 1 * 9^1
        let triangles = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (6, 7),
                (7, 8),
                (6, 8),
            ],
        )
        .unwrap();
        assert!(matches!(
            eh_clique_or_independent(&reduced(triangles), &fam),
            Err(Error::EhHypothesis(_))
        ));
    }
}
