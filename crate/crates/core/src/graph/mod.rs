//! Immutable simple graphs over `0..n` with bitset adjacency rows, exact
//! edge densities, and equipartitions.

mod io;

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest as _, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rational::{cmp_fraction, ratio, Rational};

pub use io::{parse_graph, read_graph, write_graph, write_graph_file};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    edge_count: u64,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::new(n); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.rows[u] = BitSet::full(n);
            g.rows[u].remove(u);
        }
        g.edge_count = (n * n.saturating_sub(1) / 2) as u64;
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle edges are simple")
    }

    /// Builds a graph from an edge list, rejecting self-loops, repeated edges
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!("edge {u}-{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            if g.rows[u].contains(v) {
                return Err(Error::arg(format!("repeated edge {u}-{v}")));
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
            g.edge_count += 1;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows. The rows must already be symmetric
    /// and loop-free; this is checked.
    pub fn from_rows(rows: Vec<BitSet>) -> Result<Self> {
        let n = rows.len();
        let mut twice = 0u64;
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::arg(format!(
                    "row {u} has width {} != {n}",
                    row.len()
                )));
            }
            if row.contains(u) {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            for v in row.iter() {
                if !rows[v].contains(u) {
                    return Err(Error::arg(format!("asymmetric adjacency at {u}-{v}")));
                }
            }
            twice += row.count() as u64;
        }
        Ok(Graph {
            n,
            rows,
            edge_count: twice / 2,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let rows = (0..self.n)
            .map(|u| {
                let mut r = self.rows[u].complement();
                r.remove(u);
                r
            })
            .collect();
        let total = (self.n * self.n.saturating_sub(1) / 2) as u64;
        Graph {
            n: self.n,
            rows,
            edge_count: total - self.edge_count,
        }
    }

    /// The subgraph induced on `vertices`, relabelled `0..vertices.len()` in
    /// the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let m = vertices.len();
        let mut g = Graph::empty(m);
        for i in 0..m {
            for j in i + 1..m {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                    g.edge_count += 1;
                }
            }
        }
        g
    }

    /// Applies `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.rows[a].insert(b);
            g.rows[b].insert(a);
        }
        g.edge_count = self.edge_count;
        g
    }

    /// Copy of the graph with the pair `{u, v}` flipped between edge and non-edge.
    pub fn with_toggled(&self, u: usize, v: usize) -> Graph {
        assert!(u != v && u < self.n && v < self.n);
        let mut g = self.clone();
        if g.rows[u].contains(v) {
            g.rows[u].remove(v);
            g.rows[v].remove(u);
            g.edge_count -= 1;
        } else {
            g.rows[u].insert(v);
            g.rows[v].insert(u);
            g.edge_count += 1;
        }
        g
    }

    /// Identity digest binding a certificate to the graph it was computed on.
    pub fn digest(&self) -> GraphDigest {
        let mut hasher = Sha256::new();
        hasher.update(format!("n {}\n", self.n));
        for (u, v) in self.edges() {
            hasher.update(format!("{u} {v}\n"));
        }
        GraphDigest {
            n: self.n,
            edge_count: self.edge_count,
            sha256: hex::encode(hasher.finalize()),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDigest {
    pub n: usize,
    pub edge_count: u64,
    pub sha256: String,
}

/// A subset of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: BitSet,
    size: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            members: BitSet::new(n),
            size: 0,
        }
    }

    pub fn all(n: usize) -> Self {
        VertexSet {
            members: BitSet::full(n),
            size: n,
        }
    }

    pub fn from_bits(members: BitSet) -> Self {
        let size = members.count();
        VertexSet { members, size }
    }

    pub fn from_slice(n: usize, vertices: &[usize]) -> Self {
        VertexSet::from_bits(BitSet::from_indices(n, vertices.iter().copied()))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Width of the ground set.
    #[inline]
    pub fn universe(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    #[inline]
    pub fn bits(&self) -> &BitSet {
        &self.members
    }

    pub fn insert(&mut self, v: usize) {
        if !self.members.contains(v) {
            self.members.insert(v);
            self.size += 1;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut m = self.members.clone();
        m.union_with(&other.members);
        VertexSet::from_bits(m)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet{:?}", self.members)
    }
}

/// An edge count over a pair count, compared exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    pub edges: u64,
    pub pairs: u64,
}

impl Density {
    pub fn new(edges: u64, pairs: u64) -> Self {
        debug_assert!(pairs > 0 && edges <= pairs);
        Density { edges, pairs }
    }

    pub fn value(&self) -> Rational {
        ratio(self.edges, self.pairs)
    }

    pub fn cmp_to(&self, r: &Rational) -> Ordering {
        cmp_fraction(self.edges, self.pairs, r)
    }

    /// `d <= t`
    pub fn at_most(&self, t: &Rational) -> bool {
        self.cmp_to(t) != Ordering::Greater
    }

    /// `d >= 1 - t`, i.e. the non-edge density is at most `t`.
    pub fn at_least_one_minus(&self, t: &Rational) -> bool {
        cmp_fraction(self.pairs - self.edges, self.pairs, t) != Ordering::Greater
    }

    pub fn as_f64(&self) -> f64 {
        self.edges as f64 / self.pairs as f64
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.edges, self.pairs)
    }
}

/// Number of edges with both ends in `x`.
pub fn edges_within(g: &Graph, x: &VertexSet) -> u64 {
    let twice: usize = x
        .iter()
        .map(|v| g.rows[v].intersection_count(x.bits()))
        .sum();
    (twice / 2) as u64
}

/// Number of edges with one end in `u` and the other in `v` (assumed disjoint).
pub fn edges_between(g: &Graph, u: &VertexSet, v: &VertexSet) -> u64 {
    u.iter()
        .map(|a| g.rows[a].intersection_count(v.bits()) as u64)
        .sum()
}

/// `d(u, v) = e(u, v) / (|u| |v|)`.
pub fn pair_density(g: &Graph, u: &VertexSet, v: &VertexSet) -> Result<Density> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::arg("pair density needs two non-empty sets"));
    }
    if !u.is_disjoint(v) {
        return Err(Error::arg("pair density needs disjoint sets"));
    }
    Ok(Density::new(
        edges_between(g, u, v),
        (u.size() * v.size()) as u64,
    ))
}

/// `d(x) = e(x) / C(|x|, 2)`.
pub fn set_density(g: &Graph, x: &VertexSet) -> Result<Density> {
    if x.size() < 2 {
        return Err(Error::arg(format!(
            "set density needs at least two vertices, got {}",
            x.size()
        )));
    }
    let s = x.size() as u64;
    Ok(Density::new(edges_within(g, x), s * (s - 1) / 2))
}

/// Whether `x` is `eps`-homogeneous, with the density that decided it.
pub fn is_homogeneous(g: &Graph, x: &VertexSet, eps: &Rational) -> Result<(bool, Density)> {
    check_eps(eps)?;
    let d = set_density(g, x)?;
    Ok((d.at_most(eps) || d.at_least_one_minus(eps), d))
}

pub(crate) fn check_eps(eps: &Rational) -> Result<()> {
    use num::traits::Zero;
    if *eps <= Rational::zero() || *eps >= ratio(1, 2) {
        return Err(Error::arg(format!(
            "eps must lie in (0, 1/2), got {}",
            crate::rational::format_rational(eps)
        )));
    }
    Ok(())
}

/// Splits the vertices into `k` parts whose sizes differ by at most one:
/// a seeded shuffle followed by round-robin assignment.
pub fn equipartition(g: &Graph, k: usize, seed: u64) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::arg(format!(
            "equipartition needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut parts = vec![VertexSet::empty(n); k];
    for (pos, v) in order.into_iter().enumerate() {
        parts[pos % k].insert(v);
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_slice(n, v)
    }

    #[test]
    fn pair_density_examples() {
        // complete bipartite {0,1} x {2,3,4}
        let edges: Vec<_> = [0, 1]
            .iter()
            .flat_map(|&a| [2, 3, 4].map(move |b| (a, b)))
            .collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        let d = pair_density(&g, &set(5, &[0, 1]), &set(5, &[2, 3, 4])).unwrap();
        assert_eq!((d.edges, d.pairs), (6, 6));
        assert_eq!(d.value(), ratio(1, 1));

        let g = Graph::empty(5);
        let d = pair_density(&g, &set(5, &[0, 1]), &set(5, &[2, 3, 4])).unwrap();
        assert_eq!(d.value(), ratio(0, 1));

        let g = Graph::from_edges(4, &[(0, 2), (0, 1)]).unwrap();
        let d = pair_density(&g, &set(4, &[0, 1]), &set(4, &[2, 3])).unwrap();
        assert_eq!(d.value(), ratio(1, 4));
    }

    #[test]
    fn pair_density_rejects_bad_input() {
        let g = Graph::empty(4);
        assert!(pair_density(&g, &set(4, &[0, 1]), &set(4, &[1, 2])).is_err());
        assert!(pair_density(&g, &set(4, &[]), &set(4, &[1, 2])).is_err());
    }

    #[test]
    fn set_density_examples() {
        let d = set_density(&Graph::complete(4), &VertexSet::all(4)).unwrap();
        assert_eq!((d.edges, d.pairs), (6, 6));
        let d = set_density(&Graph::empty(4), &VertexSet::all(4)).unwrap();
        assert_eq!((d.edges, d.pairs), (0, 6));
        let d = set_density(&Graph::path(4), &VertexSet::all(4)).unwrap();
        assert_eq!(d.value(), ratio(1, 2));
        assert!(set_density(&Graph::path(4), &set(4, &[1])).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        let eps = ratio(1, 10);
        assert!(
            is_homogeneous(&Graph::complete(5), &VertexSet::all(5), &eps)
                .unwrap()
                .0
        );
        let (ok, d) = is_homogeneous(&Graph::path(4), &VertexSet::all(4), &eps).unwrap();
        assert!(!ok);
        assert_eq!(d.value(), ratio(1, 2));
        assert!(
            is_homogeneous(&Graph::empty(5), &VertexSet::all(5), &ratio(1, 100))
                .unwrap()
                .0
        );
        assert!(is_homogeneous(&Graph::empty(5), &VertexSet::all(5), &ratio(1, 2)).is_err());
    }

    #[test]
    fn threshold_comparisons_are_exact() {
        // 1/10 exactly on the boundary both ways
        let d = Density::new(1, 10);
        assert!(d.at_most(&ratio(1, 10)));
        assert!(!d.at_most(&ratio(999_999, 10_000_000)));
        let d = Density::new(9, 10);
        assert!(d.at_least_one_minus(&ratio(1, 10)));
        assert!(!d.at_least_one_minus(&ratio(1, 11)));
    }

    #[test]
    fn equipartition_examples() {
        let g = Graph::empty(10);
        let parts = equipartition(&g, 2, 1).unwrap();
        assert_eq!(
            parts.iter().map(VertexSet::size).collect::<Vec<_>>(),
            vec![5, 5]
        );
        let mut sizes: Vec<_> = equipartition(&g, 3, 1)
            .unwrap()
            .iter()
            .map(VertexSet::size)
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 3, 4]);
        assert_eq!(
            equipartition(&g, 3, 9).unwrap(),
            equipartition(&g, 3, 9).unwrap()
        );
        assert!(equipartition(&g, 0, 1).is_err());
        assert!(equipartition(&g, 11, 1).is_err());
    }

    #[test]
    fn construction_rejects_non_simple_input() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn complement_and_toggle() {
        let p4 = Graph::path(4);
        let c = p4.complement();
        assert_eq!(c.edge_count(), 3);
        assert!(c.has_edge(0, 2) && c.has_edge(0, 3) && c.has_edge(1, 3));
        let t = p4.with_toggled(0, 3);
        assert_eq!(t.edge_count(), 4);
        assert_ne!(t.digest(), p4.digest());
        assert_eq!(t.with_toggled(0, 3), p4);
    }
}
