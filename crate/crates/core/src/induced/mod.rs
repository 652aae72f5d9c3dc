//! Induced copies of small patterns: exact counting, sampling estimates,
//! and targeted search across vertex parts.

mod evidence;

use std::collections::HashSet;
use std::ops::ControlFlow;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use evidence::{BoundDerivation, DerivationPart, EvidenceSource, InducedCopyEvidence};

/// Injection budget for [`count_induced_exact`]: `n (n-1) ... (n-f+1)` must not exceed it.
pub const EXACT_BUDGET: u128 = 100_000_000;

/// Draw cap multiplier for [`find_cross_copies`].
pub const CROSS_RETRY_FACTOR: usize = 64;

const Z_95: f64 = 1.959_963_984_540_054;

/// An injective map `V(F) -> V(G)`; `vertex_map[a]` is the image of pattern vertex `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InducedCopy {
    pub vertex_map: Vec<usize>,
}

impl InducedCopy {
    pub fn new(vertex_map: Vec<usize>) -> Self {
        InducedCopy { vertex_map }
    }

    /// Sorted vertex image, the deduplication key.
    pub fn key(&self) -> Vec<usize> {
        let mut k = self.vertex_map.clone();
        k.sort_unstable();
        k
    }

    /// Checks injectivity, range, and that every pattern pair maps to an
    /// edge exactly when it is a pattern edge.
    pub fn verify(&self, g: &Graph, pattern: &Graph) -> bool {
        let m = &self.vertex_map;
        if m.len() != pattern.n() || m.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                if m[a] == m[b] || pattern.has_edge(a, b) != g.has_edge(m[a], m[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking enumeration of induced embeddings of `pattern` into `g`.
struct Embedder<'a> {
    g: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    image: Vec<usize>,
    steps: u64,
    step_limit: u64,
}

impl<'a> Embedder<'a> {
    fn new(pattern: &'a Graph, g: &'a Graph) -> Self {
        Embedder {
            g,
            pattern,
            order: connectivity_order(pattern),
            image: vec![usize::MAX; pattern.n()],
            steps: 0,
            step_limit: u64::MAX,
        }
    }

    fn run<F>(&mut self, root: &BitSet, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.pattern.n() == 0 {
            return visit(&self.image);
        }
        self.extend(0, root, visit)
    }

    fn extend<F>(&mut self, depth: usize, root: &BitSet, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let target = self.order[depth];
        let mut candidates = root.clone();
        for &placed in &self.order[..depth] {
            let v = self.image[placed];
            if self.pattern.has_edge(placed, target) {
                candidates.intersect_with(self.g.neighbors(v));
            } else {
                candidates.difference_with(self.g.neighbors(v));
                candidates.remove(v);
            }
        }
        for c in candidates.iter() {
            self.steps += 1;
            if self.steps > self.step_limit {
                return ControlFlow::Break(());
            }
            self.image[target] = c;
            let flow = if depth + 1 == self.order.len() {
                visit(&self.image)
            } else {
                self.extend(depth + 1, root, visit)
            };
            flow?;
        }
        self.image[target] = usize::MAX;
        ControlFlow::Continue(())
    }
}

/// Pattern vertices ordered so each one is adjacent to as many earlier ones
/// as possible, starting from a maximum-degree vertex.
fn connectivity_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Number of induced embeddings (injective, edge- and non-edge-preserving maps)
/// of `pattern` into `g`. With `g = pattern` this is `|Aut(pattern)|`.
pub fn count_embeddings(pattern: &Graph, g: &Graph) -> u64 {
    if pattern.n() > g.n() {
        return 0;
    }
    let mut count = 0u64;
    let root = BitSet::full(g.n());
    let _ = Embedder::new(pattern, g).run(&root, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Whether `g` contains an induced copy of `pattern`; returns the first one found.
pub fn find_embedding(pattern: &Graph, g: &Graph, within: Option<&BitSet>) -> Option<InducedCopy> {
    if pattern.n() > g.n() {
        return None;
    }
    let root = within.cloned().unwrap_or_else(|| BitSet::full(g.n()));
    let mut found = None;
    let _ = Embedder::new(pattern, g).run(&root, &mut |img| {
        found = Some(InducedCopy::new(img.to_vec()));
        ControlFlow::Break(())
    });
    found
}

fn falling_factorial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

/// Exact number of induced copies of `pattern` in `g`, counting each vertex
/// subset that induces a copy once.
pub fn count_induced_exact(g: &Graph, pattern: &Graph) -> Result<u64> {
    count_induced_exact_with_budget(g, pattern, EXACT_BUDGET)
}

pub fn count_induced_exact_with_budget(g: &Graph, pattern: &Graph, budget: u128) -> Result<u64> {
    let m = pattern.n();
    if m > g.n() {
        return Ok(0);
    }
    let injections = falling_factorial(g.n(), m);
    if injections > budget {
        return Err(Error::Capacity(format!(
            "exact count would scan {injections} injections (budget {budget}); use estimate_induced"
        )));
    }
    let aut = count_embeddings(pattern, pattern);
    Ok(count_embeddings(pattern, g) / aut)
}

/// A sampled estimate of the induced-copy count with a 95% Wilson interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub samples: u64,
    pub hits: u64,
    /// `C(n, |V(F)|)`, the number of candidate subsets.
    pub subsets: f64,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Estimate {
    pub fn covers(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn estimate_induced(g: &Graph, pattern: &Graph, samples: u64, seed: u64) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::arg("estimate_induced needs at least one sample"));
    }
    let m = pattern.n();
    let n = g.n();
    if m > n {
        return Ok(Estimate {
            samples,
            hits: 0,
            subsets: 0.0,
            estimate: 0.0,
            lower: 0.0,
            upper: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..samples)
        .filter(|_| {
            let subset = index::sample(&mut rng, n, m).into_vec();
            find_embedding(pattern, &g.induced_subgraph(&subset), None).is_some()
        })
        .count() as u64;
    let subsets = binomial_f64(n, m);
    let trials = samples as f64;
    let p = hits as f64 / trials;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / trials;
    let center = (p + z2 / (2.0 * trials)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)).sqrt();
    Ok(Estimate {
        samples,
        hits,
        subsets,
        estimate: p * subsets,
        lower: ((center - half).max(0.0)) * subsets,
        upper: ((center + half).min(1.0)) * subsets,
    })
}

/// Result of sampling one vertex per assigned part.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCopies {
    pub copies: Vec<InducedCopy>,
    pub draws: usize,
    /// Draws that spanned an induced copy, duplicates included.
    pub successes: usize,
    /// Fewer than `target` distinct copies were found before the draw cap.
    pub partial: bool,
}

impl CrossCopies {
    pub fn success_rate(&self) -> f64 {
        if self.draws == 0 {
            0.0
        } else {
            self.successes as f64 / self.draws as f64
        }
    }
}

/// Samples `v_a` uniformly from `assignment[a]` for each pattern vertex `a`
/// and keeps the tuples that span induced copies, until `target` distinct
/// copies or `64 * target` draws.
pub fn find_cross_copies(
    g: &Graph,
    pattern: &Graph,
    assignment: &[VertexSet],
    target: usize,
    seed: u64,
) -> Result<CrossCopies> {
    if assignment.len() != pattern.n() {
        return Err(Error::arg(format!(
            "assignment has {} parts for a pattern on {} vertices",
            assignment.len(),
            pattern.n()
        )));
    }
    for (i, a) in assignment.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::arg(format!("assigned part {i} is empty")));
        }
        if assignment[..i].iter().any(|b| !a.is_disjoint(b)) {
            return Err(Error::arg("assigned parts must be pairwise disjoint"));
        }
    }
    let pools: Vec<Vec<usize>> = assignment.iter().map(VertexSet::to_vec).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = CrossCopies {
        copies: Vec::new(),
        draws: 0,
        successes: 0,
        partial: false,
    };
    sample_pooled(
        g,
        pattern,
        &pools,
        target,
        CROSS_RETRY_FACTOR * target,
        &mut rng,
        &mut seen,
        &mut out,
    );
    out.partial = out.copies.len() < target;
    Ok(out)
}

/// Shared sampler: pattern vertex `a` is drawn from `pools[a]`; pools may
/// overlap, tuples with a repeated vertex are discarded.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sample_pooled<R: Rng>(
    g: &Graph,
    pattern: &Graph,
    pools: &[Vec<usize>],
    target: usize,
    max_draws: usize,
    rng: &mut R,
    seen: &mut HashSet<Vec<usize>>,
    out: &mut CrossCopies,
) {
    let m = pattern.n();
    let mut tuple = vec![0usize; m];
    let mut draws = 0;
    while out.copies.len() < target && draws < max_draws {
        draws += 1;
        for (slot, pool) in tuple.iter_mut().zip(pools) {
            *slot = pool[rng.gen_range(0..pool.len())];
        }
        let copy = InducedCopy::new(tuple.clone());
        if copy.verify(g, pattern) {
            out.successes += 1;
            if seen.insert(copy.key()) {
                out.copies.push(copy);
            }
        }
    }
    out.draws += draws;
}

/// Collects up to `limit` distinct induced copies of `pattern` anywhere in
/// `g`, visiting vertices in a seeded random order. Stops early after
/// `step_limit` search steps.
pub fn search_copies(
    g: &Graph,
    pattern: &Graph,
    limit: usize,
    seed: u64,
    step_limit: u64,
) -> Vec<InducedCopy> {
    if pattern.n() > g.n() || limit == 0 {
        return Vec::new();
    }
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut inverse = vec![0; g.n()];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    let shuffled = g.relabel(&perm);
    let mut seen = HashSet::new();
    let mut copies = Vec::new();
    let mut embedder = Embedder::new(pattern, &shuffled);
    embedder.step_limit = step_limit;
    let root = BitSet::full(g.n());
    let _ = embedder.run(&root, &mut |img| {
        let copy = InducedCopy::new(img.iter().map(|&v| inverse[v]).collect());
        if seen.insert(copy.key()) {
            copies.push(copy);
            if copies.len() >= limit {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    copies
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_count_examples() {
        let p4 = Graph::path(4);
        assert_eq!(count_induced_exact(&p4, &p4).unwrap(), 1);
        assert_eq!(count_induced_exact(&Graph::cycle(5), &p4).unwrap(), 5);
        assert_eq!(count_induced_exact(&Graph::complete(4), &p4).unwrap(), 0);
        assert_eq!(count_induced_exact(&Graph::complete(3), &p4).unwrap(), 0);
    }

    #[test]
    fn exact_count_budget() {
        let g = Graph::empty(200);
        assert!(matches!(
            count_induced_exact(&g, &Graph::path(4)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(count_embeddings(&Graph::path(4), &Graph::path(4)), 2);
        assert_eq!(count_embeddings(&Graph::cycle(5), &Graph::cycle(5)), 10);
        assert_eq!(
            count_embeddings(&Graph::complete(4), &Graph::complete(4)),
            24
        );
    }

    #[test]
    fn estimate_examples() {
        let p4 = Graph::path(4);
        let e = estimate_induced(&Graph::complete(4), &p4, 50, 1).unwrap();
        assert_eq!(e.estimate, 0.0);
        assert!(e.covers(0.0));
        let e = estimate_induced(&p4, &p4, 50, 1).unwrap();
        assert_eq!(e.estimate, 1.0);
        assert!(e.covers(1.0));
        assert!(estimate_induced(&p4, &p4, 0, 1).is_err());
    }

    #[test]
    fn cross_copies_complete_join() {
        let edges: Vec<_> = (0..5).flat_map(|a| (5..10).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(10, &edges).unwrap();
        let parts = [
            VertexSet::from_slice(10, &[0, 1, 2, 3, 4]),
            VertexSet::from_slice(10, &[5, 6, 7, 8, 9]),
        ];
        let edge = Graph::path(2);
        let out = find_cross_copies(&g, &edge, &parts, 10, 3).unwrap();
        assert!(!out.partial);
        assert_eq!(out.copies.len(), 10);
        assert_eq!(out.successes, out.draws);
        assert!(out.copies.iter().all(|c| c.verify(&g, &edge)));

        let out = find_cross_copies(&Graph::empty(10), &edge, &parts, 10, 3).unwrap();
        assert!(out.partial);
        assert!(out.copies.is_empty());
        assert_eq!(out.draws, CROSS_RETRY_FACTOR * 10);
    }

    #[test]
    fn cross_copies_rejects_overlap() {
        let g = Graph::empty(4);
        let parts = [
            VertexSet::from_slice(4, &[0, 1]),
            VertexSet::from_slice(4, &[1, 2]),
        ];
        assert!(find_cross_copies(&g, &Graph::path(2), &parts, 1, 0).is_err());
    }

    #[test]
    fn search_copies_are_distinct_and_verified() {
        let g = Graph::cycle(7);
        let p4 = Graph::path(4);
        let copies = search_copies(&g, &p4, 100, 5, u64::MAX);
        assert_eq!(copies.len(), 7);
        let keys: HashSet<_> = copies.iter().map(InducedCopy::key).collect();
        assert_eq!(keys.len(), 7);
        assert!(copies.iter().all(|c| c.verify(&g, &p4)));
        assert_eq!(search_copies(&g, &p4, 3, 5, u64::MAX).len(), 3);
    }

    #[test]
    fn copy_verification_catches_non_induced() {
        let g = Graph::cycle(4);
        let p4 = Graph::path(4);
        assert!(!InducedCopy::new(vec![0, 1, 2, 3]).verify(&g, &p4));
        assert!(!InducedCopy::new(vec![0, 1, 1, 3]).verify(&g, &p4));
        assert!(InducedCopy::new(vec![0, 1, 2, 3]).verify(&Graph::path(4), &p4));
    }
}
