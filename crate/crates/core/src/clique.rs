//! Clique extraction: greedy elimination with the Caro–Wei guarantee and an
//! exact branch-and-bound search with colouring bounds.

use crate::bitset::BitSet;
use crate::graph::Graph;

/// Greedy minimum-degree elimination in the complement of `g`: repeatedly
/// keep a vertex of least complement degree and discard its complement
/// neighbours. The kept vertices form a clique of size at least
/// `k / (avg complement degree + 1)`.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = BitSet::full(n);
    let mut co_degree: Vec<usize> = (0..n).map(|v| n - 1 - g.degree(v)).collect();
    let mut clique = Vec::new();
    let remove = |w: usize, alive: &mut BitSet, co_degree: &mut [usize]| {
        alive.remove(w);
        let mut co_hood = alive.difference(g.neighbors(w));
        co_hood.remove(w);
        for u in co_hood.iter() {
            co_degree[u] -= 1;
        }
    };
    while let Some(v) = alive.iter().min_by_key(|&v| (co_degree[v], v)) {
        clique.push(v);
        let mut dropped = alive.difference(g.neighbors(v));
        dropped.remove(v);
        remove(v, &mut alive, &mut co_degree);
        for w in dropped.iter() {
            remove(w, &mut alive, &mut co_degree);
        }
    }
    clique.sort_unstable();
    clique
}

/// The Caro–Wei lower bound `ceil(k^2 / (2 e(complement) + k))` met by
/// [`greedy_clique`].
pub fn caro_wei_bound(g: &Graph) -> usize {
    let k = g.n() as u128;
    if k == 0 {
        return 0;
    }
    let total = k * (k - 1) / 2;
    let co_edges = total - g.edge_count() as u128;
    (k * k).div_ceil(2 * co_edges + k) as usize
}

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    clique_search(g, usize::MAX)
}

/// A maximum independent set of `g`.
pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    max_clique(&g.complement())
}

/// Exact search that stops as soon as a clique of size `target` is found;
/// otherwise returns a maximum clique.
pub fn clique_search(g: &Graph, target: usize) -> Vec<usize> {
    let mut search = Search {
        g,
        best: Vec::new(),
        current: Vec::new(),
        target,
    };
    search.expand(BitSet::full(g.n()));
    let mut best = search.best;
    best.sort_unstable();
    best
}

struct Search<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    target: usize,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.target
    }

    /// Greedy sequential colouring of `cand`; returns vertices with the
    /// number of colours used up to and including each one.
    fn colour(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut order = Vec::with_capacity(cand.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(self.g.neighbors(v));
                uncoloured.remove(v);
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, mut cand: BitSet) {
        let order = self.colour(&cand);
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() || self.done() {
                return;
            }
            self.current.push(v);
            let next = cand.intersection(self.g.neighbors(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.remove(v);
        }
    }
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(i, &a)| {
        vertices[i + 1..]
            .iter()
            .all(|&b| a != b && g.has_edge(a, b))
    })
}

pub fn is_independent(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(i, &a)| {
        vertices[i + 1..]
            .iter()
            .all(|&b| a != b && !g.has_edge(a, b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph() {
        let g = Graph::complete(8);
        assert_eq!(greedy_clique(&g).len(), 8);
        assert_eq!(max_clique(&g).len(), 8);
        assert_eq!(caro_wei_bound(&g), 8);
    }

    #[test]
    fn five_cycle() {
        let g = Graph::cycle(5);
        let c = max_clique(&g);
        assert_eq!(c.len(), 2);
        assert!(is_clique(&g, &c));
        assert!(greedy_clique(&g).len() >= caro_wei_bound(&g));
        assert_eq!(max_independent_set(&g).len(), 2);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(6);
        assert_eq!(greedy_clique(&g).len(), 1);
        assert_eq!(max_clique(&g).len(), 1);
        assert_eq!(max_independent_set(&g).len(), 6);
        assert!(max_clique(&Graph::empty(0)).is_empty());
    }

    #[test]
    fn early_stop_at_target() {
        let g = Graph::complete(10);
        assert!(clique_search(&g, 4).len() >= 4);
    }
}
