//! Cograph recognition by recursive component splitting. A graph either
//! decomposes into a cotree (series/parallel nodes) or some vertex subset
//! is connected with a connected complement, and that subset contains an
//! induced P4, which is returned as the witness.

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::induced::{find_embedding, InducedCopy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CotreeNode {
    Leaf(usize),
    /// Disjoint union of the children.
    Union(Vec<usize>),
    /// Complete join of the children.
    Join(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
}

#[derive(Clone, Debug)]
pub enum Recognition {
    Cograph(Cotree),
    /// `vertex_map` is the path `a-b-c-d`.
    InducedP4(InducedCopy),
}

/// Connected components of `g[within]`, or of its complement when `complement` is set.
fn components(g: &Graph, within: &BitSet, complement: bool) -> Vec<BitSet> {
    let mut unvisited = within.clone();
    let mut out = Vec::new();
    while let Some(start) = unvisited.first() {
        unvisited.remove(start);
        let mut comp = BitSet::new(within.len());
        comp.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let reach = if complement {
                unvisited.difference(g.neighbors(u))
            } else {
                unvisited.intersection(g.neighbors(u))
            };
            for v in reach.iter() {
                unvisited.remove(v);
                comp.insert(v);
                stack.push(v);
            }
        }
        out.push(comp);
    }
    out
}

pub fn recognize(g: &Graph) -> Recognition {
    recognize_within(g, &BitSet::full(g.n()))
}

/// Recognizes `g[within]`.
pub fn recognize_within(g: &Graph, within: &BitSet) -> Recognition {
    let mut nodes: Vec<Option<CotreeNode>> = Vec::new();
    if within.is_empty() {
        return Recognition::Cograph(Cotree { nodes: Vec::new() });
    }
    let mut work = vec![(within.clone(), 0usize)];
    nodes.push(None);
    while let Some((set, slot)) = work.pop() {
        if set.count() == 1 {
            nodes[slot] = Some(CotreeNode::Leaf(set.first().unwrap()));
            continue;
        }
        let mut parts = components(g, &set, false);
        let join = parts.len() == 1;
        if join {
            parts = components(g, &set, true);
            if parts.len() == 1 {
                let witness = find_embedding(&Graph::path(4), g, Some(&set))
                    .expect("a connected, co-connected graph on two or more vertices contains an induced P4");
                return Recognition::InducedP4(witness);
            }
        }
        let children: Vec<usize> = parts
            .into_iter()
            .map(|part| {
                nodes.push(None);
                let child = nodes.len() - 1;
                work.push((part, child));
                child
            })
            .collect();
        nodes[slot] = Some(if join {
            CotreeNode::Join(children)
        } else {
            CotreeNode::Union(children)
        });
    }
    Recognition::Cograph(Cotree {
        nodes: nodes
            .into_iter()
            .map(|n| n.expect("every slot filled"))
            .collect(),
    })
}

impl Cotree {
    pub fn nodes(&self) -> &[CotreeNode] {
        &self.nodes
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, CotreeNode::Leaf(_)))
            .count()
    }

    /// `(omega, alpha)` for every node; children always have larger indices.
    fn sizes(&self) -> Vec<(usize, usize)> {
        let mut sizes = vec![(0, 0); self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            sizes[i] = match &self.nodes[i] {
                CotreeNode::Leaf(_) => (1, 1),
                CotreeNode::Union(ch) => (
                    ch.iter().map(|&c| sizes[c].0).max().unwrap_or(0),
                    ch.iter().map(|&c| sizes[c].1).sum(),
                ),
                CotreeNode::Join(ch) => (
                    ch.iter().map(|&c| sizes[c].0).sum(),
                    ch.iter().map(|&c| sizes[c].1).max().unwrap_or(0),
                ),
            };
        }
        sizes
    }

    pub fn clique_number(&self) -> usize {
        self.sizes().first().map_or(0, |s| s.0)
    }

    pub fn independence_number(&self) -> usize {
        self.sizes().first().map_or(0, |s| s.1)
    }

    /// A maximum clique, read off the tree.
    pub fn max_clique(&self) -> Vec<usize> {
        self.witness(true)
    }

    /// A maximum independent set, read off the tree.
    pub fn max_independent_set(&self) -> Vec<usize> {
        self.witness(false)
    }

    fn witness(&self, clique: bool) -> Vec<usize> {
        if self.nodes.is_empty() {
            return Vec::new();
        }
        let sizes = self.sizes();
        let pick = |c: usize| if clique { sizes[c].0 } else { sizes[c].1 };
        let mut out = Vec::new();
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            match &self.nodes[i] {
                CotreeNode::Leaf(v) => out.push(*v),
                CotreeNode::Union(ch) if !clique => stack.extend(ch),
                CotreeNode::Join(ch) if clique => stack.extend(ch),
                CotreeNode::Union(ch) | CotreeNode::Join(ch) => {
                    // first child attaining the maximum
                    let best = ch
                        .iter()
                        .copied()
                        .max_by_key(|&c| (pick(c), std::cmp::Reverse(c)))
                        .unwrap();
                    stack.push(best);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induced::InducedCopy;

    fn disjoint_triangles(k: usize) -> Graph {
        let edges: Vec<_> = (0..k)
            .flat_map(|t| {
                let b = 3 * t;
                [(b, b + 1), (b + 1, b + 2), (b, b + 2)]
            })
            .collect();
        Graph::from_edges(3 * k, &edges).unwrap()
    }

    #[test]
    fn triangles_are_a_cograph() {
        let g = disjoint_triangles(3);
        let Recognition::Cograph(t) = recognize(&g) else {
            panic!("three triangles form a cograph")
        };
        assert_eq!(t.leaf_count(), 9);
        assert_eq!((t.clique_number(), t.independence_number()), (3, 3));
        let c = t.max_clique();
        assert_eq!(c.len(), 3);
        assert!(c
            .iter()
            .all(|&a| c.iter().all(|&b| a == b || g.has_edge(a, b))));
        let s = t.max_independent_set();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|&a| s.iter().all(|&b| !g.has_edge(a, b))));
    }

    #[test]
    fn p4_and_c5_yield_witnesses() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::path(6)] {
            let Recognition::InducedP4(w) = recognize(&g) else {
                panic!("not a cograph")
            };
            assert!(w.verify(&g, &Graph::path(4)));
        }
    }

    #[test]
    fn complete_and_empty() {
        let Recognition::Cograph(t) = recognize(&Graph::complete(7)) else {
            panic!()
        };
        assert_eq!(t.max_clique().len(), 7);
        let Recognition::Cograph(t) = recognize(&Graph::empty(5)) else {
            panic!()
        };
        assert_eq!(t.max_independent_set(), vec![0, 1, 2, 3, 4]);
        assert_eq!(t.clique_number(), 1);
    }

    #[test]
    fn restricted_recognition() {
        // C5 minus vertex 0 is the path 1-2-3-4
        let g = Graph::cycle(5);
        let within = BitSet::from_indices(5, [1, 2, 3]);
        assert!(matches!(
            recognize_within(&g, &within),
            Recognition::Cograph(_)
        ));
        let within = BitSet::from_indices(5, [1, 2, 3, 4]);
        let Recognition::InducedP4(w) = recognize_within(&g, &within) else {
            panic!()
        };
        assert!(w.key() == vec![1, 2, 3, 4]);
        let _ = InducedCopy::new(vec![]);
    }
}
