//! Walks the reduced-graph steps on block graphs whose block pattern is
//! known: the homogeneous-pair graph, the clique A, the signed graph on A,
//! and then either induced copies across blocks or a homogeneous union of
//! blocks.
//!
//! cargo run --release --example reduced_graphs

use homog::graph::VertexSet;
use homog::pipeline::{
    build_r_prime, build_signed_reduced, case1_evidence, case2_assemble, derive_parameters,
    eh_clique_or_independent, find_induced_in_reduced, turan_clique,
};
use homog::rational::ratio;
use homog::regularity::RegularPartition;
use homog::{FamilySpec, Graph};

const BLOCK: usize = 25;

/// Blocks of `BLOCK` independent vertices, joined completely along `pattern`.
fn blow_up(pattern: &Graph) -> (Graph, Vec<VertexSet>) {
    let k = pattern.n();
    let n = k * BLOCK;
    let mut edges = Vec::new();
    for (a, b) in pattern.edges() {
        for u in a * BLOCK..(a + 1) * BLOCK {
            for v in b * BLOCK..(b + 1) * BLOCK {
                edges.push((u, v));
            }
        }
    }
    let parts = (0..k)
        .map(|i| VertexSet::from_slice(n, &(i * BLOCK..(i + 1) * BLOCK).collect::<Vec<_>>()))
        .collect();
    (Graph::from_edges(n, &edges).expect("valid blow-up"), parts)
}

fn walk(name: &str, pattern: &Graph) -> homog::Result<()> {
    let fam = FamilySpec::p4();
    let eps = ratio(1, 10);
    let params = derive_parameters(&eps, &fam)?;
    let (g, parts) = blow_up(pattern);
    let partition = RegularPartition::new(&g, parts, ratio(1, 20));
    println!(
        "{name}: n = {}, k = {}, BAD pairs = {}",
        g.n(),
        partition.k(),
        partition.bad_count()
    );
    let r_prime = build_r_prime(&partition);
    println!(
        "  R' has {} edges (edge bound met: {})",
        r_prime.reduced.graph.edge_count(),
        r_prime.meets_edge_bound
    );
    let a = turan_clique(&r_prime.reduced, partition.k())?;
    let r = build_signed_reduced(&partition, &a.members)?;
    println!(
        "  clique A = {:?}; R has {} edges",
        a.members,
        r.graph.edge_count()
    );
    match find_induced_in_reduced(&r, &fam) {
        Some(hit) => {
            let e = case1_evidence(&g, &partition, &r, &hit, &fam, 50, 9)?;
            println!(
                "  R contains an induced P4 on blocks {:?}: at least {} copies, {} sampled",
                hit.copy.vertex_map,
                e.claimed_lower_bound,
                e.copies.len()
            );
        }
        None => {
            let b = eh_clique_or_independent(&r, &fam)?;
            let blocks: Vec<usize> = b.members.iter().map(|&i| r.vertices[i]).collect();
            let c = case2_assemble(&g, &partition, &blocks, b.side, &eps, &params)?;
            println!(
                "  R is P4-free; {:?} set of blocks {blocks:?} gives |X| = {} with density {} ({})",
                b.side,
                c.x.size(),
                c.density,
                c.side.tag()
            );
        }
    }
    Ok(())
}

fn main() -> homog::Result<()> {
    walk("C6 pattern", &Graph::cycle(6))?;
    let k3_plus_three = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2)])?;
    walk("K3 + 3K1 pattern", &k3_plus_three)?;
    Ok(())
}
