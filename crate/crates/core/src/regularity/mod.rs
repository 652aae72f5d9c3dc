//! Equipartitions in which almost every pair of parts is density-homogeneous,
//! or else many verified induced copies of a family member.
//!
//! The procedure starts from a seeded equipartition into `k0` parts and
//! alternates two steps until at most `gamma * C(k, 2)` pairs are BAD:
//! probing BAD pairs for induced copies of family members, and refining
//! every part by neighbourhood fingerprints against a few of its BAD
//! partners, doubling `k` up to `k_max`.

mod serialize;

use std::collections::HashSet;
use std::fmt;

use num::traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{validate_family, FamilySpec};
use crate::graph::{pair_density, Density, Graph, VertexSet};
use crate::induced::{
    sample_pooled, CrossCopies, EvidenceSource, InducedCopy, InducedCopyEvidence,
};
use crate::rational::{cmp_fraction, format_rational, Rational};

pub use serialize::{parse_partition, write_partition};

/// Default number of distinct copies that ends probing with evidence.
pub const DEFAULT_EVIDENCE_TARGET: usize = 100;

/// BAD pairs probed per refinement round.
const PROBE_PAIRS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairLabel {
    /// `d <= gamma`
    Low,
    /// `d >= 1 - gamma`
    High,
    Bad,
}

impl PairLabel {
    pub fn symbol(self) -> char {
        match self {
            PairLabel::Low => 'L',
            PairLabel::High => 'H',
            PairLabel::Bad => 'B',
        }
    }

    pub fn is_homogeneous(self) -> bool {
        self != PairLabel::Bad
    }
}

/// Index of the pair `{i, j}`, `i != j`, in a row-major lower triangle.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(lo < hi);
    hi * (hi - 1) / 2 + lo
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairLabels {
    pub k: usize,
    pub labels: Vec<PairLabel>,
    pub bad_count: usize,
}

impl PairLabels {
    pub fn get(&self, i: usize, j: usize) -> PairLabel {
        self.labels[pair_index(i, j)]
    }
}

/// Exact `gamma` thresholds in machine integers when they fit.
struct Threshold<'a> {
    gamma: &'a Rational,
    small: Option<(u128, u128)>,
}

impl<'a> Threshold<'a> {
    fn new(gamma: &'a Rational) -> Self {
        let small = match (gamma.numer().to_u64(), gamma.denom().to_u64()) {
            (Some(p), Some(q)) => Some((p as u128, q as u128)),
            _ => None,
        };
        Threshold { gamma, small }
    }

    fn label(&self, edges: u64, pairs: u64) -> PairLabel {
        let (low, high) = match self.small {
            Some((p, q)) => (
                edges as u128 * q <= p * pairs as u128,
                (pairs - edges) as u128 * q <= p * pairs as u128,
            ),
            None => (
                cmp_fraction(edges, pairs, self.gamma).is_le(),
                cmp_fraction(pairs - edges, pairs, self.gamma).is_le(),
            ),
        };
        if low {
            PairLabel::Low
        } else if high {
            PairLabel::High
        } else {
            PairLabel::Bad
        }
    }
}

/// Labels every pair of parts LOW, HIGH or BAD by exact comparison of its
/// density against `gamma`.
pub fn classify_pairs(g: &Graph, parts: &[VertexSet], gamma: &Rational) -> PairLabels {
    let k = parts.len();
    let mut part_of = vec![u32::MAX; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for v in p.iter() {
            part_of[v] = i as u32;
        }
    }
    let mut counts = vec![0u32; k * k.saturating_sub(1) / 2];
    for u in 0..g.n() {
        let pu = part_of[u];
        if pu == u32::MAX {
            continue;
        }
        for v in g.neighbors(u).iter().filter(|&v| v > u) {
            let pv = part_of[v];
            if pv != u32::MAX && pv != pu {
                counts[pair_index(pu as usize, pv as usize)] += 1;
            }
        }
    }
    let threshold = Threshold::new(gamma);
    let sizes: Vec<u64> = parts.iter().map(|p| p.size() as u64).collect();
    let labels: Vec<PairLabel> = (1..k.max(1))
        .into_par_iter()
        .flat_map_iter(|j| {
            let counts = &counts;
            let sizes = &sizes;
            let threshold = &threshold;
            (0..j)
                .map(move |i| threshold.label(counts[pair_index(i, j)] as u64, sizes[i] * sizes[j]))
        })
        .collect();
    let bad_count = labels.iter().filter(|&&l| l == PairLabel::Bad).count();
    PairLabels {
        k,
        labels,
        bad_count,
    }
}

/// An equipartition with its exact pair labels at threshold `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPartition {
    pub parts: Vec<VertexSet>,
    pub gamma: Rational,
    pub labels: PairLabels,
}

impl RegularPartition {
    pub fn new(g: &Graph, parts: Vec<VertexSet>, gamma: Rational) -> Self {
        let labels = classify_pairs(g, &parts, &gamma);
        RegularPartition {
            parts,
            gamma,
            labels,
        }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn bad_count(&self) -> usize {
        self.labels.bad_count
    }

    pub fn label(&self, i: usize, j: usize) -> PairLabel {
        self.labels.get(i, j)
    }

    pub fn density(&self, g: &Graph, i: usize, j: usize) -> Density {
        pair_density(g, &self.parts[i], &self.parts[j]).expect("parts are disjoint and non-empty")
    }

    /// `bad_count <= gamma * C(k, 2)`, exactly.
    pub fn meets_contract(&self) -> bool {
        let k = self.k() as u64;
        let pairs = k * k.saturating_sub(1) / 2;
        pairs == 0 || cmp_fraction(self.bad_count() as u64, pairs, &self.gamma).is_le()
    }

    /// Parts tile `0..n` with sizes differing by at most one.
    pub fn is_equipartition(&self, n: usize) -> bool {
        let mut seen = VertexSet::empty(n);
        for p in &self.parts {
            if p.is_empty() || !p.is_disjoint(&seen) {
                return false;
            }
            seen = seen.union(p);
        }
        let min = self.parts.iter().map(VertexSet::size).min().unwrap_or(0);
        let max = self.parts.iter().map(VertexSet::size).max().unwrap_or(0);
        seen.size() == n && max - min <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    Partition(RegularPartition),
    Evidence(InducedCopyEvidence),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundStat {
    pub k: usize,
    pub bad_count: usize,
    pub pairs: usize,
}

impl RoundStat {
    pub fn bad_fraction(&self) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.bad_count as f64 / self.pairs as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRun {
    pub outcome: PartitionOutcome,
    pub rounds: Vec<RoundStat>,
}

/// Why [`afn_partition`] gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionDiagnostics {
    pub k_max: usize,
    pub gamma: String,
    pub trajectory: Vec<RoundStat>,
    /// Distinct copies found per member when probing stopped.
    pub copies_found: Vec<(String, usize)>,
}

impl fmt::Display for ExhaustionDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k reached k_max = {} with gamma = {}; bad fractions:",
            self.k_max, self.gamma
        )?;
        for r in &self.trajectory {
            write!(f, " k={}:{}/{}", r.k, r.bad_count, r.pairs)?;
        }
        write!(f, "; copies found:")?;
        for (name, c) in &self.copies_found {
            write!(f, " {name}={c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PartitionConfig {
    pub gamma: Rational,
    pub k0: usize,
    pub k_max: usize,
    pub seed: u64,
    pub evidence_target: usize,
}

/// Produces a partition with at most `gamma * C(k, 2)` BAD pairs and
/// `k0 <= k <= k_max`, or at least `evidence_target` distinct verified
/// induced copies of one family member.
pub fn afn_partition(
    g: &Graph,
    fam: &FamilySpec,
    config: &PartitionConfig,
) -> Result<PartitionRun> {
    let report = validate_family(fam);
    if !report.passed {
        return Err(Error::arg(format!(
            "family {} fails the hypothesis: {report}",
            fam.name
        )));
    }
    let n = g.n();
    let PartitionConfig {
        gamma,
        k0,
        k_max,
        seed,
        evidence_target,
    } = config;
    let (k0, k_max, evidence_target) = (*k0, *k_max, (*evidence_target).max(1));
    if k0 < 1 || k0 > k_max || k_max > n {
        return Err(Error::arg(format!(
            "need 1 <= k0 <= k_max <= n, got k0 = {k0}, k_max = {k_max}, n = {n}"
        )));
    }
    let mut parts = crate::graph::equipartition(g, k0, *seed)?;
    let mut rounds = Vec::new();
    let mut probe = Prober::new(fam, &report, evidence_target);
    for round in 0u64.. {
        let partition = RegularPartition::new(g, parts, gamma.clone());
        let k = partition.k();
        rounds.push(RoundStat {
            k,
            bad_count: partition.bad_count(),
            pairs: k * (k - 1) / 2,
        });
        if partition.meets_contract() {
            return Ok(PartitionRun {
                outcome: PartitionOutcome::Partition(partition),
                rounds,
            });
        }
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add(round.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        if let Some(evidence) = probe.probe(g, &partition, &mut rng) {
            return Ok(PartitionRun {
                outcome: PartitionOutcome::Evidence(evidence),
                rounds,
            });
        }
        if k >= k_max {
            return Err(Error::Exhaustion(Box::new(ExhaustionDiagnostics {
                k_max,
                gamma: format_rational(gamma),
                trajectory: rounds,
                copies_found: fam
                    .members
                    .iter()
                    .zip(&probe.found)
                    .map(|(m, f)| (m.name.clone(), f.len()))
                    .collect(),
            })));
        }
        parts = refine(g, &partition, (2 * k).min(k_max));
    }
    unreachable!("the refinement loop only exits by returning")
}

/// Splits each part by fingerprints against its BAD partners and re-cuts
/// the concatenation into `new_k` equal pieces.
fn refine(g: &Graph, partition: &RegularPartition, new_k: usize) -> Vec<VertexSet> {
    let n = g.n();
    let k = partition.k();
    let witness_cap = witness_cap(&partition.gamma);
    let mut order = Vec::with_capacity(n);
    for i in 0..k {
        let witnesses: Vec<&VertexSet> = (0..k)
            .filter(|&j| j != i && partition.label(i, j) == PairLabel::Bad)
            .take(witness_cap)
            .map(|j| &partition.parts[j])
            .collect();
        let mut members: Vec<(u64, usize)> = partition.parts[i]
            .iter()
            .map(|v| {
                let print = witnesses.iter().fold(0u64, |acc, w| {
                    let hits = g.neighbors(v).intersection_count(w.bits());
                    acc << 1 | (2 * hits >= w.size()) as u64
                });
                (print, v)
            })
            .collect();
        members.sort_unstable();
        order.extend(members.into_iter().map(|(_, v)| v));
    }
    let (base, extra) = (n / new_k, n % new_k);
    let mut out = Vec::with_capacity(new_k);
    let mut pos = 0;
    for c in 0..new_k {
        let size = base + usize::from(c < extra);
        out.push(VertexSet::from_slice(n, &order[pos..pos + size]));
        pos += size;
    }
    out
}

/// `ceil(log2(1/gamma))`, at least one.
fn witness_cap(gamma: &Rational) -> usize {
    let inv = gamma.recip();
    let mut cap = 0usize;
    let mut pow = Rational::one();
    while pow < inv && cap < 64 {
        pow *= Rational::from_integer(2.into());
        cap += 1;
    }
    cap.max(1)
}

/// Accumulates copies of every member across probing rounds.
struct Prober<'a> {
    fam: &'a FamilySpec,
    target: usize,
    /// Member indices in priority order for sparse, dense, and mixed pairs.
    sparse_first: Vec<usize>,
    dense_first: Vec<usize>,
    mixed_first: Vec<usize>,
    orientations: Vec<Vec<Vec<bool>>>,
    found: Vec<Vec<InducedCopy>>,
    seen: Vec<HashSet<Vec<usize>>>,
}

impl<'a> Prober<'a> {
    fn new(fam: &'a FamilySpec, report: &crate::family::ValidationReport, target: usize) -> Self {
        let m = fam.members.len();
        let prioritised = |first: Option<usize>| {
            let mut v: Vec<usize> = first.into_iter().collect();
            v.extend((0..m).filter(|&i| Some(i) != first));
            v
        };
        Prober {
            fam,
            target,
            sparse_first: prioritised(report.bipartite),
            dense_first: prioritised(report.co_bipartite),
            mixed_first: prioritised(report.split),
            orientations: fam
                .members
                .iter()
                .map(|mem| orientations(&mem.graph))
                .collect(),
            found: vec![Vec::new(); m],
            seen: vec![HashSet::new(); m],
        }
    }

    fn probe<R: rand::Rng>(
        &mut self,
        g: &Graph,
        partition: &RegularPartition,
        rng: &mut R,
    ) -> Option<InducedCopyEvidence> {
        let k = partition.k();
        let mut bad: Vec<(usize, usize)> = (1..k)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|&(i, j)| partition.label(i, j) == PairLabel::Bad)
            .collect();
        bad.shuffle(rng);
        bad.truncate(PROBE_PAIRS);
        let draws = 2 * self.target;
        for (i, j) in bad {
            let d = partition.density(g, i, j);
            let order = if 4 * d.edges <= d.pairs {
                self.sparse_first.clone()
            } else if 4 * d.edges >= 3 * d.pairs {
                self.dense_first.clone()
            } else {
                self.mixed_first.clone()
            };
            let left = partition.parts[i].to_vec();
            let right = partition.parts[j].to_vec();
            let both: Vec<usize> = left.iter().chain(&right).copied().collect();
            for mi in order {
                let pattern = &self.fam.members[mi].graph;
                for sides in self.orientations[mi].clone() {
                    let pools: Vec<Vec<usize>> = sides
                        .iter()
                        .map(|&s| if s { left.clone() } else { right.clone() })
                        .collect();
                    self.draw(g, mi, pattern, &pools, draws, rng);
                    if self.found[mi].len() >= self.target {
                        return Some(self.evidence(mi));
                    }
                }
                let pools = vec![both.clone(); pattern.n()];
                self.draw(g, mi, pattern, &pools, draws, rng);
                if self.found[mi].len() >= self.target {
                    return Some(self.evidence(mi));
                }
            }
        }
        None
    }

    fn draw<R: rand::Rng>(
        &mut self,
        g: &Graph,
        mi: usize,
        pattern: &Graph,
        pools: &[Vec<usize>],
        draws: usize,
        rng: &mut R,
    ) {
        let mut out = CrossCopies {
            copies: std::mem::take(&mut self.found[mi]),
            draws: 0,
            successes: 0,
            partial: false,
        };
        if pools.iter().map(Vec::len).sum::<usize>() >= pattern.n() {
            sample_pooled(
                g,
                pattern,
                pools,
                self.target,
                draws,
                rng,
                &mut self.seen[mi],
                &mut out,
            );
        }
        self.found[mi] = out.copies;
    }

    fn evidence(&mut self, mi: usize) -> InducedCopyEvidence {
        let member = &self.fam.members[mi];
        let mut copies = std::mem::take(&mut self.found[mi]);
        copies.truncate(self.target);
        InducedCopyEvidence {
            pattern_name: member.name.clone(),
            pattern: member.graph.clone(),
            claimed_lower_bound: (copies.len() as u64).into(),
            copies,
            derivation: None,
            source: EvidenceSource::PartitionProbe,
        }
    }
}

/// Ways to host a pattern across two parts: `true` puts the pattern vertex
/// in the first part. Bipartite members use their colour classes,
/// co-bipartite members the classes of the complement, split members the
/// clique/independent split; each in both directions.
fn orientations(pattern: &Graph) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut push = |sides: Vec<bool>| {
        let flipped: Vec<bool> = sides.iter().map(|s| !s).collect();
        for s in [sides, flipped] {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    };
    if let Some(c) = two_colouring(pattern) {
        push(c);
    }
    if let Some(c) = two_colouring(&pattern.complement()) {
        push(c);
    }
    if let Some(c) = split_sides(pattern) {
        push(c);
    }
    out
}

fn two_colouring(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(true);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u).iter() {
                match colour[v] {
                    None => {
                        colour[v] = Some(!colour[u].unwrap());
                        stack.push(v);
                    }
                    Some(c) if c == colour[u].unwrap() => return None,
                    _ => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(Option::unwrap).collect())
}

fn split_sides(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    if n > crate::family::EXHAUSTIVE_SPLIT_CAP {
        return None;
    }
    (0u32..1 << n)
        .map(|mask| (0..n).map(|v| mask >> v & 1 == 1).collect::<Vec<bool>>())
        .find(|sides| {
            (0..n).all(|a| {
                (a + 1..n).all(|b| match (sides[a], sides[b]) {
                    (true, true) => g.has_edge(a, b),
                    (false, false) => !g.has_edge(a, b),
                    _ => true,
                })
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn classify_pair_examples() {
        let gamma = ratio(1, 10);
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(6, &edges).unwrap();
        let parts = vec![
            VertexSet::from_slice(6, &[0, 1, 2]),
            VertexSet::from_slice(6, &[3, 4, 5]),
        ];
        assert_eq!(
            classify_pairs(&g, &parts, &gamma).get(0, 1),
            PairLabel::High
        );
        assert_eq!(
            classify_pairs(&Graph::empty(6), &parts, &gamma).get(0, 1),
            PairLabel::Low
        );
        // density 1/2
        let g = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let parts = vec![
            VertexSet::from_slice(4, &[0, 1]),
            VertexSet::from_slice(4, &[2, 3]),
        ];
        let labels = classify_pairs(&g, &parts, &gamma);
        assert_eq!(labels.get(0, 1), PairLabel::Bad);
        assert_eq!(labels.bad_count, 1);
        assert_eq!(classify_pairs(&g, &parts, &ratio(1, 2)).bad_count, 0);
    }

    #[test]
    fn complete_graph_partition() {
        let g = Graph::complete(40);
        let cfg = PartitionConfig {
            gamma: ratio(1, 20),
            k0: 2,
            k_max: 40,
            seed: 3,
            evidence_target: 100,
        };
        let run = afn_partition(&g, &FamilySpec::p4(), &cfg).unwrap();
        let PartitionOutcome::Partition(p) = run.outcome else {
            panic!()
        };
        assert_eq!(p.bad_count(), 0);
        assert!(p.labels.labels.iter().all(|&l| l == PairLabel::High));
    }

    #[test]
    fn two_cliques_on_natural_split() {
        let n = 20;
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| (a < n / 2) == (b < n / 2))
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let parts = vec![
            VertexSet::from_slice(n, &(0..n / 2).collect::<Vec<_>>()),
            VertexSet::from_slice(n, &(n / 2..n).collect::<Vec<_>>()),
        ];
        let p = RegularPartition::new(&g, parts, ratio(1, 20));
        assert_eq!(p.label(0, 1), PairLabel::Low);
        assert_eq!(p.bad_count(), 0);
        assert!(p.meets_contract());
    }

    #[test]
    fn refinement_keeps_equipartition() {
        let g = crate::oracle::generate(&crate::oracle::GeneratorSpec::gnp(50, ratio(1, 2), 4))
            .unwrap();
        let p = RegularPartition::new(
            &g,
            crate::graph::equipartition(&g, 4, 1).unwrap(),
            ratio(1, 20),
        );
        for new_k in [5, 8, 50] {
            let parts = refine(&g, &p, new_k);
            let r = RegularPartition::new(&g, parts, ratio(1, 20));
            assert_eq!(r.k(), new_k);
            assert!(r.is_equipartition(50));
        }
    }

    #[test]
    fn witness_cap_values() {
        assert_eq!(witness_cap(&ratio(1, 20)), 5);
        assert_eq!(witness_cap(&ratio(1, 16)), 4);
        assert_eq!(witness_cap(&ratio(1, 2)), 1);
    }

    #[test]
    fn p4_orientations() {
        // P4 is bipartite, co-bipartite and split; orientations are deduplicated.
        let o = orientations(&Graph::path(4));
        assert!(o.len() >= 2);
        assert!(o.iter().all(|s| s.len() == 4));
    }

    #[test]
    fn rejects_invalid_family_and_bounds() {
        let g = Graph::complete(10);
        let k3 = FamilySpec::new(
            "k3",
            vec![crate::family::Member::new("K3", Graph::complete(3))],
            ratio(1, 2),
            Rational::one(),
        )
        .unwrap();
        let cfg = PartitionConfig {
            gamma: ratio(1, 20),
            k0: 2,
            k_max: 10,
            seed: 0,
            evidence_target: 10,
        };
        assert!(matches!(
            afn_partition(&g, &k3, &cfg),
            Err(Error::Argument(_))
        ));
        let cfg = PartitionConfig { k_max: 11, ..cfg };
        assert!(matches!(
            afn_partition(&g, &FamilySpec::p4(), &cfg),
            Err(Error::Argument(_))
        ));
    }
}
