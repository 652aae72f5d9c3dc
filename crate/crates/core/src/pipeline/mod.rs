//! The end-to-end search: derive parameters, partition, reduce, and either
//! assemble a homogeneous set from a clique or independent set of the
//! reduced graph, or return induced copies of a family member.

mod certificate;
mod params;
mod reduced;

use std::collections::HashSet;

use num::BigUint;

use crate::clique::caro_wei_bound;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{check_eps, pair_density, set_density, Density, Graph, GraphDigest, VertexSet};
use crate::induced::{
    find_cross_copies, search_copies, BoundDerivation, DerivationPart, EvidenceSource, InducedCopy,
    InducedCopyEvidence,
};
use crate::rational::{ceil_to_u64, format_rational, int, ratio, Rational};
use crate::regularity::{
    afn_partition, PairLabel, PartitionConfig, PartitionOutcome, RegularPartition, RoundStat,
    DEFAULT_EVIDENCE_TARGET,
};

pub use certificate::{parse_certificate, read_certificate, write_certificate};
pub use params::{derive_parameters, Parameters};
pub use reduced::{
    build_r_prime, build_signed_reduced, eh_clique_or_independent, find_induced_in_reduced,
    turan_clique, EhSet, EhSide, HomogeneousReduced, ReducedGraph, ReducedHit, ReducedRule,
    TuranClique,
};

/// Search-step budget for topping up Case 1 evidence outside the sampled parts.
const TOP_UP_STEPS: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `d(X) <= eps`
    Sparse,
    /// `d(X) >= 1 - eps`
    Dense,
}

impl Side {
    pub fn tag(self) -> &'static str {
        match self {
            Side::Sparse => "sparse",
            Side::Dense => "dense",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Copies found while building the partition.
    PartitionEvidence,
    /// The signed reduced graph contains a family member.
    ReducedCopy,
    /// The signed reduced graph is family-free.
    HomogeneousSet,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::PartitionEvidence => "partition_evidence",
            Branch::ReducedCopy => "reduced_copy",
            Branch::HomogeneousSet => "homogeneous_set",
        }
    }
}

/// The bound on `e(X)` (or on missing edges, dense side) implied by the
/// part labels alone: every internal pair counted, cross pairs at `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    /// `sum C(|V_i|, 2)`
    pub internal_pairs: u64,
    /// `sum_{i<j} |V_i| |V_j|`
    pub cross_pairs: u64,
    /// `internal_pairs + gamma * cross_pairs`
    pub bound: Rational,
    /// `eps * C(|X|, 2)`
    pub allowance: Rational,
    /// `bound <= allowance`
    pub holds: bool,
    /// `t >= 4/eps`, the regime where the bound always holds for equal parts.
    pub t_meets_target: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousSetCertificate {
    pub x: VertexSet,
    pub density: Density,
    pub side: Side,
    /// Part indices making up `X`.
    pub parts_used: Vec<usize>,
    /// Members of each part in `parts_used`, in the same order.
    pub part_members: Vec<VertexSet>,
    /// `|X| / n`
    pub delta_actual: Rational,
    pub chain: ChainCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Homogeneous(HomogeneousSetCertificate),
    Evidence(InducedCopyEvidence),
}

/// What the run saw on the way to its certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub n: usize,
    pub k0: usize,
    pub k_max: usize,
    /// `k0` or `k_max` was lowered to fit `n`.
    pub k_clamped: bool,
    /// Final number of parts.
    pub k: usize,
    pub rounds: Vec<RoundStat>,
    pub bad_count: usize,
    pub r_prime_edges: Option<u64>,
    pub r_prime_meets_bound: Option<bool>,
    pub a_target: Option<usize>,
    pub a_size: Option<usize>,
    pub exact_fallback: Option<bool>,
    pub b_size: Option<usize>,
    pub member: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub branch: Branch,
    pub certificate: Certificate,
    pub parameters: Parameters,
    pub trace: Trace,
    pub digest: GraphDigest,
}

impl Outcome {
    pub fn homogeneous(&self) -> Option<&HomogeneousSetCertificate> {
        match &self.certificate {
            Certificate::Homogeneous(c) => Some(c),
            Certificate::Evidence(_) => None,
        }
    }

    pub fn evidence(&self) -> Option<&InducedCopyEvidence> {
        match &self.certificate {
            Certificate::Evidence(e) => Some(e),
            Certificate::Homogeneous(_) => None,
        }
    }

    /// One line: branch, then `|X|` and `delta_actual` or the copy count.
    pub fn summary(&self) -> String {
        match &self.certificate {
            Certificate::Homogeneous(c) => format!(
                "{} {} |X|={} density={} delta_actual={}",
                self.branch.tag(),
                c.side.tag(),
                c.x.size(),
                c.density,
                format_rational(&c.delta_actual)
            ),
            Certificate::Evidence(e) => format!(
                "{} {} copies={} claimed_lower_bound={}",
                self.branch.tag(),
                e.pattern_name,
                e.copies.len(),
                e.claimed_lower_bound
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    /// Upper limit on the number of parts, on top of the derived `k_max` and `n`.
    pub k_max: Option<usize>,
    pub evidence_target: usize,
    /// Smallest accepted `n`; defaults to `ceil(4/eps)`.
    pub min_n: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            k_max: None,
            evidence_target: DEFAULT_EVIDENCE_TARGET,
            min_n: None,
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        RunConfig {
            seed,
            ..RunConfig::default()
        }
    }
}

fn mix_seed(seed: u64, stream: u64) -> u64 {
    seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs the full search and re-verifies the result against `g` before
/// returning it.
pub fn run(g: &Graph, eps: &Rational, fam: &FamilySpec, config: &RunConfig) -> Result<Outcome> {
    check_eps(eps)?;
    let parameters = derive_parameters(eps, fam)?;
    let n = g.n();
    let min_n = match config.min_n {
        Some(m) => m,
        None => ceil_to_u64(&(int(4) / eps)).unwrap_or(u64::MAX) as usize,
    }
    .max(2);
    if n < min_n {
        return Err(Error::Scale(format!(
            "n = {n} is below the configured minimum {min_n}"
        )));
    }

    let derived_max = usize::try_from(parameters.k_max).unwrap_or(usize::MAX);
    let k_max = derived_max
        .min(config.k_max.unwrap_or(usize::MAX))
        .min(n)
        .max(1);
    let k0 = usize::try_from(parameters.k0)
        .unwrap_or(usize::MAX)
        .min(k_max);
    let mut trace = Trace {
        n,
        k0,
        k_max,
        k_clamped: (k0 as u64) < parameters.k0 || (k_max as u64) < parameters.k_max,
        ..Trace::default()
    };

    let run = afn_partition(
        g,
        fam,
        &PartitionConfig {
            gamma: parameters.gamma.clone(),
            k0,
            k_max,
            seed: config.seed,
            evidence_target: config.evidence_target,
        },
    )?;
    trace.rounds = run.rounds.clone();
    if let Some(last) = run.rounds.last() {
        trace.k = last.k;
        trace.bad_count = last.bad_count;
    }
    let (branch, certificate) = match run.outcome {
        PartitionOutcome::Evidence(evidence) => {
            trace.member = Some(evidence.pattern_name.clone());
            (Branch::PartitionEvidence, Certificate::Evidence(evidence))
        }
        PartitionOutcome::Partition(partition) => {
            reduce_and_decide(g, eps, fam, &parameters, &partition, config, &mut trace)?
        }
    };
    let outcome = Outcome {
        branch,
        certificate,
        parameters,
        trace,
        digest: g.digest(),
    };
    let report = crate::oracle::verify_outcome(g, &outcome, eps);
    if !report.passed() {
        return Err(Error::InternalInvariant(format!(
            "certificate failed re-verification: {}",
            report.failures().join("; ")
        )));
    }
    Ok(outcome)
}

fn reduce_and_decide(
    g: &Graph,
    eps: &Rational,
    fam: &FamilySpec,
    params: &Parameters,
    partition: &RegularPartition,
    config: &RunConfig,
    trace: &mut Trace,
) -> Result<(Branch, Certificate)> {
    let r_prime = build_r_prime(partition);
    trace.r_prime_edges = Some(r_prime.reduced.graph.edge_count());
    trace.r_prime_meets_bound = Some(r_prime.meets_edge_bound);
    let clique_target = usize::try_from(params.clique_target).unwrap_or(usize::MAX);
    let a_target = clique_target.min(caro_wei_bound(&r_prime.reduced.graph));
    trace.a_target = Some(a_target);
    let a = turan_clique(&r_prime.reduced, a_target)?;
    trace.a_size = Some(a.members.len());
    trace.exact_fallback = Some(a.used_exact_search);
    let a_parts: Vec<usize> = a
        .members
        .iter()
        .map(|&i| r_prime.reduced.vertices[i])
        .collect();
    let r = build_signed_reduced(partition, &a_parts)?;

    if let Some(hit) = find_induced_in_reduced(&r, fam) {
        trace.member = Some(fam.members[hit.member].name.clone());
        let evidence = case1_evidence(
            g,
            partition,
            &r,
            &hit,
            fam,
            config.evidence_target,
            mix_seed(config.seed, 1),
        )?;
        return Ok((Branch::ReducedCopy, Certificate::Evidence(evidence)));
    }
    let b = eh_clique_or_independent(&r, fam)?;
    trace.b_size = Some(b.members.len());
    let b_parts: Vec<usize> = b.members.iter().map(|&i| r.vertices[i]).collect();
    let cert = case2_assemble(g, partition, &b_parts, b.side, eps, params)?;
    Ok((Branch::HomogeneousSet, Certificate::Homogeneous(cert)))
}

/// Copies of the member hit in `r`, sampled one vertex per hosting part,
/// with the product bound derived from the host densities.
pub fn case1_evidence(
    g: &Graph,
    partition: &RegularPartition,
    r: &ReducedGraph,
    hit: &ReducedHit,
    fam: &FamilySpec,
    evidence_target: usize,
    seed: u64,
) -> Result<InducedCopyEvidence> {
    let member = &fam.members[hit.member];
    let pattern = &member.graph;
    let m = pattern.n() as u64;
    let gamma = &partition.gamma;
    // A random transversal misses the pattern with probability at most C(m, 2) gamma.
    if int(m * (m - 1) / 2) * gamma >= ratio(1, 2) {
        return Err(Error::Violation(format!(
            "C({m}, 2) * gamma = {} is not below 1/2",
            format_rational(&(int(m * (m - 1) / 2) * gamma))
        )));
    }
    let hosts: Vec<usize> = hit.copy.vertex_map.iter().map(|&x| r.vertices[x]).collect();
    let parts: Vec<DerivationPart> = hosts
        .iter()
        .map(|&i| DerivationPart {
            part_index: i,
            members: partition.parts[i].clone(),
        })
        .collect();
    let mut pair_densities = Vec::new();
    for a in 0..hosts.len() {
        for b in a + 1..hosts.len() {
            let d = pair_density(g, &parts[a].members, &parts[b].members)?;
            let fits = if pattern.has_edge(a, b) {
                d.at_least_one_minus(gamma)
            } else {
                d.at_most(gamma)
            };
            if !fits {
                return Err(Error::Violation(format!(
                    "parts {} and {} have density {d}, inconsistent with pattern pair {a}-{b}",
                    hosts[a], hosts[b]
                )));
            }
            pair_densities.push((a, b, d));
        }
    }
    let derivation = BoundDerivation {
        gamma: gamma.clone(),
        parts,
        pair_densities,
    };
    let target = evidence_target.max(1);
    let assignment: Vec<VertexSet> = derivation.parts.iter().map(|p| p.members.clone()).collect();
    let sampled = find_cross_copies(g, pattern, &assignment, target, seed)?;
    if sampled.copies.is_empty() {
        return Err(Error::Violation(format!(
            "no transversal of parts {hosts:?} spans an induced {} in {} draws",
            member.name, sampled.draws
        )));
    }
    let mut copies = sampled.copies;
    if copies.len() < target {
        let mut seen: HashSet<Vec<usize>> = copies.iter().map(InducedCopy::key).collect();
        for c in search_copies(g, pattern, target, mix_seed(seed, 2), TOP_UP_STEPS) {
            if copies.len() >= target {
                break;
            }
            if seen.insert(c.key()) {
                copies.push(c);
            }
        }
    }
    let bound = derivation.bound();
    let claimed_lower_bound = bound.max(BigUint::from(copies.len()));
    Ok(InducedCopyEvidence {
        pattern_name: member.name.clone(),
        pattern: pattern.clone(),
        copies,
        claimed_lower_bound,
        derivation: Some(derivation),
        source: EvidenceSource::ReducedGraph,
    })
}

/// `X` as the union of the parts in `b`, checked by exact recount.
pub fn case2_assemble(
    g: &Graph,
    partition: &RegularPartition,
    b: &[usize],
    side: EhSide,
    eps: &Rational,
    params: &Parameters,
) -> Result<HomogeneousSetCertificate> {
    let want = match side {
        EhSide::Independent => PairLabel::Low,
        EhSide::Clique => PairLabel::High,
    };
    for (x, &i) in b.iter().enumerate() {
        for &j in &b[x + 1..] {
            let label = partition.label(i, j);
            if label != want {
                return Err(Error::Violation(format!(
                    "parts {i} and {j} are labelled {} inside a {} set",
                    label.symbol(),
                    want.symbol()
                )));
            }
        }
    }
    let part_members: Vec<VertexSet> = b.iter().map(|&i| partition.parts[i].clone()).collect();
    let mut x = VertexSet::empty(g.n());
    for p in &part_members {
        x = x.union(p);
    }
    if x.size() < 2 {
        return Err(Error::Scale(format!(
            "the homogeneous set has {} vertex, too few to measure",
            x.size()
        )));
    }
    let sizes: Vec<u64> = part_members.iter().map(|p| p.size() as u64).collect();
    let internal_pairs: u64 = sizes.iter().map(|s| s * s.saturating_sub(1) / 2).sum();
    let total: u64 = sizes.iter().sum();
    let cross_pairs = (total * total - sizes.iter().map(|s| s * s).sum::<u64>()) / 2;
    let bound = int(internal_pairs) + &partition.gamma * int(cross_pairs);
    let allowance = eps * int(total * (total - 1) / 2);
    let chain = ChainCheck {
        internal_pairs,
        cross_pairs,
        holds: bound <= allowance,
        t_meets_target: int(b.len() as u64) >= params.b_target,
        bound,
        allowance,
    };

    let density = set_density(g, &x)?;
    let (side, ok) = match side {
        EhSide::Independent => (Side::Sparse, density.at_most(eps)),
        EhSide::Clique => (Side::Dense, density.at_least_one_minus(eps)),
    };
    if !ok {
        let msg = format!(
            "{} set of {} parts has density {density}; label bound {} vs allowance {}",
            side.tag(),
            b.len(),
            format_rational(&chain.bound),
            format_rational(&chain.allowance)
        );
        return Err(if chain.holds {
            Error::InternalInvariant(msg)
        } else {
            Error::Scale(msg)
        });
    }
    let delta_actual = int(x.size() as u64) / int(g.n() as u64);
    Ok(HomogeneousSetCertificate {
        x,
        density,
        side,
        parts_used: b.to_vec(),
        part_members,
        delta_actual,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{generate, GeneratorSpec};

    fn p4() -> FamilySpec {
        FamilySpec::p4()
    }

    #[test]
    fn complete_graph_is_dense() {
        let g = Graph::complete(200);
        let out = run(&g, &ratio(1, 10), &p4(), &RunConfig::default()).unwrap();
        let c = out.homogeneous().unwrap();
        assert_eq!(c.side, Side::Dense);
        assert_eq!(c.x.size(), 200);
        assert_eq!(c.density, Density::new(19900, 19900));
        assert_eq!(c.delta_actual, int(1));
    }

    #[test]
    fn empty_graph_is_sparse() {
        let g = Graph::empty(120);
        let out = run(&g, &ratio(1, 10), &p4(), &RunConfig::default()).unwrap();
        let c = out.homogeneous().unwrap();
        assert_eq!(c.side, Side::Sparse);
        assert_eq!(c.density.edges, 0);
    }

    #[test]
    fn cograph_takes_homogeneous_branch() {
        let g = generate(&GeneratorSpec::cograph(1000, 5)).unwrap();
        let out = run(&g, &ratio(1, 10), &p4(), &RunConfig::with_seed(3)).unwrap();
        let c = out.homogeneous().expect("cographs have no induced P4");
        let t = c.parts_used.len() as u64;
        assert!(c.delta_actual >= int(t) / int(out.trace.k as u64));
    }

    #[test]
    fn random_graph_yields_copies() {
        let g = generate(&GeneratorSpec::gnp(60, ratio(1, 2), 4)).unwrap();
        let out = run(&g, &ratio(1, 10), &p4(), &RunConfig::with_seed(1)).unwrap();
        let e = out.evidence().expect("G(60, 1/2) is full of P4s");
        assert!(e.copies.len() >= 100);
        assert!(e.claimed_lower_bound >= BigUint::from(100u32));
    }

    #[test]
    fn small_graph_is_a_scale_error() {
        let g = Graph::complete(10);
        assert!(matches!(
            run(&g, &ratio(1, 10), &p4(), &RunConfig::default()),
            Err(Error::Scale(_))
        ));
    }

    #[test]
    fn run_is_deterministic() {
        let g = generate(&GeneratorSpec::gnp(80, ratio(1, 3), 9)).unwrap();
        let a = run(&g, &ratio(1, 10), &p4(), &RunConfig::with_seed(5)).unwrap();
        let b = run(&g, &ratio(1, 10), &p4(), &RunConfig::with_seed(5)).unwrap();
        assert_eq!(a, b);
    }

    fn partition_of(g: &Graph, parts: Vec<Vec<usize>>, gamma: Rational) -> RegularPartition {
        let sets = parts
            .iter()
            .map(|p| VertexSet::from_slice(g.n(), p))
            .collect();
        RegularPartition::new(g, sets, gamma)
    }

    #[test]
    fn case1_edge_between_joined_parts() {
        let edges: Vec<(usize, usize)> = (0..10)
            .flat_map(|u| (10..20).map(move |v| (u, v)))
            .collect();
        let g = Graph::from_edges(20, &edges).unwrap();
        let partition = partition_of(
            &g,
            vec![(0..10).collect(), (10..20).collect()],
            ratio(1, 16),
        );
        let fam = FamilySpec::new(
            "edge",
            vec![crate::family::Member::new("K2", Graph::path(2))],
            int(1),
            int(1),
        )
        .unwrap();
        let r = build_signed_reduced(&partition, &[0, 1]).unwrap();
        let hit = ReducedHit {
            member: 0,
            copy: InducedCopy::new(vec![0, 1]),
        };
        let e = case1_evidence(&g, &partition, &r, &hit, &fam, 30, 0).unwrap();
        assert_eq!(e.claimed_lower_bound, BigUint::from(50u32));
        assert_eq!(e.copies.len(), 30);
        assert!(e.copies.iter().all(|c| c.verify(&g, &Graph::path(2))));
    }

    #[test]
    fn case2_examples() {
        let params = derive_parameters(&ratio(1, 10), &p4()).unwrap();
        let g = Graph::empty(20);
        let partition = partition_of(
            &g,
            vec![(0..10).collect(), (10..20).collect()],
            ratio(1, 16),
        );
        let c = case2_assemble(
            &g,
            &partition,
            &[0, 1],
            EhSide::Independent,
            &ratio(1, 10),
            &params,
        )
        .unwrap();
        assert_eq!(c.density.edges, 0);
        assert_eq!(c.x.size(), 20);
        assert!(!c.chain.holds);

        let g = Graph::complete(20);
        let partition = partition_of(
            &g,
            vec![(0..10).collect(), (10..20).collect()],
            ratio(1, 16),
        );
        let c = case2_assemble(
            &g,
            &partition,
            &[0, 1],
            EhSide::Clique,
            &ratio(1, 10),
            &params,
        )
        .unwrap();
        assert_eq!(c.side, Side::Dense);
        assert_eq!(c.density.value(), int(1));
    }

    #[test]
    fn case2_rejects_mismatched_labels() {
        let params = derive_parameters(&ratio(1, 10), &p4()).unwrap();
        let g = Graph::complete(4);
        let partition = partition_of(&g, vec![vec![0, 1], vec![2, 3]], ratio(1, 16));
        assert!(matches!(
            case2_assemble(
                &g,
                &partition,
                &[0, 1],
                EhSide::Independent,
                &ratio(1, 10),
                &params
            ),
            Err(Error::Violation(_))
        ));
    }
}
