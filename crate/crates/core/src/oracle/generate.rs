//! Seeded instance generators.

use std::fmt;

use num::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, int, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Random cotree: unions and joins of random splits.
    Cograph,
    /// A clique on half the vertices, an independent set on the rest, cross
    /// edges with probability `p`.
    Split,
    Gnp,
    /// `G(n, p)` with a set of `plant_size` vertices resampled at `plant_density`.
    PlantedHomogeneous,
    /// Two disjoint cliques of sizes `ceil(n/2)` and `floor(n/2)`.
    TwoCliques,
}

impl GeneratorKind {
    pub fn tag(self) -> &'static str {
        match self {
            GeneratorKind::Cograph => "cograph",
            GeneratorKind::Split => "split",
            GeneratorKind::Gnp => "gnp",
            GeneratorKind::PlantedHomogeneous => "planted_homogeneous",
            GeneratorKind::TwoCliques => "two_cliques",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [
            GeneratorKind::Cograph,
            GeneratorKind::Split,
            GeneratorKind::Gnp,
            GeneratorKind::PlantedHomogeneous,
            GeneratorKind::TwoCliques,
        ]
        .into_iter()
        .find(|k| k.tag() == tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// Edge probability (`Gnp`, `PlantedHomogeneous`) or cross-edge probability (`Split`).
    pub p: Rational,
    pub plant_size: usize,
    pub plant_density: Rational,
    pub seed: u64,
}

impl GeneratorSpec {
    fn base(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            p: ratio(1, 2),
            plant_size: 0,
            plant_density: int(0),
            seed,
        }
    }

    pub fn cograph(n: usize, seed: u64) -> Self {
        Self::base(GeneratorKind::Cograph, n, seed)
    }

    pub fn split(n: usize, p: Rational, seed: u64) -> Self {
        GeneratorSpec {
            p,
            ..Self::base(GeneratorKind::Split, n, seed)
        }
    }

    pub fn gnp(n: usize, p: Rational, seed: u64) -> Self {
        GeneratorSpec {
            p,
            ..Self::base(GeneratorKind::Gnp, n, seed)
        }
    }

    pub fn planted(
        n: usize,
        p: Rational,
        plant_size: usize,
        plant_density: Rational,
        seed: u64,
    ) -> Self {
        GeneratorSpec {
            p,
            plant_size,
            plant_density,
            ..Self::base(GeneratorKind::PlantedHomogeneous, n, seed)
        }
    }

    pub fn two_cliques(n: usize, seed: u64) -> Self {
        Self::base(GeneratorKind::TwoCliques, n, seed)
    }
}

/// Manifest syntax, e.g. `gnp n 200 p 1/2 seed 7`.
impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n {}", self.kind.tag(), self.n)?;
        match self.kind {
            GeneratorKind::Split | GeneratorKind::Gnp => {
                write!(f, " p {}", format_rational(&self.p))?
            }
            GeneratorKind::PlantedHomogeneous => write!(
                f,
                " p {} plant {} plant_density {}",
                format_rational(&self.p),
                self.plant_size,
                format_rational(&self.plant_density)
            )?,
            GeneratorKind::Cograph | GeneratorKind::TwoCliques => {}
        }
        write!(f, " seed {}", self.seed)
    }
}

/// An exact Bernoulli(`p`) coin.
struct Coin {
    num: u64,
    den: u64,
}

impl Coin {
    fn new(p: &Rational) -> Result<Self> {
        let (num, den) = (p.numer().to_u64(), p.denom().to_u64());
        match (num, den) {
            (Some(num), Some(den)) if num <= den => Ok(Coin { num, den }),
            _ => Err(Error::arg(format!(
                "probability {} must lie in [0, 1]",
                format_rational(p)
            ))),
        }
    }

    fn flip(&self, rng: &mut ChaCha8Rng) -> bool {
        self.num == self.den || (self.num > 0 && rng.gen_range(0..self.den) < self.num)
    }
}

struct Builder {
    rows: Vec<BitSet>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            rows: vec![BitSet::new(n); n],
        }
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        } else {
            self.rows[u].remove(v);
            self.rows[v].remove(u);
        }
    }

    fn finish(self) -> Graph {
        Graph::from_rows(self.rows).expect("builder keeps rows symmetric")
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = Builder::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    match spec.kind {
        GeneratorKind::Gnp => {
            let coin = Coin::new(&spec.p)?;
            for v in 0..n {
                for u in 0..v {
                    b.set(u, v, coin.flip(&mut rng));
                }
            }
        }
        GeneratorKind::PlantedHomogeneous => {
            if spec.plant_size > n {
                return Err(Error::arg(format!(
                    "plant of size {} exceeds n = {n}",
                    spec.plant_size
                )));
            }
            let coin = Coin::new(&spec.p)?;
            let inner = Coin::new(&spec.plant_density)?;
            for v in 0..n {
                for u in 0..v {
                    b.set(u, v, coin.flip(&mut rng));
                }
            }
            let plant = &order[..spec.plant_size];
            for (i, &v) in plant.iter().enumerate() {
                for &u in &plant[..i] {
                    b.set(u, v, inner.flip(&mut rng));
                }
            }
        }
        GeneratorKind::Split => {
            let coin = Coin::new(&spec.p)?;
            let (clique, independent) = order.split_at(n / 2);
            for (i, &v) in clique.iter().enumerate() {
                for &u in &clique[..i] {
                    b.set(u, v, true);
                }
            }
            for &u in clique {
                for &v in independent {
                    b.set(u, v, coin.flip(&mut rng));
                }
            }
        }
        GeneratorKind::TwoCliques => {
            let (left, right) = order.split_at(n.div_ceil(2));
            for side in [left, right] {
                for (i, &v) in side.iter().enumerate() {
                    for &u in &side[..i] {
                        b.set(u, v, true);
                    }
                }
            }
        }
        GeneratorKind::Cograph => {
            let mut stack = vec![order.clone()];
            while let Some(vs) = stack.pop() {
                if vs.len() < 2 {
                    continue;
                }
                let r = rng.gen_range(2..=vs.len().min(3));
                let mut cuts: Vec<usize> = (1..vs.len()).collect();
                cuts.shuffle(&mut rng);
                cuts.truncate(r - 1);
                cuts.sort_unstable();
                cuts.push(vs.len());
                let mut chunks = Vec::with_capacity(r);
                let mut start = 0;
                for c in cuts {
                    chunks.push(vs[start..c].to_vec());
                    start = c;
                }
                if rng.gen_bool(0.5) {
                    for (i, a) in chunks.iter().enumerate() {
                        for other in &chunks[i + 1..] {
                            for &u in a {
                                for &v in other {
                                    b.set(u, v, true);
                                }
                            }
                        }
                    }
                }
                stack.extend(chunks);
            }
        }
    }
    let g = b.finish();
    check_kind(spec, &g, &order)?;
    Ok(g)
}

/// Post-generation check of the kind's defining property, where decidable.
fn check_kind(spec: &GeneratorSpec, g: &Graph, order: &[usize]) -> Result<()> {
    let ok = match spec.kind {
        GeneratorKind::Cograph => {
            if g.n() <= 12 {
                super::brute_count_induced(g, &Graph::path(4)) == 0
            } else {
                matches!(
                    crate::cotree::recognize(g),
                    crate::cotree::Recognition::Cograph(_)
                )
            }
        }
        GeneratorKind::Split => {
            let (clique, independent) = order.split_at(g.n() / 2);
            let pairs = |s: &[usize], want: bool| {
                s.iter()
                    .enumerate()
                    .all(|(i, &v)| s[..i].iter().all(|&u| g.has_edge(u, v) == want))
            };
            pairs(clique, true) && pairs(independent, false)
        }
        GeneratorKind::TwoCliques => {
            let half = g.n().div_ceil(2) as u64;
            let rest = g.n() as u64 - half;
            g.edge_count() == half * half.saturating_sub(1) / 2 + rest * rest.saturating_sub(1) / 2
        }
        GeneratorKind::Gnp | GeneratorKind::PlantedHomogeneous => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariant(format!(
            "generated graph does not satisfy `{spec}`"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cographs_have_no_p4() {
        for seed in 0..100 {
            for n in [4, 8, 12] {
                let g = generate(&GeneratorSpec::cograph(n, seed)).unwrap();
                assert_eq!(super::super::brute_count_induced(&g, &Graph::path(4)), 0);
            }
        }
    }

    #[test]
    fn two_cliques_edges() {
        let g = generate(&GeneratorSpec::two_cliques(10, 0)).unwrap();
        assert_eq!(g.edge_count(), 20);
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(
            generate(&GeneratorSpec::gnp(10, int(1), 3)).unwrap(),
            Graph::complete(10)
        );
        assert_eq!(
            generate(&GeneratorSpec::gnp(10, int(0), 3))
                .unwrap()
                .edge_count(),
            0
        );
    }

    #[test]
    fn seeded_and_reproducible() {
        let spec = GeneratorSpec::planted(40, ratio(1, 2), 10, int(0), 11);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GeneratorSpec {
            seed: 12,
            ..spec.clone()
        };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn plant_larger_than_n_is_rejected() {
        let spec = GeneratorSpec::planted(10, ratio(1, 2), 11, int(0), 0);
        assert!(matches!(generate(&spec), Err(Error::Argument(_))));
    }

    #[test]
    fn bad_probability_is_rejected() {
        assert!(generate(&GeneratorSpec::gnp(5, ratio(3, 2), 0)).is_err());
    }
}
