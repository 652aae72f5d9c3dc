use num::traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::family::{validate_family, FamilySpec};
use crate::graph::check_eps;
use crate::rational::{ceil_to_u64, int, min, pow_ge, ratio, root_lower_bound, Rational};

/// Constants driving one run, all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub eps: Rational,
    pub f: usize,
    pub c: Rational,
    pub c_const: Rational,
    /// `min{1/f^2, eps/4, (c eps / 4)^(1/c) / 2}`, possibly tightened.
    pub gamma: Rational,
    /// `ceil(1/gamma)`
    pub k0: u64,
    /// Stand-in for `k0 / beta`: `k0 * ceil(1/gamma)^2`.
    pub k_max: u64,
    /// `ceil(1/(2 gamma))`
    pub clique_target: u64,
    /// `4/eps`
    pub b_target: Rational,
    /// Clique size the greedy extractor is guaranteed on any reduced graph
    /// satisfying the partition contract at `k = k0`.
    pub greedy_guarantee: u64,
    /// Whether `gamma` was lowered below the displayed formula.
    pub tightened: bool,
}

/// `ceil(k / (gamma (k - 1) + 1))`: the Caro–Wei bound for a graph on `k`
/// vertices missing at most `gamma * C(k, 2)` edges.
pub(crate) fn greedy_guarantee(k: u64, gamma: &Rational) -> u64 {
    let denom = gamma * int(k.saturating_sub(1)) + Rational::one();
    ceil_to_u64(&(int(k) / denom)).unwrap_or(u64::MAX)
}

pub fn derive_parameters(eps: &Rational, fam: &FamilySpec) -> Result<Parameters> {
    check_eps(eps)?;
    let report = validate_family(fam);
    if !report.passed {
        return Err(Error::arg(format!(
            "family {} fails the hypothesis: {report}",
            fam.name
        )));
    }
    let f = fam.f() as u64;
    let c = fam.c.clone();
    let quarter = ratio(1, 4);
    let formula = min(
        min(ratio(1, f * f), eps * &quarter),
        root_lower_bound(&(&c * eps * &quarter), &c) * ratio(1, 2),
    );
    // Case 2 needs c_const * |A|^c >= 4/eps for the clique A the extractor can promise.
    let b_target = int(4) / eps;
    let need = &b_target / &fam.c_const;
    let mut gamma = formula.clone();
    for _ in 0..10_000 {
        let k0 = ceil_to_u64(&gamma.recip()).ok_or_else(|| Error::arg("gamma too small"))?;
        let clique_target = ceil_to_u64(&(gamma.recip() * ratio(1, 2))).unwrap_or(u64::MAX);
        let greedy = greedy_guarantee(k0, &gamma);
        let promised = clique_target.min(greedy);
        if pow_ge(&int(promised), &c, &need) {
            return Ok(Parameters {
                eps: eps.clone(),
                f: fam.f(),
                c,
                c_const: fam.c_const.clone(),
                tightened: gamma != formula,
                k_max: k0.saturating_mul(k0).saturating_mul(k0),
                gamma,
                k0,
                clique_target,
                b_target,
                greedy_guarantee: greedy,
            });
        }
        let m = k0 + (k0 / 8).max(1);
        gamma = ratio(1, m);
    }
    Err(Error::arg(format!(
        "could not satisfy c_const * |A|^c >= 4/eps for eps = {}",
        eps.to_f64().unwrap_or(f64::NAN)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Member;
    use crate::graph::Graph;

    #[test]
    fn p4_at_one_fifth() {
        let p = derive_parameters(&ratio(1, 5), &FamilySpec::p4()).unwrap();
        assert_eq!(p.gamma, ratio(1, 3200));
        assert_eq!(p.k0, 3200);
        assert_eq!(p.clique_target, 1600);
        assert_eq!(p.b_target, int(20));
        assert!(!p.tightened);
        assert!(p.greedy_guarantee >= p.clique_target);
    }

    #[test]
    fn p4_at_one_tenth() {
        let p = derive_parameters(&ratio(1, 10), &FamilySpec::p4()).unwrap();
        assert_eq!(p.gamma, ratio(1, 12800));
        assert_eq!(p.k0, 12800);
        assert_eq!(p.clique_target, 6400);
    }

    #[test]
    fn linear_exponent_family() {
        let fam = FamilySpec::new(
            "lin",
            vec![Member::new("P4", Graph::path(4))],
            int(1),
            int(1),
        )
        .unwrap();
        let p = derive_parameters(&ratio(2, 5), &fam).unwrap();
        assert_eq!(p.gamma, ratio(1, 20));
        assert_eq!(p.k0, 20);
        assert_eq!(p.clique_target, 10);
    }

    #[test]
    fn two_vertex_family_caps_gamma() {
        // f = 2: 1/f^2 = 1/4 bounds gamma for every eps.
        let edge = Graph::path(2);
        let fam = FamilySpec::new(
            "edge+nonedge",
            vec![
                Member::new("K2", edge.clone()),
                Member::new("2K1", edge.complement()),
            ],
            int(1),
            int(1),
        )
        .unwrap();
        for e in [ratio(1, 3), ratio(49, 100), ratio(1, 100)] {
            assert!(derive_parameters(&e, &fam).unwrap().gamma <= ratio(1, 4));
        }
    }

    #[test]
    fn weak_constant_forces_tightening() {
        let fam = FamilySpec::new(
            "weak",
            vec![Member::new("P4", Graph::path(4))],
            int(1),
            ratio(1, 2),
        )
        .unwrap();
        let p = derive_parameters(&ratio(2, 5), &fam).unwrap();
        assert!(p.tightened);
        assert!(p.gamma < ratio(1, 20));
        let promised = p.clique_target.min(p.greedy_guarantee);
        assert!(int(promised) * ratio(1, 2) >= int(10));
    }

    #[test]
    fn rejects_bad_eps() {
        for e in [ratio(0, 1), ratio(1, 2), ratio(3, 4)] {
            assert!(derive_parameters(&e, &FamilySpec::p4()).is_err());
        }
    }
}
