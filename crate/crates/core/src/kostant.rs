//! Kostant's description of `H_2(p_+, g)` for a maximal parabolic.
//!
//! The length-2 elements of the Hasse diagram of `p = p_{alpha_i}` are the
//! words `s_i s_j` with `alpha_j` adjacent to `alpha_i`. Each gives one
//! irreducible `p_0`-component of `H_2`, generated by the lowest-weight vector
//! `e_{alpha_i} ∧ e_{s_i(alpha_j)} ⊗ e_{-s_i s_j(theta)}`. Its homogeneity `r`
//! is the grading degree of that vector; for a long `alpha_i` one has
//! `s_i(alpha_j) = alpha_i + alpha_j` and `r = 2 + ht_i(-s_i s_j theta)`.
//!
//! Homogeneities follow the convention in which `∧^2 p_1 ⊗ p_{r-2}` has
//! degree `r`; the other common convention is shifted by one.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{classify_case, ht_sigma, Case, CrossedDiagram};
use crate::nested::NestedPair;
use crate::rootsys::{Root, RootSystem};

/// The Hasse word `s_i s_j` with its inversion set `{alpha_i, s_i(alpha_j)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseWord2 {
    pub i: usize,
    pub j: usize,
    pub phi: (Root, Root),
}

impl fmt::Display for HasseWord2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}s{}", self.i, self.j)
    }
}

/// One predicted irreducible component of `H_2(p_+, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H2Component {
    pub word: HasseWord2,
    /// `(alpha_i, s_i(alpha_j), -s_i s_j(theta))`.
    pub triple: (Root, Root, Root),
    pub r: i32,
    /// Degree of the lowest-weight vector in the grading of the nested `q`.
    pub q_degree: i32,
    /// Weight of the lowest-weight vector.
    pub lowest_weight: Vec<i32>,
    /// Dimension of the irreducible Levi module.
    pub levi_dim: u64,
    /// `alpha_i` is long, so the component takes part in the classification.
    pub classified: bool,
}

/// Positive homogeneities of `H_2(p_+, g)` together with the case label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H2Classification {
    pub positive_rs: Vec<i32>,
    pub case: Case,
    pub profile: Profile,
}

/// Shape of the positive part of `H_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Profile {
    /// No positive homogeneity.
    Vanishing,
    /// Only `r = 1`.
    R1,
    /// Only `r = 2` (one or more components).
    R2,
    /// Only `r = 3`.
    R3,
    /// `r = 1` and `r = 2`.
    R1R2,
    /// Anything else, reported for short roots.
    Unclassified,
}

impl Profile {
    pub fn of(rs: &[i32]) -> Profile {
        let set: BTreeSet<i32> = rs.iter().copied().collect();
        match set.into_iter().collect::<Vec<_>>().as_slice() {
            [] => Profile::Vanishing,
            [1] => Profile::R1,
            [2] => Profile::R2,
            [3] => Profile::R3,
            [1, 2] => Profile::R1R2,
            _ => Profile::Unclassified,
        }
    }
}

/// Length-2 Hasse words of a maximal parabolic.
pub fn hasse_length2(rs: &RootSystem, d: &CrossedDiagram) -> Result<Vec<HasseWord2>> {
    let Some(i) = d.node() else {
        return Err(Error::Unsupported(format!(
            "Hasse words are computed for maximal parabolics only, got {} crossed nodes in {}",
            d.sigma().len(),
            d
        )));
    };
    rs.check_node(i)?;
    let n = rs.rank();
    let ai = Root::simple(n, i);
    Ok(rs
        .neighbors(i)
        .into_iter()
        .map(|j| {
            let sj = Root::new(rs.reflect_coeffs(i, Root::simple(n, j).coeffs()));
            HasseWord2 {
                i,
                j,
                phi: (ai.clone(), sj),
            }
        })
        .collect())
}

/// Predicted components of `H_2(p_+, g)` for the parabolic of node `i`.
pub fn h2_components(rs: &Arc<RootSystem>, i: usize) -> Result<Vec<H2Component>> {
    let np = NestedPair::new(rs.clone(), i)?;
    components_for(&np)
}

fn components_for(np: &NestedPair) -> Result<Vec<H2Component>> {
    let rs = np.root_system();
    let i = np.node();
    let sigma_p: BTreeSet<usize> = [i].into_iter().collect();
    let sigma_q = np.sigma_q();
    let words = hasse_length2(rs, np.p_grading().diagram())?;
    let theta = rs.highest_root().coeffs().to_vec();
    let mut out = Vec::with_capacity(words.len());
    for word in words {
        let sj_theta = rs.reflect_coeffs(word.j, &theta);
        let w_theta = rs.reflect_coeffs(i, &sj_theta);
        let low: Vec<i32> = w_theta.iter().map(|c| -c).collect();
        debug_assert!(rs.is_root(&low));
        let (a, b) = (&word.phi.0, &word.phi.1);
        let r = ht_sigma(a.coeffs(), &sigma_p) + ht_sigma(b.coeffs(), &sigma_p) + ht_sigma(&low, &sigma_p);
        let q_degree = ht_sigma(a.coeffs(), sigma_q) + ht_sigma(b.coeffs(), sigma_q) + ht_sigma(&low, sigma_q);
        let lowest_weight: Vec<i32> = (0..rs.rank())
            .map(|k| a.coeffs()[k] + b.coeffs()[k] + low[k])
            .collect();
        let levi_dim = levi_weyl_dim(rs, &sigma_p, &lowest_weight.iter().map(|c| -c).collect::<Vec<_>>())?;
        out.push(H2Component {
            triple: (a.clone(), b.clone(), Root::new(low)),
            word,
            r,
            q_degree,
            lowest_weight,
            levi_dim,
            classified: np.is_long(),
        });
    }
    Ok(out)
}

/// Weyl dimension of the irreducible module of the Levi factor (the diagram
/// with `sigma` deleted) with highest weight `lambda`, given in the root basis.
/// Fails if `lambda` is not dominant for the Levi factor.
pub fn levi_weyl_dim(rs: &RootSystem, sigma: &BTreeSet<usize>, lambda: &[i32]) -> Result<u64> {
    let n = rs.rank();
    let free: Vec<usize> = (1..=n).filter(|k| !sigma.contains(k)).collect();
    let labels: Vec<i64> = (1..=n).map(|k| i64::from(rs.pairing_coeffs(lambda, k))).collect();
    if let Some(&k) = free.iter().find(|&&k| labels[k - 1] < 0) {
        return Err(Error::Contract(format!(
            "weight {lambda:?} is not dominant for the Levi factor (label {} at node {k})",
            labels[k - 1]
        )));
    }
    // d_k = (alpha_k, alpha_k)/2 as integers after clearing denominators
    let half = rs.half_norms();
    let scale = half.iter().fold(1i64, |acc, d| num_integer::lcm(acc, *d.denom()));
    let d: Vec<i64> = half.iter().map(|q| (q * scale).to_integer()).collect();

    let mut dim = BigRational::one();
    for beta in rs.positive_roots() {
        let c = beta.coeffs();
        if sigma.iter().any(|&k| c[k - 1] != 0) {
            continue;
        }
        let mut num = 0i64;
        let mut den = 0i64;
        for &k in &free {
            let w = i64::from(c[k - 1]) * d[k - 1];
            num += w * (labels[k - 1] + 1);
            den += w;
        }
        dim *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    debug_assert!(dim.is_integer());
    dim.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("Weyl dimension exceeds u64".into()))
}

/// Positive homogeneities of `H_2(p_+, g)` (with multiplicity) and the case.
pub fn classify_h2_positive(rs: &Arc<RootSystem>, i: usize) -> Result<H2Classification> {
    let comps = h2_components(rs, i)?;
    let case = classify_case(rs, i)?;
    let mut positive_rs: Vec<i32> = comps.iter().map(|c| c.r).filter(|&r| r >= 1).collect();
    positive_rs.sort_unstable();
    let profile = if case == Case::ShortRoot {
        Profile::Unclassified
    } else {
        Profile::of(&positive_rs)
    };
    Ok(H2Classification {
        positive_rs,
        case,
        profile,
    })
}

/// The generators of `H_0(q_1^V, H_2(p_+, g))`: the lowest-weight triples
/// tagged with their `q`-degree.
pub fn h0_quotient_components(np: &NestedPair) -> Result<Vec<H2Component>> {
    if !np.is_long() {
        return Err(Error::Contract(format!(
            "node {} of {} is a short root",
            np.node(),
            np.root_system().lie_type()
        )));
    }
    components_for(np)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, LieType};

    fn rs(f: Family, n: usize) -> Arc<RootSystem> {
        RootSystem::shared(LieType::new(f, n).unwrap())
    }

    fn pos(f: Family, n: usize, i: usize) -> Vec<i32> {
        classify_h2_positive(&rs(f, n), i).unwrap().positive_rs
    }

    #[test]
    fn hasse_words() {
        let a2 = rs(Family::A, 2);
        let w = hasse_length2(&a2, &CrossedDiagram::maximal(a2.lie_type(), 1).unwrap()).unwrap();
        assert_eq!(w.iter().map(|x| (x.i, x.j)).collect::<Vec<_>>(), vec![(1, 2)]);
        let a4 = rs(Family::A, 4);
        let w = hasse_length2(&a4, &CrossedDiagram::maximal(a4.lie_type(), 2).unwrap()).unwrap();
        assert_eq!(w.iter().map(|x| (x.i, x.j)).collect::<Vec<_>>(), vec![(2, 1), (2, 3)]);
        let d5 = rs(Family::D, 5);
        let w = hasse_length2(&d5, &CrossedDiagram::maximal(d5.lie_type(), 3).unwrap()).unwrap();
        assert_eq!(w.iter().map(|x| (x.i, x.j)).collect::<Vec<_>>(), vec![(3, 2), (3, 4), (3, 5)]);
        let err = hasse_length2(&d5, &CrossedDiagram::new(d5.lie_type(), [1, 2]).unwrap()).unwrap_err();
        assert_eq!(err.code(), "unsupported");
    }

    #[test]
    fn component_examples() {
        let c = h2_components(&rs(Family::A, 2), 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].triple.2, Root::new(vec![1, 0]));
        assert_eq!(c[0].r, 3);
        assert_eq!(c[0].levi_dim, 2);
        assert_eq!(pos(Family::A, 4, 2), vec![1, 2]);
        assert_eq!(pos(Family::B, 2, 1), vec![3]);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(pos(Family::C, 4, 4), vec![1]);
        assert_eq!(pos(Family::B, 4, 1), vec![2]);
        assert_eq!(pos(Family::D, 3, 1), vec![2, 2]);
    }

    #[test]
    fn q_degree_examples() {
        let a5 = NestedPair::new(rs(Family::A, 5), 3).unwrap();
        for c in h0_quotient_components(&a5).unwrap() {
            if c.r == 1 {
                assert_eq!(c.q_degree, 0);
            }
        }
        let g2 = NestedPair::new(rs(Family::G, 2), 2).unwrap();
        let c = h0_quotient_components(&g2).unwrap();
        assert_eq!(c.iter().map(|c| (c.r, c.q_degree)).collect::<Vec<_>>(), vec![(1, -1)]);
        let a4 = NestedPair::new(rs(Family::A, 4), 2).unwrap();
        let c = h0_quotient_components(&a4).unwrap();
        assert!(c.iter().any(|c| c.r == 2 && c.q_degree == 2));
        let short = NestedPair::new(rs(Family::G, 2), 1).unwrap();
        assert!(h0_quotient_components(&short).is_err());
    }

    #[test]
    fn invariants_all_long_cases() {
        for t in LieType::all_up_to(8) {
            let r = RootSystem::shared(t);
            for i in 1..=t.rank() {
                let comps = h2_components(&r, i).unwrap();
                assert_eq!(comps.len(), r.neighbors(i).len());
                if !r.is_long_simple(i) {
                    assert!(comps.iter().all(|c| !c.classified));
                    continue;
                }
                let sigma: BTreeSet<usize> = [i].into_iter().collect();
                for c in &comps {
                    let (a, b, low) = &c.triple;
                    assert_eq!(b.coeffs(), &a.plus(&Root::simple(t.rank(), c.word.j))[..]);
                    assert_eq!(c.r - 2, ht_sigma(low.coeffs(), &sigma));
                    assert!(c.levi_dim >= 1);
                }
            }
        }
    }

    #[test]
    fn weyl_dimension_small_cases() {
        // Levi of (A3, alpha_2) is A1 x A1; the weight alpha_1 + alpha_2 + alpha_3
        // has labels (1, 0, 1): the module C^2 ⊗ C^2.
        let a3 = rs(Family::A, 3);
        let sigma: BTreeSet<usize> = [2].into_iter().collect();
        assert_eq!(levi_weyl_dim(&a3, &sigma, &[1, 1, 1]).unwrap(), 4);
        // Full A2 (sigma empty), adjoint representation.
        let a2 = rs(Family::A, 2);
        assert_eq!(levi_weyl_dim(&a2, &BTreeSet::new(), &[1, 1]).unwrap(), 8);
        // G2 adjoint is 14-dimensional, its short-root module 7.
        let g2 = rs(Family::G, 2);
        assert_eq!(levi_weyl_dim(&g2, &BTreeSet::new(), &[3, 2]).unwrap(), 14);
        assert_eq!(levi_weyl_dim(&g2, &BTreeSet::new(), &[2, 1]).unwrap(), 7);
        // E8 adjoint.
        let e8 = rs(Family::E, 8);
        let theta = e8.highest_root().coeffs().to_vec();
        assert_eq!(levi_weyl_dim(&e8, &BTreeSet::new(), &theta).unwrap(), 248);
        assert!(levi_weyl_dim(&a2, &BTreeSet::new(), &[-1, 0]).is_err());
    }
}
