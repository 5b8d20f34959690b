//! The nested parabolic pair `q <= p` attached to a simple root `alpha`.
//!
//! `p` crosses `alpha` alone; `q` crosses `alpha` together with its Dynkin
//! neighbours. Every root then carries a bidegree `(ht_alpha, ht_q)`, and the
//! degree-`±1` parts of the `q`-grading split as `q_{±1} = q_{±1}^F + q_{±1}^V`
//! with `q_{±1}^F = g_{±alpha}` and `q_{±1}^V = p_0 ∩ q_{±1}`.
//!
//! Bracket statements are checked at root level: root spaces are
//! one-dimensional, so `[g_beta, g_gamma] != 0` iff `beta + gamma` is a root
//! or zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{classify_case, ht_sigma, Case, CrossedDiagram, ParabolicGrading};
use crate::rootsys::{Root, RootSystem};

/// Names a bigraded piece of `g` for bracket checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Component {
    /// `p_k`
    P(i32),
    /// `q_k`
    Q(i32),
    /// `q_{±1}^F`; the argument is the sign `±1`.
    QF(i32),
    /// `q_{±1}^V`; the argument is the sign `±1`.
    QV(i32),
    /// Roots of bidegree `(p, q)`.
    Bi(i32, i32),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Component::P(k) => write!(f, "p_{k}"),
            Component::Q(k) => write!(f, "q_{k}"),
            Component::QF(s) => write!(f, "q_{s}^F"),
            Component::QV(s) => write!(f, "q_{s}^V"),
            Component::Bi(a, b) => write!(f, "g_({a},{b})"),
        }
    }
}

/// Outcome of a root-level bracket-vanishing check `[A, B] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketReport {
    pub pair: (String, String),
    pub zero: bool,
    /// One of the two components is empty, so the bracket vanishes trivially.
    pub vacuous: bool,
    pub witnesses: Vec<(Root, Root)>,
}

#[derive(Debug, Clone)]
pub struct NestedPair {
    rs: Arc<RootSystem>,
    node: usize,
    long: bool,
    case: Case,
    p: ParabolicGrading,
    q: ParabolicGrading,
}

pub fn build_nested(rs: &Arc<RootSystem>, node: usize) -> Result<NestedPair> {
    NestedPair::new(rs.clone(), node)
}

impl NestedPair {
    pub fn new(rs: Arc<RootSystem>, node: usize) -> Result<Self> {
        rs.check_node(node)?;
        let t = rs.lie_type();
        let mut sigma_q = vec![node];
        sigma_q.extend(rs.neighbors(node));
        let p = ParabolicGrading::new(rs.clone(), CrossedDiagram::maximal(t, node)?)?;
        let q = ParabolicGrading::new(rs.clone(), CrossedDiagram::new(t, sigma_q)?)?;
        let case = classify_case(&rs, node)?;
        Ok(NestedPair {
            long: rs.is_long_simple(node),
            rs,
            node,
            case,
            p,
            q,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn is_long(&self) -> bool {
        self.long
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn p_grading(&self) -> &ParabolicGrading {
        &self.p
    }

    pub fn q_grading(&self) -> &ParabolicGrading {
        &self.q
    }

    pub fn sigma_q(&self) -> &BTreeSet<usize> {
        self.q.diagram().sigma()
    }

    /// Root id of `alpha`.
    pub fn alpha_id(&self) -> usize {
        self.rs
            .id_of(Root::simple(self.rs.rank(), self.node).coeffs())
            .expect("simple root")
    }

    /// `(ht_alpha, ht_q)` of a root id.
    pub fn bigrade(&self, id: usize) -> (i32, i32) {
        (self.p.degree(id), self.q.degree(id))
    }

    /// Number of roots in each bidegree.
    pub fn bigraded_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for id in 0..self.rs.num_roots() {
            *out.entry(self.bigrade(id)).or_insert(0) += 1;
        }
        out
    }

    /// Whether root id `id` lies in the component `c`.
    pub fn contains(&self, c: Component, id: usize) -> bool {
        let (a, b) = self.bigrade(id);
        match c {
            Component::P(k) => a == k,
            Component::Q(k) => b == k,
            Component::QF(s) => b == s && a == s,
            Component::QV(s) => b == s && a == 0,
            Component::Bi(x, y) => a == x && b == y,
        }
    }

    /// Root ids of a component, in root-id order.
    pub fn roots(&self, c: Component) -> Vec<usize> {
        (0..self.rs.num_roots()).filter(|&id| self.contains(c, id)).collect()
    }

    /// `q_{-1}^V`, the roots with `ht_alpha = 0` and `ht_q = -1`.
    pub fn v1_roots(&self) -> Vec<usize> {
        self.roots(Component::QV(-1))
    }

    /// `{alpha, -alpha}`.
    pub fn f_roots(&self) -> Vec<usize> {
        let a = self.alpha_id();
        vec![a, self.rs.negate_id(a)]
    }

    /// `ht_q(theta)`.
    pub fn depth_q(&self) -> i32 {
        self.q.depth()
    }

    /// `dim q_1^V`, the dimension of the highest-weight orbit in `P(p_{-1})`.
    pub fn cone_dim(&self) -> usize {
        self.v1_roots().len()
    }

    pub fn check_bracket_zero(&self, a: Component, b: Component) -> BracketReport {
        let ra = self.roots(a);
        let rb = self.roots(b);
        let mut report = bracket_zero_roots(&self.rs, &ra, &rb);
        report.pair = (a.to_string(), b.to_string());
        report
    }

    /// `beta -> beta - alpha` is a bijection `q_{-1}^V -> q_{-2}`.
    pub fn ff_model_iso(&self) -> bool {
        let alpha = self.rs.root(self.alpha_id()).coeffs().to_vec();
        let mut image = BTreeSet::new();
        for id in self.v1_roots() {
            let c: Vec<i32> = self.rs.root(id).coeffs().iter().zip(&alpha).map(|(x, y)| x - y).collect();
            match self.rs.id_of(&c) {
                Some(t) if self.q.degree(t) == -2 => {
                    image.insert(t);
                }
                _ => return false,
            }
        }
        let target: BTreeSet<usize> = self.q.roots_of_degree(-2).into_iter().collect();
        image == target && image.len() == self.v1_roots().len()
    }

    /// `q_{-1}^V` is abelian.
    pub fn check_abelian_v(&self) -> bool {
        is_abelian_roots(&self.rs, &self.v1_roots())
    }

    /// `p_0 ∩ q_-` equals `q_{-1}^V`.
    pub fn p0_cap_qminus_is_v1(&self) -> bool {
        let lhs: Vec<usize> = (0..self.rs.num_roots())
            .filter(|&id| self.p.degree(id) == 0 && self.q.degree(id) < 0)
            .collect();
        lhs == self.v1_roots()
    }

    /// `p^{-1} = q^{-4}` and its mirror `p_{<=1} = q_{<=4}`, with the
    /// filtration `p^j = sum_{i >= j} p_i`: a root has `alpha`-height at
    /// least `-1` iff its `q`-degree is at least `-4`. Only meaningful in
    /// contact and BD3 cases.
    pub fn check_p1_eq_q4(&self) -> Result<bool> {
        if !matches!(self.case, Case::Contact | Case::BD3) {
            return Err(Error::Contract(format!(
                "p^{{±1}} = q^{{±4}} is stated for contact and BD3 cases, got {} for {} node {}",
                self.case,
                self.rs.lie_type(),
                self.node
            )));
        }
        Ok((0..self.rs.num_roots()).all(|id| {
            let (a, b) = self.bigrade(id);
            (a >= -1) == (b >= -4) && (a <= 1) == (b <= 4)
        }))
    }

    /// Every root `beta` of `q_{-2}` has `ht_alpha = ht_{q \ alpha} = -1` and
    /// `<beta, alpha^vee> = -1`.
    pub fn q_minus2_shape(&self) -> bool {
        let rest: BTreeSet<usize> = self.sigma_q().iter().copied().filter(|&j| j != self.node).collect();
        self.q.roots_of_degree(-2).into_iter().all(|id| {
            let c = self.rs.root(id).coeffs();
            self.p.degree(id) == -1
                && ht_sigma(c, &rest) == -1
                && self.rs.pairing_coeffs(c, self.node) == -1
        })
    }

    /// Range of the neighbour-coefficient sum `ht_{q \ alpha}(-beta)` over `p_{-1}`.
    pub fn neighbour_sum_range(&self) -> (i32, i32) {
        let rest: BTreeSet<usize> = self.sigma_q().iter().copied().filter(|&j| j != self.node).collect();
        let sums: Vec<i32> = self
            .p
            .roots_of_degree(-1)
            .into_iter()
            .map(|id| -ht_sigma(self.rs.root(id).coeffs(), &rest))
            .collect();
        (*sums.iter().min().unwrap_or(&0), *sums.iter().max().unwrap_or(&0))
    }

    /// `p_{-1}` is the disjoint union of `q_{-1}^F, q_{-2}, q_{-3}, q_{-4}`
    /// (the latter three restricted to `alpha`-height `-1`).
    pub fn p_minus1_partition(&self) -> bool {
        let p1 = self.p.roots_of_degree(-1);
        let alpha_neg = self.rs.negate_id(self.alpha_id());
        p1.iter().all(|&id| {
            let d = self.q.degree(id);
            (-4..=-1).contains(&d) && (d != -1 || id == alpha_neg)
        })
    }
}

/// Root-level check that `[A, B] = 0` for spans of root vectors.
pub fn bracket_zero_roots(rs: &RootSystem, a: &[usize], b: &[usize]) -> BracketReport {
    let mut witnesses = Vec::new();
    for &x in a {
        for &y in b {
            if rs.sum_id(x, y).is_some() || rs.negate_id(x) == y {
                witnesses.push((rs.root(x).clone(), rs.root(y).clone()));
            }
        }
    }
    BracketReport {
        pair: (String::new(), String::new()),
        zero: witnesses.is_empty(),
        vacuous: a.is_empty() || b.is_empty(),
        witnesses,
    }
}

/// No two roots of the set sum to a root (or to zero).
pub fn is_abelian_roots(rs: &RootSystem, roots: &[usize]) -> bool {
    bracket_zero_roots(rs, roots, roots).zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, LieType};

    fn np(f: Family, n: usize, i: usize) -> NestedPair {
        NestedPair::new(RootSystem::shared(LieType::new(f, n).unwrap()), i).unwrap()
    }

    fn long_cases() -> Vec<NestedPair> {
        let mut out = Vec::new();
        for t in LieType::all_up_to(8) {
            let rs = RootSystem::shared(t);
            for i in 1..=t.rank() {
                if rs.is_long_simple(i) {
                    out.push(NestedPair::new(rs.clone(), i).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn sigma_q_examples() {
        let s = |x: &NestedPair| x.sigma_q().iter().copied().collect::<Vec<_>>();
        assert_eq!(s(&np(Family::A, 3, 1)), vec![1, 2]);
        assert_eq!(s(&np(Family::B, 4, 3)), vec![2, 3, 4]);
        assert_eq!(s(&np(Family::G, 2, 2)), vec![1, 2]);
    }

    #[test]
    fn depth_examples() {
        assert_eq!(np(Family::C, 3, 3).depth_q(), 3);
        assert_eq!(np(Family::A, 3, 1).depth_q(), 2);
        assert_eq!(np(Family::B, 4, 3).depth_q(), 6);
    }

    #[test]
    fn bracket_examples() {
        let b3 = np(Family::B, 3, 2);
        assert!(b3.check_bracket_zero(Component::QF(-1), Component::Q(-2)).zero);

        let g2 = np(Family::G, 2, 1);
        assert!(!g2.is_long());
        let r = g2.check_bracket_zero(Component::QF(-1), Component::Q(-2));
        assert!(!r.zero);
        assert!(r
            .witnesses
            .contains(&(Root::new(vec![-1, 0]), Root::new(vec![-1, -1]))));

        let f4 = np(Family::F, 4, 1);
        assert_eq!(f4.case(), Case::Contact);
        assert!(f4.check_bracket_zero(Component::Q(2), Component::Q(-4)).zero);
        assert!(f4.check_bracket_zero(Component::QF(1), Component::Q(-4)).zero);
        assert!(!f4.check_bracket_zero(Component::Q(2), Component::Q(-4)).vacuous);
    }

    #[test]
    fn ff_model_examples() {
        let c3 = np(Family::C, 3, 3);
        assert!(c3.ff_model_iso());
        assert_eq!(c3.v1_roots().len(), 2);
        assert_eq!(c3.q_grading().dim(-2), 2);
        let g2 = np(Family::G, 2, 2);
        assert!(g2.ff_model_iso());
        assert_eq!(g2.v1_roots().len(), 1);
        let e7 = np(Family::E, 7, 7);
        assert!(e7.ff_model_iso());
        assert_eq!(e7.v1_roots().len(), 16);
    }

    #[test]
    fn abelian_examples() {
        assert!(np(Family::B, 4, 3).check_abelian_v());
        assert!(np(Family::A, 5, 3).check_abelian_v());
        let g2 = np(Family::G, 2, 2);
        let qminus: Vec<usize> = (0..12).filter(|&id| g2.q_grading().degree(id) < 0).collect();
        assert!(!is_abelian_roots(g2.root_system(), &qminus));
    }

    #[test]
    fn p1_eq_q4_examples() {
        assert!(np(Family::G, 2, 2).check_p1_eq_q4().unwrap());
        assert!(np(Family::E, 8, 8).check_p1_eq_q4().unwrap());
        assert!(np(Family::B, 4, 3).check_p1_eq_q4().unwrap());
        let err = np(Family::A, 4, 2).check_p1_eq_q4().unwrap_err();
        assert_eq!(err.code(), "contract");
    }

    #[test]
    fn long_root_invariants() {
        for x in long_cases() {
            let tag = format!("{} node {}", x.root_system().lie_type(), x.node());
            assert_eq!(x.roots(Component::QF(-1)).len(), 1, "{tag}");
            let q1 = x.q_grading().roots_of_degree(-1);
            let mut fv = x.roots(Component::QF(-1));
            fv.extend(x.roots(Component::QV(-1)));
            fv.sort_unstable();
            assert_eq!(q1, fv, "{tag}");
            assert!(x.p0_cap_qminus_is_v1(), "{tag}");
            assert!(x.check_abelian_v(), "{tag}");
            assert!(x.ff_model_iso(), "{tag}");
            assert!(x.check_bracket_zero(Component::QF(-1), Component::Q(-2)).zero, "{tag}");
            assert!(x.check_bracket_zero(Component::QF(-1), Component::Q(-3)).zero, "{tag}");
            assert!(x.q_minus2_shape(), "{tag}");
            let (lo, hi) = x.neighbour_sum_range();
            assert!(lo >= 0 && hi <= 3, "{tag}");
            assert!(x.p_minus1_partition(), "{tag}");
        }
    }

    #[test]
    fn depth_by_case() {
        for x in long_cases() {
            let t = x.root_system().lie_type();
            if t.rank() == 1 {
                continue;
            }
            let a_end = t.family() == Family::A && (x.node() == 1 || x.node() == t.rank())
                || t.family() == Family::D && t.rank() == 3 && x.node() >= 2;
            let expected = match x.case() {
                Case::Symmetric if a_end => Some(2),
                Case::Symmetric => Some(3),
                Case::Contact => Some(5),
                Case::BD3 => Some(6),
                _ => None,
            };
            if let Some(d) = expected {
                assert_eq!(x.depth_q(), d, "{t} node {}", x.node());
            }
            if matches!(x.case(), Case::Contact | Case::BD3) {
                assert!(x.check_p1_eq_q4().unwrap());
                assert!(x.check_bracket_zero(Component::Q(2), Component::Q(-4)).zero);
                assert!(x.check_bracket_zero(Component::QF(1), Component::Q(-4)).zero);
            }
        }
    }
}
