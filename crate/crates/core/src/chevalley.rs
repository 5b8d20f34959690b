//! Chevalley basis of a simple Lie algebra with exact integer structure
//! constants.
//!
//! The basis is `h_1..h_n` (simple coroots) followed by one root vector
//! `e_beta` per root, in root-id order: basis index `n + id`. Signs are
//! fixed by the extraspecial-pair convention: for each non-simple positive
//! root `xi`, the extraspecial pair `(alpha, beta)` has `alpha` minimal in
//! root order with `xi - alpha` a positive root, and `N_{alpha,beta} = p + 1`
//! is taken positive. All other constants follow from the Jacobi identity.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use crate::rootsys::RootSystem;

/// Sparse integer combination of basis vectors.
pub type IntVec = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    rs: Arc<RootSystem>,
    /// `n[a][b] = N_{a,b}` for root ids, zero when `a + b` is not a root.
    n: Vec<Vec<i32>>,
    coroots: Vec<Vec<i64>>,
    /// `B(h_i, h_j)`.
    killing_h: Vec<Vec<i64>>,
    /// `B(e_beta, e_{-beta})` per root id.
    killing_e: Vec<i64>,
}

pub fn build_chevalley(rs: &Arc<RootSystem>) -> ChevalleyBasis {
    ChevalleyBasis::new(Arc::clone(rs))
}

impl ChevalleyBasis {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = structure_constants(&rs);
        let coroots = (0..rs.num_roots()).map(|id| rs.coroot_coeffs(id)).collect();
        let mut cb = ChevalleyBasis {
            rs,
            n,
            coroots,
            killing_h: Vec::new(),
            killing_e: Vec::new(),
        };
        let r = cb.rank();
        cb.killing_h = (0..r)
            .map(|i| (0..r).map(|j| cb.trace_ad_ad(i, j)).collect())
            .collect();
        cb.killing_e = (0..cb.rs.num_roots())
            .map(|id| cb.trace_ad_ad(r + id, r + cb.rs.negate_id(id)))
            .collect();
        cb
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    /// Basis index of `e_beta` for root id `id`.
    pub fn root_index(&self, id: usize) -> usize {
        self.rank() + id
    }

    /// Root id of basis index `k`, or `None` for a Cartan element.
    pub fn root_of(&self, k: usize) -> Option<usize> {
        k.checked_sub(self.rank())
    }

    /// `N_{a,b}` for root ids (zero if `a + b` is not a root).
    pub fn n(&self, a: usize, b: usize) -> i32 {
        self.n[a][b]
    }

    /// `h_beta` in the basis of simple coroots.
    pub fn coroot(&self, id: usize) -> &[i64] {
        &self.coroots[id]
    }

    /// Bracket of two basis vectors.
    pub fn bracket_basis(&self, a: usize, b: usize) -> IntVec {
        let r = self.rank();
        match (self.root_of(a), self.root_of(b)) {
            (None, None) => Vec::new(),
            (None, Some(beta)) => {
                let c = self.rs.pairing_coeffs(self.rs.root(beta).coeffs(), a + 1);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(b, i64::from(c))]
                }
            }
            (Some(beta), None) => {
                let c = self.rs.pairing_coeffs(self.rs.root(beta).coeffs(), b + 1);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(a, -i64::from(c))]
                }
            }
            (Some(x), Some(y)) => {
                if self.rs.negate_id(x) == y {
                    self.coroots[x]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, c))
                        .collect()
                } else {
                    let c = self.n[x][y];
                    if c == 0 {
                        Vec::new()
                    } else {
                        let s = self.rs.sum_id(x, y).expect("nonzero constant on a root sum");
                        vec![(r + s, i64::from(c))]
                    }
                }
            }
        }
    }

    /// Bilinear bracket of sparse integer vectors.
    pub fn bracket_int(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> IntVec {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                for (k, c) in self.bracket_basis(a, b) {
                    *acc.entry(k).or_insert(0) += ca * cb * c;
                }
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Bracket of dense coefficient vectors over the basis.
    pub fn bracket(&self, x: &[Rational64], y: &[Rational64]) -> Vec<Rational64> {
        let mut out = vec![Rational64::zero(); self.dim()];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in self.bracket_basis(a, b) {
                    out[k] += *ca * *cb * c;
                }
            }
        }
        out
    }

    /// `tr(ad x ad y)` for basis vectors, computed literally.
    pub fn trace_ad_ad(&self, a: usize, b: usize) -> i64 {
        let mut tr = 0;
        for z in 0..self.dim() {
            for (w, c) in self.bracket_basis(b, z) {
                for (k, d) in self.bracket_basis(a, w) {
                    if k == z {
                        tr += c * d;
                    }
                }
            }
        }
        tr
    }

    /// Killing form on basis vectors (zero unless the weights cancel).
    pub fn killing_basis(&self, a: usize, b: usize) -> i64 {
        match (self.root_of(a), self.root_of(b)) {
            (None, None) => self.killing_h[a][b],
            (Some(x), Some(y)) if self.rs.negate_id(x) == y => self.killing_e[x],
            _ => 0,
        }
    }

    /// `B(e_beta, e_{-beta})` for a root id.
    pub fn kappa(&self, id: usize) -> i64 {
        self.killing_e[id]
    }

    /// Gram matrix of the Killing form on the Cartan subalgebra.
    pub fn killing_cartan(&self) -> &[Vec<i64>] {
        &self.killing_h
    }

    /// Killing form of dense coefficient vectors.
    pub fn killing_form(&self, x: &[Rational64], y: &[Rational64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let partners: Vec<usize> = match self.root_of(a) {
                None => (0..self.rank()).collect(),
                Some(id) => vec![self.root_index(self.rs.negate_id(id))],
            };
            for b in partners {
                if !y[b].is_zero() {
                    acc += *ca * y[b] * self.killing_basis(a, b);
                }
            }
        }
        acc
    }
}

/// Structure constants for every pair of root ids.
fn structure_constants(rs: &RootSystem) -> Vec<Vec<i32>> {
    let m = rs.num_roots();
    let npos = rs.num_positive();
    let mut n = vec![vec![0i32; m]; m];
    let norm: Vec<Rational64> = (0..m).map(|id| rs.norm2(id)).collect();

    // Set N_{a,b} together with everything forced by antisymmetry, negation
    // and the cyclic identity N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
    // for a + b + c = 0.
    let fill = |n: &mut Vec<Vec<i32>>, a: usize, b: usize, val: i32| {
        let c = rs.negate_id(rs.sum_id(a, b).expect("sum is a root"));
        let v = Rational64::from_integer(i64::from(val));
        let nbc = v * norm[a] / norm[c];
        let nca = v * norm[b] / norm[c];
        debug_assert!(nbc.is_integer() && nca.is_integer());
        let trip = [
            (a, b, val),
            (b, c, nbc.to_integer() as i32),
            (c, a, nca.to_integer() as i32),
        ];
        for (x, y, v) in trip {
            n[x][y] = v;
            n[y][x] = -v;
            let (nx, ny) = (rs.negate_id(x), rs.negate_id(y));
            n[nx][ny] = -v;
            n[ny][nx] = v;
        }
    };

    for xi in 0..npos {
        // special pairs (gamma, delta), gamma < delta, summing to xi
        let pairs: Vec<(usize, usize)> = (0..xi)
            .filter_map(|g| {
                let d = rs.id_of(&sub(rs.root(xi).coeffs(), rs.root(g).coeffs()))?;
                (d < npos && g < d).then_some((g, d))
            })
            .collect();
        let Some(&(alpha, beta)) = pairs.first() else {
            continue;
        };
        let p = rs.string_below(beta, alpha);
        let nab = p + 1;
        fill(&mut n, alpha, beta, nab);
        for &(gamma, delta) in &pairs[1..] {
            // Jacobi on (e_alpha, e_beta, e_{-gamma}):
            // N_{ab} N_{-g,xi} = -N_{b,-g} N_{a,b-g} - N_{-g,a} N_{b,a-g},
            // with N_{-g,xi} = (d,d)/(xi,xi) N_{g,d}.
            let ng = rs.negate_id(gamma);
            let mut rhs = 0i64;
            if let Some(bg) = rs.sum_id(beta, ng) {
                rhs -= i64::from(n[beta][ng]) * i64::from(n[alpha][bg]);
            }
            if let Some(ag) = rs.sum_id(alpha, ng) {
                rhs -= i64::from(n[ng][alpha]) * i64::from(n[beta][ag]);
            }
            let val = Rational64::from_integer(rhs) * norm[xi] / (norm[delta] * i64::from(nab));
            debug_assert!(val.is_integer());
            fill(&mut n, gamma, delta, val.to_integer() as i32);
        }
    }
    n
}

fn sub(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{CrossedDiagram, ParabolicGrading};
    use crate::linalg::{collect_sparse, ExactMatrix};
    use crate::rootsys::{Family, LieType};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cb(f: Family, n: usize) -> ChevalleyBasis {
        ChevalleyBasis::new(RootSystem::shared(LieType::new(f, n).unwrap()))
    }

    fn add(acc: &mut BTreeMap<usize, i64>, v: IntVec) {
        for (k, c) in v {
            *acc.entry(k).or_insert(0) += c;
        }
    }

    fn jacobi(c: &ChevalleyBasis, a: usize, b: usize, d: usize) -> bool {
        let mut acc = BTreeMap::new();
        add(&mut acc, c.bracket_int(&[(a, 1)], &c.bracket_basis(b, d)));
        add(&mut acc, c.bracket_int(&[(b, 1)], &c.bracket_basis(d, a)));
        add(&mut acc, c.bracket_int(&[(d, 1)], &c.bracket_basis(a, b)));
        acc.values().all(|&v| v == 0)
    }

    #[test]
    fn sl2_relations() {
        let c = cb(Family::A, 1);
        // basis: h, e, f
        assert_eq!(c.bracket_basis(1, 2), vec![(0, 1)]);
        assert_eq!(c.bracket_basis(0, 1), vec![(1, 2)]);
        assert_eq!(c.bracket_basis(0, 2), vec![(2, -2)]);
        assert_eq!(c.killing_basis(1, 2), 4);
        assert_eq!(c.killing_basis(0, 0), 8);
    }

    #[test]
    fn a2_constants_and_jacobi() {
        let c = cb(Family::A, 2);
        assert_eq!(c.n(0, 1).abs(), 1);
        let mut count = 0;
        for a in 0..8 {
            for b in 0..8 {
                for d in 0..8 {
                    assert!(jacobi(&c, a, b, d));
                    count += 1;
                }
            }
        }
        assert!(count >= 56);
    }

    #[test]
    fn g2_string_constant() {
        let c = cb(Family::G, 2);
        let rs = c.root_system();
        let s = rs.id_of(&[1, 0]).unwrap();
        let ls = rs.id_of(&[1, 1]).unwrap();
        assert_eq!(c.n(s, ls).abs(), 2);
    }

    #[test]
    fn bracket_examples() {
        let c = cb(Family::B, 3);
        let rs = c.root_system().clone();
        let dim = c.dim();
        let unit = |k: usize| {
            let mut v = vec![Rational64::zero(); dim];
            v[k] = Rational64::from_integer(1);
            v
        };
        let th = c.root_index(rs.highest_id());
        let mth = c.root_index(rs.negate_id(rs.highest_id()));
        let x: Vec<Rational64> = (0..dim).map(|k| Rational64::from_integer(k as i64 % 3 - 1)).collect();
        assert!(c.bracket(&x, &x).iter().all(|q| q.is_zero()));
        let h = c.bracket(&unit(th), &unit(mth));
        for i in 0..c.rank() {
            assert_eq!(h[i], Rational64::from_integer(c.coroot(rs.highest_id())[i]));
        }
        for i in 0..c.rank() {
            let v = c.bracket(&unit(i), &unit(th));
            let p = rs.pairing_coeffs(rs.highest_root().coeffs(), i + 1);
            assert_eq!(v[th], Rational64::from_integer(i64::from(p)));
        }
        assert!(c.killing_form(&unit(th), &unit(th)).is_zero());
        assert!(!c.killing_form(&unit(th), &unit(mth)).is_zero());
    }

    #[test]
    fn magnitude_law_and_antisymmetry() {
        for t in LieType::all_up_to(8) {
            let c = ChevalleyBasis::new(RootSystem::shared(t));
            let rs = c.root_system();
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    assert_eq!(c.n(a, b), -c.n(b, a), "{t}");
                    match rs.sum_id(a, b) {
                        Some(_) => {
                            let p = rs.string_below(b, a);
                            assert_eq!(c.n(a, b).abs(), p + 1, "{t} {a} {b}");
                        }
                        None => assert_eq!(c.n(a, b), 0),
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_exhaustive_small_rank() {
        for t in LieType::all_up_to(4) {
            let c = ChevalleyBasis::new(RootSystem::shared(t));
            let d = c.dim();
            for a in 0..d {
                for b in a + 1..d {
                    for e in b + 1..d {
                        assert!(jacobi(&c, a, b, e), "{t}: ({a},{b},{e})");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_random_up_to_rank_8() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for t in LieType::all_up_to(8) {
            let c = ChevalleyBasis::new(RootSystem::shared(t));
            let d = c.dim();
            for _ in 0..10_000 {
                let (a, b, e) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                assert!(jacobi(&c, a, b, e), "{t}: ({a},{b},{e})");
            }
        }
    }

    #[test]
    fn killing_is_ad_invariant() {
        for t in LieType::all_up_to(3) {
            let c = ChevalleyBasis::new(RootSystem::shared(t));
            let d = c.dim();
            let kill = |x: &IntVec, y: &IntVec| -> i64 {
                let mut s = 0;
                for &(a, ca) in x {
                    for &(b, cb) in y {
                        s += ca * cb * c.killing_basis(a, b);
                    }
                }
                s
            };
            for a in 0..d {
                for b in 0..d {
                    for e in 0..d {
                        let lhs = kill(&c.bracket_basis(a, b), &vec![(e, 1)]);
                        let rhs = kill(&vec![(a, 1)], &c.bracket_basis(b, e));
                        assert_eq!(lhs, rhs, "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn killing_matches_literal_trace_everywhere() {
        let c = cb(Family::C, 3);
        for a in 0..c.dim() {
            for b in 0..c.dim() {
                assert_eq!(c.killing_basis(a, b), c.trace_ad_ad(a, b));
            }
        }
    }

    fn pairing_rank(c: &ChevalleyBasis, g: &ParabolicGrading, i: i32) -> (usize, usize) {
        let mut rows: Vec<usize> = g.roots_of_degree(i).iter().map(|&id| c.root_index(id)).collect();
        let mut cols: Vec<usize> = g.roots_of_degree(-i).iter().map(|&id| c.root_index(id)).collect();
        if i == 0 {
            rows.extend(0..c.rank());
            cols.extend(0..c.rank());
        }
        let m = ExactMatrix::from_columns(
            rows.len(),
            cols.iter()
                .map(|&b| {
                    collect_sparse(rows.iter().enumerate().map(|(k, &a)| {
                        (k, Rational64::from_integer(c.killing_basis(a, b)))
                    }))
                })
                .collect(),
        );
        (m.rank(), rows.len())
    }

    #[test]
    fn killing_pairing_a3_node1() {
        let c = cb(Family::A, 3);
        let g = ParabolicGrading::new(
            c.root_system().clone(),
            CrossedDiagram::maximal(LieType::new(Family::A, 3).unwrap(), 1).unwrap(),
        )
        .unwrap();
        assert_eq!(pairing_rank(&c, &g, 1), (3, 3));
    }

    #[test]
    fn killing_pairings_nondegenerate() {
        for t in LieType::all_up_to(6) {
            let c = ChevalleyBasis::new(RootSystem::shared(t));
            for node in 1..=t.rank() {
                let g = ParabolicGrading::new(
                    c.root_system().clone(),
                    CrossedDiagram::maximal(t, node).unwrap(),
                )
                .unwrap();
                for i in 0..=g.depth() {
                    let (r, n) = pairing_rank(&c, &g, i);
                    assert_eq!(r, n, "{t} node {node} degree {i}");
                }
            }
        }
    }
}
