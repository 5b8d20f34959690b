//! Gradings of `g` induced by a set of crossed simple roots.
//!
//! The degree of a root is the sum of its coefficients at crossed nodes;
//! the Cartan subalgebra sits in degree 0. `p_i` is the span of the root
//! spaces of degree `i`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{classical_dim, Family, LieType, RootSystem};

/// A Dynkin diagram with some nodes crossed. Nodes are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossedDiagram {
    lie_type: LieType,
    sigma: BTreeSet<usize>,
}

impl CrossedDiagram {
    pub fn new(lie_type: LieType, sigma: impl IntoIterator<Item = usize>) -> Result<Self> {
        let sigma: BTreeSet<usize> = sigma.into_iter().collect();
        for &i in &sigma {
            if i == 0 || i > lie_type.rank() {
                return Err(Error::NodeOutOfRange {
                    node: i,
                    rank: lie_type.rank(),
                });
            }
        }
        Ok(CrossedDiagram { lie_type, sigma })
    }

    pub fn maximal(lie_type: LieType, node: usize) -> Result<Self> {
        Self::new(lie_type, [node])
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn sigma(&self) -> &BTreeSet<usize> {
        &self.sigma
    }

    pub fn is_maximal(&self) -> bool {
        self.sigma.len() == 1
    }

    /// The single crossed node of a maximal parabolic.
    pub fn node(&self) -> Option<usize> {
        if self.is_maximal() {
            self.sigma.iter().next().copied()
        } else {
            None
        }
    }

    /// `*`/`x` mask, one character per node.
    pub fn mask(&self) -> String {
        (1..=self.lie_type.rank())
            .map(|i| if self.sigma.contains(&i) { 'x' } else { '*' })
            .collect()
    }
}

impl fmt::Display for CrossedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lie_type, self.mask())
    }
}

/// Sum of the coefficients of `coeffs` at the crossed nodes.
pub fn ht_sigma(coeffs: &[i32], sigma: &BTreeSet<usize>) -> i32 {
    sigma.iter().map(|&i| coeffs[i - 1]).sum()
}

/// The |k|-grading `g = p_{-k} + ... + p_k` of a crossed diagram.
#[derive(Debug, Clone)]
pub struct ParabolicGrading {
    rs: Arc<RootSystem>,
    diagram: CrossedDiagram,
    degree: Vec<i32>,
    depth: i32,
    dims: BTreeMap<i32, usize>,
}

pub fn build_grading(rs: &Arc<RootSystem>, diagram: &CrossedDiagram) -> Result<ParabolicGrading> {
    ParabolicGrading::new(rs.clone(), diagram.clone())
}

impl ParabolicGrading {
    pub fn new(rs: Arc<RootSystem>, diagram: CrossedDiagram) -> Result<Self> {
        if rs.lie_type() != diagram.lie_type() {
            return Err(Error::Contract(format!(
                "diagram {} does not match root system {}",
                diagram,
                rs.lie_type()
            )));
        }
        let degree: Vec<i32> = rs
            .roots()
            .iter()
            .map(|r| ht_sigma(r.coeffs(), diagram.sigma()))
            .collect();
        let depth = ht_sigma(rs.highest_root().coeffs(), diagram.sigma());
        let mut dims = BTreeMap::new();
        dims.insert(0, rs.rank());
        for &d in &degree {
            *dims.entry(d).or_insert(0) += 1;
        }
        Ok(ParabolicGrading {
            rs,
            diagram,
            degree,
            depth,
            dims,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn diagram(&self) -> &CrossedDiagram {
        &self.diagram
    }

    /// Degree of a root by id.
    pub fn degree(&self, id: usize) -> i32 {
        self.degree[id]
    }

    pub fn degree_of(&self, coeffs: &[i32]) -> i32 {
        ht_sigma(coeffs, self.diagram.sigma())
    }

    pub fn depth(&self) -> i32 {
        self.depth
    }

    /// `dim p_i` for every nonzero component (degree 0 includes the Cartan subalgebra).
    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    /// Root ids of `p_i`.
    pub fn roots_of_degree(&self, i: i32) -> Vec<usize> {
        (0..self.degree.len()).filter(|&k| self.degree[k] == i).collect()
    }

    /// Root ids spanning `p_+`, in root-id order.
    pub fn positive_part(&self) -> Vec<usize> {
        (0..self.degree.len()).filter(|&k| self.degree[k] > 0).collect()
    }

    /// Whether iterated brackets of `p_{-1}` reach every negative-degree root.
    pub fn bracket_generates(&self) -> bool {
        let rs = &self.rs;
        let gens = self.roots_of_degree(-1);
        let mut reached: HashSet<usize> = gens.iter().copied().collect();
        let mut frontier: Vec<usize> = gens.clone();
        while let Some(b) = frontier.pop() {
            for &g in &gens {
                if let Some(s) = rs.sum_id(b, g) {
                    if reached.insert(s) {
                        frontier.push(s);
                    }
                }
            }
        }
        (0..self.degree.len())
            .filter(|&k| self.degree[k] < 0)
            .all(|k| reached.contains(&k))
    }

    /// Levi factor: the diagram with crossed nodes deleted.
    pub fn levi_type(&self) -> LeviType {
        levi_type(&self.rs, self.diagram.sigma())
    }
}

/// One simple factor of a Levi subalgebra. Ranks below the usual validity
/// bounds (`B1`, `C1`, `D2`, `D3`) are kept so labels follow the classical
/// `X_{n-i}` pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LeviFactor {
    pub family: Family,
    pub rank: usize,
}

impl LeviFactor {
    pub fn dim(&self) -> usize {
        classical_dim(self.family, self.rank)
    }
}

impl fmt::Display for LeviFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Semisimple Levi type together with the centre dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviType {
    pub simple_factors: Vec<LeviFactor>,
    pub center_dim: usize,
}

impl LeviType {
    pub fn semisimple_dim(&self) -> usize {
        self.simple_factors.iter().map(LeviFactor::dim).sum()
    }

    /// `A2×B1`, or `trivial` when there is no semisimple part.
    pub fn label(&self) -> String {
        if self.simple_factors.is_empty() {
            return "trivial".to_string();
        }
        self.simple_factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("×")
    }
}

fn levi_type(rs: &RootSystem, sigma: &BTreeSet<usize>) -> LeviType {
    let t = rs.lie_type();
    let n = t.rank();
    let keep: Vec<usize> = (1..=n).filter(|i| !sigma.contains(i)).collect();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut assigned = BTreeSet::new();
    for &s in &keep {
        if assigned.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        assigned.insert(s);
        let mut k = 0;
        while k < comp.len() {
            for j in rs.neighbors(comp[k]) {
                if !sigma.contains(&j) && assigned.insert(j) {
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }

    // In D_n the two spin nodes left isolated by deleting node n-2 form D2.
    if t.family() == Family::D {
        let a = comps.iter().position(|c| c == &vec![n - 1]);
        let b = comps.iter().position(|c| c == &vec![n]);
        if let (Some(a), Some(b)) = (a, b) {
            comps[a].push(n);
            comps.remove(b);
        }
    }
    comps.sort_by_key(|c| c[0]);

    let simple_factors = comps.iter().map(|c| factor_type(rs, c)).collect();
    LeviType {
        simple_factors,
        center_dim: sigma.len(),
    }
}

fn factor_type(rs: &RootSystem, comp: &[usize]) -> LeviFactor {
    let t = rs.lie_type();
    let n = t.rank();
    let k = comp.len();
    let cartan = rs.cartan();
    let has = |i: usize| comp.contains(&i);
    let factor = |family| LeviFactor { family, rank: k };

    let mut triple = false;
    let mut double = false;
    for &i in comp {
        for &j in comp {
            let m = cartan[i - 1][j - 1] * cartan[j - 1][i - 1];
            triple |= m == 3;
            double |= m == 2;
        }
    }
    if triple {
        return factor(Family::G);
    }
    if k == n {
        return factor(t.family());
    }
    match t.family() {
        Family::B if has(n) => return factor(Family::B),
        Family::C if has(n) => return factor(Family::C),
        Family::D if has(n - 1) && has(n) && (k == 2 || has(n - 2)) => {
            return factor(Family::D)
        }
        Family::F if double => {
            // long end of the double bond at the diagram end means type C
            let longs = comp.iter().filter(|&&i| rs.is_long_simple(i)).count();
            return factor(if longs == 1 && k == 3 { Family::C } else { Family::B });
        }
        _ => {}
    }
    // simply laced: chain or a single branch point
    let degree = |i: usize| {
        comp.iter()
            .filter(|&&j| j != i && cartan[i - 1][j - 1] != 0)
            .count()
    };
    let Some(center) = comp.iter().copied().find(|&i| degree(i) == 3) else {
        return factor(Family::A);
    };
    let mut arms: Vec<usize> = Vec::new();
    for &start in comp.iter().filter(|&&j| j != center && cartan[center - 1][j - 1] != 0) {
        let mut len = 1;
        let mut prev = center;
        let mut cur = start;
        loop {
            let next = comp
                .iter()
                .copied()
                .find(|&j| j != prev && j != cur && cartan[cur - 1][j - 1] != 0);
            match next {
                Some(nx) => {
                    len += 1;
                    prev = cur;
                    cur = nx;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => factor(Family::D),
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => factor(Family::E),
        _ => unreachable!("not a finite-type branch: {arms:?}"),
    }
}

/// Classification of a maximal parabolic `(g, alpha_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    /// Long root, depth 1.
    Symmetric,
    /// Long root, depth 2 with `dim p_2 = 1`.
    Contact,
    /// `(B_n, alpha_3)` for `n >= 4` or `(D_n, alpha_3)` for `n >= 5`.
    BD3,
    /// Any other long root.
    Other,
    ShortRoot,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Symmetric => "symmetric",
            Case::Contact => "contact",
            Case::BD3 => "BD3",
            Case::Other => "other",
            Case::ShortRoot => "short",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_case(rs: &Arc<RootSystem>, node: usize) -> Result<Case> {
    rs.check_node(node)?;
    if !rs.is_long_simple(node) {
        return Ok(Case::ShortRoot);
    }
    let g = ParabolicGrading::new(rs.clone(), CrossedDiagram::maximal(rs.lie_type(), node)?)?;
    if g.depth() == 1 {
        return Ok(Case::Symmetric);
    }
    if g.depth() == 2 && g.dim(2) == 1 {
        return Ok(Case::Contact);
    }
    let t = rs.lie_type();
    let bd3 = node == 3
        && match t.family() {
            Family::B => t.rank() >= 4,
            Family::D => t.rank() >= 5,
            _ => false,
        };
    Ok(if bd3 { Case::BD3 } else { Case::Other })
}

/// `(D4, alpha_3)` and `(D4, alpha_4)` are spin nodes, related to `alpha_1` by triality.
pub fn is_d4_spin_node(t: LieType, node: usize) -> bool {
    t.family() == Family::D && t.rank() == 4 && (node == 3 || node == 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grading(f: Family, n: usize, sigma: &[usize]) -> ParabolicGrading {
        let t = LieType::new(f, n).unwrap();
        let rs = RootSystem::shared(t);
        ParabolicGrading::new(rs, CrossedDiagram::new(t, sigma.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn ht_examples() {
        let empty = BTreeSet::new();
        let a3 = RootSystem::new(LieType::new(Family::A, 3).unwrap());
        for r in a3.roots() {
            assert_eq!(ht_sigma(r.coeffs(), &empty), 0);
        }
        assert_eq!(ht_sigma(a3.highest_root().coeffs(), &BTreeSet::from([1])), 1);
        let b4 = RootSystem::new(LieType::new(Family::B, 4).unwrap());
        assert_eq!(b4.highest_root().coeffs(), &[1, 2, 2, 2]);
        assert_eq!(ht_sigma(b4.highest_root().coeffs(), &BTreeSet::from([3])), 2);
    }

    #[test]
    fn grading_examples() {
        assert_eq!(grading(Family::A, 4, &[2]).dim(-1), 6);
        let e7 = grading(Family::E, 7, &[7]);
        assert_eq!((e7.dim(-1), e7.depth()), (27, 1));
        let g2 = grading(Family::G, 2, &[2]);
        assert_eq!((g2.depth(), g2.dim(2)), (2, 1));
    }

    #[test]
    fn levi_examples() {
        assert_eq!(grading(Family::B, 4, &[3]).levi_type().label(), "A2×B1");
        assert_eq!(grading(Family::A, 2, &[1]).levi_type().label(), "A1");
        assert_eq!(grading(Family::C, 3, &[3]).levi_type().label(), "A2");
        assert_eq!(grading(Family::D, 5, &[3]).levi_type().label(), "A2×D2");
        assert_eq!(grading(Family::D, 4, &[2]).levi_type().label(), "A1×D2");
        assert_eq!(grading(Family::D, 5, &[1]).levi_type().label(), "D4");
        assert_eq!(grading(Family::D, 3, &[1]).levi_type().label(), "D2");
        assert_eq!(grading(Family::D, 3, &[2]).levi_type().label(), "A2");
        assert_eq!(grading(Family::E, 6, &[6]).levi_type().label(), "D5");
        assert_eq!(grading(Family::E, 7, &[1]).levi_type().label(), "D6");
        assert_eq!(grading(Family::E, 8, &[8]).levi_type().label(), "E7");
        assert_eq!(grading(Family::E, 7, &[7]).levi_type().label(), "E6");
        assert_eq!(grading(Family::F, 4, &[1]).levi_type().label(), "C3");
        assert_eq!(grading(Family::F, 4, &[4]).levi_type().label(), "B3");
        assert_eq!(grading(Family::G, 2, &[2]).levi_type().label(), "A1");
        assert_eq!(grading(Family::A, 1, &[1]).levi_type().label(), "trivial");
        assert_eq!(grading(Family::B, 5, &[2]).levi_type().label(), "A1×B3");
    }

    #[test]
    fn classification_examples() {
        let case = |f, n, i| classify_case(&RootSystem::shared(LieType::new(f, n).unwrap()), i).unwrap();
        assert_eq!(case(Family::A, 5, 3), Case::Symmetric);
        assert_eq!(case(Family::E, 8, 8), Case::Contact);
        assert_eq!(case(Family::B, 5, 3), Case::BD3);
        assert_eq!(case(Family::B, 5, 5), Case::ShortRoot);
        assert_eq!(case(Family::G, 2, 1), Case::ShortRoot);
        assert_eq!(case(Family::G, 2, 2), Case::Contact);
        assert_eq!(case(Family::D, 4, 3), Case::Symmetric);
        assert_eq!(case(Family::D, 6, 4), Case::Other);
        assert_eq!(case(Family::F, 4, 2), Case::Other);
    }

    #[test]
    fn grading_invariants_all_types() {
        for t in LieType::all_up_to(8) {
            let rs = RootSystem::shared(t);
            let n = t.rank();
            let mut sigmas: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
            sigmas.push((1..=n).collect());
            if n >= 3 {
                sigmas.push(vec![1, n]);
            }
            for sigma in sigmas {
                let g = ParabolicGrading::new(rs.clone(), CrossedDiagram::new(t, sigma).unwrap()).unwrap();
                for (&i, &d) in g.dims() {
                    assert_eq!(d, g.dim(-i), "{}", g.diagram());
                }
                assert_eq!(g.dims().values().sum::<usize>(), t.dim());
                assert_eq!(g.depth(), *g.dims().keys().max().unwrap());
                for a in 0..rs.num_roots() {
                    assert_eq!(g.degree(rs.negate_id(a)), -g.degree(a));
                    for b in 0..rs.num_roots() {
                        if let Some(s) = rs.sum_id(a, b) {
                            assert_eq!(g.degree(s), g.degree(a) + g.degree(b));
                        }
                    }
                }
                assert!(g.bracket_generates(), "{}", g.diagram());
                let levi = g.levi_type();
                let off: usize = g.dims().iter().filter(|(&i, _)| i != 0).map(|(_, d)| d).sum();
                assert_eq!(
                    levi.semisimple_dim() + levi.center_dim + off,
                    t.dim(),
                    "{} {}",
                    g.diagram(),
                    levi.label()
                );
            }
        }
    }
}
