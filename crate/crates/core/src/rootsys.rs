//! Irreducible reduced root systems of types A–G.
//!
//! Nodes are numbered as in Bourbaki and addressed 1-based in the public
//! API. Roots are integer coordinate vectors over the simple roots. The
//! invariant form is the symmetrization `D·A` of the Cartan matrix,
//! normalized so that long roots have squared length 2.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    /// Case-insensitive.
    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }

    fn rank_range(self) -> &'static str {
        match self {
            Family::A => "n >= 1",
            Family::B | Family::C => "n >= 2",
            Family::D => "n >= 3",
            Family::E => "n in {6, 7, 8}",
            Family::F => "n = 4",
            Family::G => "n = 2",
        }
    }

    fn accepts(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 3,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A validated Cartan type `X_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.accepts(rank) {
            return Err(Error::InvalidRank {
                family,
                rank,
                expected: family.rank_range(),
            });
        }
        Ok(LieType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the simple Lie algebra, from the classical formulas.
    pub fn dim(&self) -> usize {
        classical_dim(self.family, self.rank)
    }

    /// Every valid type of rank at most `max_rank`, ordered by (family, rank).
    pub fn all_up_to(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = LieType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Cartan matrix `A[i][j] = <alpha_j, alpha_i^vee>` in Bourbaki numbering (0-based).
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.dynkin_edges() {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        match self.family {
            // alpha_n short
            Family::B => a[n - 1][n - 2] = -2,
            // alpha_n long
            Family::C => a[n - 2][n - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Family::F => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Undirected Dynkin edges as 0-based node pairs.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
            }
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-...-n with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Dimension formula that also accepts the degenerate ranks used in Levi labels
/// (`B1`, `C1`, `D2`, `D3`).
pub(crate) fn classical_dim(family: Family, n: usize) -> usize {
    match family {
        Family::A => n * (n + 2),
        Family::B | Family::C => n * (2 * n + 1),
        Family::D => n * (2 * n).saturating_sub(1),
        Family::E => match n {
            6 => 78,
            7 => 133,
            8 => 248,
            _ => 0,
        },
        Family::F => 52,
        Family::G => 14,
    }
}

/// A root as coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    /// The simple root `alpha_i` (1-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn plus(&self, other: &Root) -> Vec<i32> {
        add_coeffs(&self.0, &other.0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let sign = if self.is_positive() { 1 } else { -1 };
        if sign < 0 {
            write!(f, "-(")?;
        }
        for (k, &c) in self.0.iter().enumerate() {
            let c = c * sign;
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", k + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        if sign < 0 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn add_coeffs(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// An irreducible root system with its roots enumerated.
///
/// Root ids: positive roots occupy `0..N` sorted by (height, coefficients
/// descending lexicographically); the negative of positive root `k` has id
/// `N + k`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i32>>,
    half_norms: Vec<Rational64>,
    form: Vec<Vec<Rational64>>,
    roots: Vec<Root>,
    npos: usize,
    index: HashMap<Vec<i32>, usize>,
    highest: usize,
}

/// Build the root system of `t` by breadth-first closure along root strings.
pub fn build_root_system(t: LieType) -> RootSystem {
    RootSystem::new(t)
}

impl RootSystem {
    pub fn new(t: LieType) -> Self {
        let n = t.rank();
        let cartan = t.cartan_matrix();
        let half_norms = half_norms(&cartan);
        let form: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| half_norms[i] * i64::from(cartan[i][j])).collect())
            .collect();

        let mut positives: Vec<Vec<i32>> = Vec::new();
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut layer: Vec<Vec<i32>> = (0..n).map(|i| Root::simple(n, i + 1).0).collect();
        for r in &layer {
            seen.insert(r.clone(), ());
        }
        while !layer.is_empty() {
            positives.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.contains_key(&up) {
                        continue;
                    }
                    // p = length of the alpha_i-string below beta
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if seen.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i32 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                    if p - pair > 0 {
                        seen.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
            layer = next;
        }

        positives.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = positives.len();
        let mut roots: Vec<Root> = positives.iter().cloned().map(Root).collect();
        roots.extend(positives.iter().map(|r| Root(r.iter().map(|c| -c).collect())));
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.0.clone(), k))
            .collect();
        let highest = npos - 1;

        RootSystem {
            lie_type: t,
            cartan,
            half_norms,
            form,
            roots,
            npos,
            index,
            highest,
        }
    }

    pub fn shared(t: LieType) -> Arc<Self> {
        Arc::new(Self::new(t))
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Symmetrized form `(alpha_i, alpha_j)`, long roots of squared length 2.
    pub fn form(&self) -> &[Vec<Rational64>] {
        &self.form
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.npos]
    }

    pub fn root(&self, id: usize) -> &Root {
        &self.roots[id]
    }

    pub fn id_of(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn is_root(&self, coeffs: &[i32]) -> bool {
        self.index.contains_key(coeffs)
    }

    pub fn is_positive_id(&self, id: usize) -> bool {
        id < self.npos
    }

    pub fn negate_id(&self, id: usize) -> usize {
        if id < self.npos {
            id + self.npos
        } else {
            id - self.npos
        }
    }

    /// Id of `root(a) + root(b)` if that is a root.
    pub fn sum_id(&self, a: usize, b: usize) -> Option<usize> {
        let s = add_coeffs(&self.roots[a].0, &self.roots[b].0);
        self.id_of(&s)
    }

    /// `beta + gamma` when it is a root.
    pub fn add_root(&self, beta: &Root, gamma: &Root) -> Option<Root> {
        let s = beta.plus(gamma);
        if self.is_root(&s) {
            Some(Root(s))
        } else {
            None
        }
    }

    /// The highest root theta.
    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest]
    }

    pub fn highest_id(&self) -> usize {
        self.highest
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::NodeOutOfRange {
                node: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `<v, alpha_i^vee>` for any integer weight in the root basis (1-based `i`).
    pub fn pairing_coeffs(&self, v: &[i32], i: usize) -> i32 {
        let row = &self.cartan[i - 1];
        v.iter().zip(row).map(|(a, b)| a * b).sum()
    }

    /// `<beta, alpha_i^vee> = 2 (beta, alpha_i) / (alpha_i, alpha_i)`.
    pub fn pairing(&self, beta: &Root, i: usize) -> Result<i32> {
        self.check_node(i)?;
        if !self.is_root(beta.coeffs()) {
            return Err(Error::NotARoot(beta.coeffs().to_vec()));
        }
        Ok(self.pairing_coeffs(beta.coeffs(), i))
    }

    /// Simple reflection `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, beta: &Root) -> Result<Root> {
        self.check_node(i)?;
        if !self.is_root(beta.coeffs()) {
            return Err(Error::NotARoot(beta.coeffs().to_vec()));
        }
        Ok(Root(self.reflect_coeffs(i, beta.coeffs())))
    }

    /// Reflection on arbitrary integer weights in the root basis.
    pub fn reflect_coeffs(&self, i: usize, v: &[i32]) -> Vec<i32> {
        let p = self.pairing_coeffs(v, i);
        let mut out = v.to_vec();
        out[i - 1] -= p;
        out
    }

    /// Invariant form on integer combinations of simple roots.
    pub fn inner(&self, a: &[i32], b: &[i32]) -> Rational64 {
        let mut acc = Rational64::from_integer(0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    acc += self.form[i][j] * i64::from(ai * bj);
                }
            }
        }
        acc
    }

    pub fn norm2(&self, id: usize) -> Rational64 {
        let c = &self.roots[id].0;
        self.inner(c, c)
    }

    /// `(beta, beta) = 2`.
    pub fn is_long(&self, beta: &Root) -> bool {
        self.inner(beta.coeffs(), beta.coeffs()) == Rational64::from_integer(2)
    }

    pub fn is_long_simple(&self, i: usize) -> bool {
        self.half_norms[i - 1] == Rational64::from_integer(1)
    }

    /// `(alpha_i, alpha_i) / 2` for each simple root (0-based).
    pub fn half_norms(&self) -> &[Rational64] {
        &self.half_norms
    }

    /// Dynkin neighbours of node `i` (1-based, ascending).
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&j| j != i && self.cartan[i - 1][j - 1] != 0)
            .collect()
    }

    /// Coroot `beta^vee` in the basis of simple coroots.
    pub fn coroot_coeffs(&self, id: usize) -> Vec<i64> {
        let beta = &self.roots[id].0;
        let half = self.norm2(id) / 2;
        beta.iter()
            .zip(&self.half_norms)
            .map(|(&c, d)| {
                let v = *d * i64::from(c) / half;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    /// Largest `p >= 0` with `beta - p * gamma` a root.
    pub fn string_below(&self, beta: usize, gamma: usize) -> i32 {
        let b = &self.roots[beta].0;
        let g = &self.roots[gamma].0;
        let mut p = 0;
        loop {
            let v: Vec<i32> = b.iter().zip(g).map(|(x, y)| x - (p + 1) * y).collect();
            if self.is_root(&v) {
                p += 1;
            } else {
                return p;
            }
        }
    }
}

fn half_norms(cartan: &[Vec<i32>]) -> Vec<Rational64> {
    // d_i a_ij = d_j a_ji; propagate from node 0 along the (connected) diagram
    // and rescale so the largest value is 1.
    let n = cartan.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    d[0] = Some(Rational64::from_integer(1));
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                if let (Some(di), None) = (d[i], d[j]) {
                    d[j] = Some(di * i64::from(cartan[i][j]) / i64::from(cartan[j][i]));
                    changed = true;
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = d.iter().copied().max().unwrap();
    d.into_iter().map(|x| x / max).collect()
}
