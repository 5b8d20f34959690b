//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored column-wise: column `j` is the image of the `j`-th
//! domain basis vector. Ranks are computed by fraction-free incremental
//! echelon reduction on integer rows: every column is first scaled to a
//! primitive integer vector, and elimination steps `a*u - b*v` are followed by
//! removal of the gcd content. Arithmetic runs in checked `i128`; on overflow
//! the whole computation is redone with arbitrary precision.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

/// Sparse vector with strictly increasing indices and nonzero entries.
pub type SparseVec = Vec<(usize, Rational64)>;

/// Accumulate `(index, value)` contributions into a canonical sparse vector.
pub fn collect_sparse(terms: impl IntoIterator<Item = (usize, Rational64)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational64> = BTreeMap::new();
    for (k, v) in terms {
        if v.is_zero() {
            continue;
        }
        *acc.entry(k).or_insert_with(Rational64::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// An exact `nrows x ncols` matrix given by its sparse columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn new(nrows: usize) -> Self {
        ExactMatrix {
            nrows,
            cols: Vec::new(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|&(k, _)| k < nrows)));
        ExactMatrix { nrows, cols }
    }

    pub fn push_column(&mut self, col: SparseVec) {
        debug_assert!(col.iter().all(|&(k, _)| k < self.nrows));
        self.cols.push(col);
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Rational64 {
        match self.cols[j].binary_search_by_key(&i, |&(k, _)| k) {
            Ok(pos) => self.cols[j][pos].1,
            Err(_) => Rational64::zero(),
        }
    }

    /// `self * v` for a sparse vector `v` over the columns.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        collect_sparse(
            v.iter()
                .flat_map(|&(j, c)| self.cols[j].iter().map(move |&(i, a)| (i, a * c))),
        )
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(other.nrows, self.ncols(), "dimension mismatch in product");
        ExactMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Stack `self` on top of `other` (same domain).
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ncols(), other.ncols(), "vstack needs equal column counts");
        let off = self.nrows;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|&(i, v)| (i + off, v)));
                c
            })
            .collect();
        ExactMatrix {
            nrows: self.nrows + other.nrows,
            cols,
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                cols[i].push((j, v));
            }
        }
        ExactMatrix {
            nrows: self.ncols(),
            cols,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.cols)
    }

    pub fn nullity(&self) -> usize {
        self.ncols() - self.rank()
    }
}

/// Rank of a family of sparse rational vectors.
pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let ints: Vec<Vec<(usize, i128)>> = vectors.iter().map(|v| primitive_i128(v)).collect();
    match rank_i128(&ints) {
        Some(r) => r,
        None => rank_big(vectors),
    }
}

fn primitive_i128(v: &SparseVec) -> Vec<(usize, i128)> {
    let l = v.iter().fold(1i128, |acc, (_, q)| acc.lcm(&i128::from(*q.denom())));
    let mut out: Vec<(usize, i128)> = v
        .iter()
        .map(|(k, q)| (*k, i128::from(*q.numer()) * (l / i128::from(*q.denom()))))
        .collect();
    remove_content_i128(&mut out);
    out
}

fn remove_content_i128(v: &mut [(usize, i128)]) {
    let g = v.iter().fold(0i128, |acc, (_, x)| acc.gcd(x));
    if g > 1 {
        for (_, x) in v.iter_mut() {
            *x /= g;
        }
    }
}

/// `a*u - b*w` with checked arithmetic; `None` on overflow.
fn combine_i128(a: i128, u: &[(usize, i128)], b: i128, w: &[(usize, i128)]) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let ku = u.get(i).map_or(usize::MAX, |e| e.0);
        let kw = w.get(j).map_or(usize::MAX, |e| e.0);
        let (k, val) = if ku < kw {
            i += 1;
            (ku, a.checked_mul(u[i - 1].1)?)
        } else if kw < ku {
            j += 1;
            (kw, b.checked_mul(w[j - 1].1)?.checked_neg()?)
        } else {
            i += 1;
            j += 1;
            let x = a.checked_mul(u[i - 1].1)?;
            let y = b.checked_mul(w[j - 1].1)?;
            (ku, x.checked_sub(y)?)
        };
        if val != 0 {
            out.push((k, val));
        }
    }
    Some(out)
}

fn rank_i128(vectors: &[Vec<(usize, i128)>]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, i128)>> = BTreeMap::new();
    for v in vectors {
        let mut row = v.clone();
        while let Some(&(lead, c)) = row.first() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    let pc = p[0].1;
                    let g = pc.gcd(&c);
                    row = combine_i128(pc / g, &row, c / g, p)?;
                    remove_content_i128(&mut row);
                }
            }
        }
    }
    Some(pivots.len())
}

fn rank_big(vectors: &[SparseVec]) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
    for v in vectors {
        let l = v
            .iter()
            .fold(BigInt::from(1), |acc, (_, q)| acc.lcm(&BigInt::from(*q.denom())));
        let mut row: Vec<(usize, BigInt)> = v
            .iter()
            .map(|(k, q)| (*k, BigInt::from(*q.numer()) * (&l / BigInt::from(*q.denom()))))
            .collect();
        while let Some((lead, c)) = row.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    let pc = p[0].1.clone();
                    let g = pc.gcd(&c);
                    let (a, b) = (&pc / &g, &c / &g);
                    row = combine_big(&a, &row, &b, p);
                    let content = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
                    if content > BigInt::from(1) {
                        for (_, x) in row.iter_mut() {
                            *x = &*x / &content;
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

fn combine_big(a: &BigInt, u: &[(usize, BigInt)], b: &BigInt, w: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let ku = u.get(i).map_or(usize::MAX, |e| e.0);
        let kw = w.get(j).map_or(usize::MAX, |e| e.0);
        let (k, val) = if ku < kw {
            i += 1;
            (ku, a * &u[i - 1].1)
        } else if kw < ku {
            j += 1;
            (kw, -(b * &w[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ku, a * &u[i - 1].1 - b * &w[j - 1].1)
        };
        if !val.is_zero() {
            out.push((k, val));
        }
    }
    out
}

/// Rank via the arbitrary-precision path only; exposed for cross-checks.
pub fn rank_bigint(vectors: &[SparseVec]) -> usize {
    rank_big(vectors)
}
