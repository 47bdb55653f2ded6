//! Sparse exact-rational matrices and their ranks.
//!
//! Ranks are computed per connected component of the row/column incidence
//! graph. Each component is first reduced modulo a 31-bit prime, which gives
//! a lower bound on the rank over `Q`; a component whose modular rank is
//! already `min(rows, cols)` is done. The rest go through fraction-free
//! (Bareiss) elimination over the integers. Callers holding extra structure,
//! such as a complex where consecutive ranks must add up to a dimension, can
//! use the lower bounds directly via [`SparseMatrix::rank_lower_bound`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Prime used for modular rank bounds.
pub const MODULUS: u64 = 2_147_483_647;

/// Column-major sparse matrix; every stored entry is non-zero.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, Rational::one()));
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch(alloc::format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[c].push((r, v.clone()));
                }
            }
        }
        Ok(m)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// Replaces column `c` by the given entries (zeros dropped, rows summed).
    pub fn set_column(&mut self, c: usize, entries: BTreeMap<usize, Rational>) {
        debug_assert!(entries.keys().all(|&r| r < self.rows));
        self.columns[c] = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, Rational)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map_or_else(|_| Rational::zero(), |i| self.columns[c][i].1.clone())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, v) in col {
                for (r, w) in &self.columns[*k] {
                    *acc.entry(*r).or_insert_with(Rational::zero) += v * w;
                }
            }
            out.set_column(c, acc);
        }
        Ok(out)
    }

    /// Connected components of the bipartite row/column graph, ignoring
    /// empty rows and columns. Rows and columns are listed in increasing
    /// order; components are ordered by their first column.
    pub fn components(&self) -> Vec<Component> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, col) in self.columns.iter().enumerate() {
            for (r, _) in col {
                let a = find(&mut parent, self.rows + c);
                let b = find(&mut parent, *r);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<Component> = Vec::new();
        for (c, col) in self.columns.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            let root = find(&mut parent, self.rows + c);
            let idx = *by_root.entry(root).or_insert_with(|| {
                comps.push(Component::default());
                comps.len() - 1
            });
            comps[idx].cols.push(c);
        }
        let mut row_used = vec![false; self.rows];
        for col in &self.columns {
            for (r, _) in col {
                row_used[*r] = true;
            }
        }
        for (r, used) in row_used.into_iter().enumerate() {
            if used {
                let root = find(&mut parent, r);
                comps[by_root[&root]].rows.push(r);
            }
        }
        comps
    }

    /// The submatrix on a component, with local indices.
    fn local(&self, comp: &Component) -> LocalMatrix {
        let mut row_pos = BTreeMap::new();
        for (i, &r) in comp.rows.iter().enumerate() {
            row_pos.insert(r, i);
        }
        let entries = comp
            .cols
            .iter()
            .map(|&c| {
                self.columns[c]
                    .iter()
                    .map(|(r, v)| (row_pos[r], v.clone()))
                    .collect()
            })
            .collect();
        LocalMatrix {
            rows: comp.rows.len(),
            cols: entries,
        }
    }

    /// Rank over `Q`, exactly.
    pub fn rank(&self) -> usize {
        self.rank_report(true).lower
    }

    /// Modular lower bound on the rank, with a flag telling whether it is
    /// already known to be exact.
    pub fn rank_lower_bound(&self) -> RankBound {
        self.rank_report(false)
    }

    fn rank_report(&self, exact: bool) -> RankBound {
        let mut cache: BTreeMap<LocalMatrix, (usize, bool)> = BTreeMap::new();
        let mut total = 0;
        let mut all_exact = true;
        for comp in self.components() {
            let local = self.local(&comp);
            let (rank, is_exact) = match cache.get(&local) {
                Some(v) => *v,
                None => {
                    let full = local.rows.min(local.cols.len());
                    let modular = local.rank_mod_p();
                    let v = if modular == full {
                        (modular, true)
                    } else if exact {
                        (local.rank_bareiss(), true)
                    } else {
                        (modular, false)
                    };
                    cache.insert(local, v);
                    v
                }
            };
            total += rank;
            all_exact &= is_exact;
        }
        RankBound {
            lower: total,
            exact: all_exact,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RankBound {
    pub lower: usize,
    /// Whether `lower` is the rank over `Q`.
    pub exact: bool,
}

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Component {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// A component re-indexed from zero; identical components share one rank
/// computation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct LocalMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Rational)>>,
}

impl LocalMatrix {
    /// Columns scaled to integer vectors (rank is unchanged).
    fn integer_columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.cols
            .iter()
            .map(|col| {
                let l = col
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                col.iter()
                    .map(|(r, v)| (*r, v.numer() * (&l / v.denom())))
                    .collect()
            })
            .collect()
    }

    fn rank_mod_p(&self) -> usize {
        let p = BigInt::from(MODULUS);
        let ncols = self.cols.len();
        // Row-major dense copy; rows of the matrix become rows here.
        let mut m = vec![0u64; self.rows * ncols];
        for (c, col) in self.integer_columns().into_iter().enumerate() {
            for (r, v) in col {
                let mut x = v % &p;
                if x.is_negative() {
                    x += &p;
                }
                m[r * ncols + c] = x.to_u64().expect("reduced below the modulus");
            }
        }
        dense_rank_mod_p(&mut m, self.rows, ncols)
    }

    fn rank_bareiss(&self) -> usize {
        let ncols = self.cols.len();
        let mut m = vec![vec![BigInt::zero(); ncols]; self.rows];
        for (c, col) in self.integer_columns().into_iter().enumerate() {
            for (r, v) in col {
                m[r][c] = v;
            }
        }
        bareiss_rank(m)
    }
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MODULUS;
        }
        b = b * b % MODULUS;
        e >>= 1;
    }
    acc
}

/// Rank of a dense row-major matrix over `F_p`, destroying it.
pub fn dense_rank_mod_p(m: &mut [u64], rows: usize, cols: usize) -> usize {
    let p = MODULUS;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = pow_mod(m[rank * cols + c], p - 2);
        for j in c..cols {
            m[rank * cols + j] = m[rank * cols + j] * inv % p;
        }
        let (top, bottom) = m.split_at_mut((rank + 1) * cols);
        let pivot_row = &top[rank * cols..];
        for row in bottom.chunks_exact_mut(cols) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in c..cols {
                row[j] = (row[j] + nf * pivot_row[j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let pivot = m[rank][c].clone();
        for r in rank + 1..rows {
            let f = m[r][c].clone();
            for j in c + 1..cols {
                let v = (&pivot * &m[r][j] - &f * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of a dense rational matrix.
pub fn rank_of(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    SparseMatrix::from_dense(rows.len(), cols, rows)
        .expect("rectangular input")
        .rank()
}

/// Inverse of a square rational matrix, `None` when singular.
#[allow(clippy::needless_range_loop)]
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(piv, c);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Dense product of rational matrices.
pub fn dense_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}
