//! Higher-rank derivative complexes `Sym^{r−i}W ⊗ H^j(Ω^i)` and their
//! homology.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dense_mul, inverse, rank_of, SparseMatrix};
use crate::symchern::multisets;
use crate::Rational;

/// Hodge dimensions of a compact Kähler manifold together with the wedge
/// action of a basis `v_1..v_q` of `V = H^0(Ω¹)`.
#[derive(Clone, PartialEq, Debug)]
pub struct HodgeDatum {
    d: usize,
    q: usize,
    dims: Vec<Vec<usize>>,
    /// `action[a][i][j]`: `H^j(Ω^i) → H^j(Ω^{i+1})`, `None` meaning zero.
    action: Vec<Vec<Vec<Option<SparseMatrix>>>>,
    /// Free-form declared facts (non-degeneracy loci and the like). Never
    /// used in computations.
    pub metadata: BTreeMap<String, String>,
}

impl HodgeDatum {
    /// A datum with all actions zero. `dims` must be `(d+1) × (d+1)`.
    pub fn new(d: usize, q: usize, dims: Vec<Vec<usize>>) -> Result<Self> {
        if dims.len() != d + 1 || dims.iter().any(|r| r.len() != d + 1) {
            return Err(Error::Data(alloc::format!(
                "dims must be a {0}x{0} table",
                d + 1
            )));
        }
        if dims[0][0] == 0 {
            return Err(Error::Data("h^{0,0} must be at least 1".into()));
        }
        if d >= 1 && dims[1][0] != q {
            return Err(Error::Data(alloc::format!(
                "h^{{1,0}} = {} but q = {q}",
                dims[1][0]
            )));
        }
        Ok(HodgeDatum {
            d,
            q,
            action: vec![vec![vec![None; d + 1]; d]; q],
            dims,
            metadata: BTreeMap::new(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn h(&self, i: usize, j: usize) -> usize {
        self.dims[i][j]
    }

    /// Sets the matrix of `v_a ∧ ·` on `H^j(Ω^i)` (`a` zero-based).
    pub fn set_action(&mut self, a: usize, i: usize, j: usize, m: SparseMatrix) -> Result<()> {
        if a >= self.q || i >= self.d || j > self.d {
            return Err(Error::Data(alloc::format!(
                "action index (a={}, i={i}, j={j}) out of range",
                a + 1
            )));
        }
        let (rows, cols) = (self.dims[i + 1][j], self.dims[i][j]);
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::Data(alloc::format!(
                "action (a={}, i={i}, j={j}) must be {rows}x{cols}, got {}x{}",
                a + 1,
                m.rows(),
                m.cols()
            )));
        }
        self.action[a][i][j] = if m.is_zero() { None } else { Some(m) };
        Ok(())
    }

    /// The stored action (`None` when zero).
    pub fn action(&self, a: usize, i: usize, j: usize) -> Option<&SparseMatrix> {
        self.action[a][i][j].as_ref()
    }

    /// `w ∧ ·` on `H^j(Ω^i)` for `w = Σ_a w_a v_a`.
    pub fn wedge_with(&self, w: &[Rational], i: usize, j: usize) -> SparseMatrix {
        let (rows, cols) = (self.dims[i + 1][j], self.dims[i][j]);
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); cols];
        for (a, coef) in w.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            if let Some(m) = &self.action[a][i][j] {
                for (c, slot) in acc.iter_mut().enumerate() {
                    for (r, v) in m.column(c) {
                        *slot.entry(*r).or_insert_with(Rational::zero) += coef * v;
                    }
                }
            }
        }
        let mut out = SparseMatrix::zeros(rows, cols);
        for (c, col) in acc.into_iter().enumerate() {
            out.set_column(c, col);
        }
        out
    }

    /// Checks `M_a M_b + M_b M_a = 0` (including `M_a M_a = 0`) wherever both
    /// compositions are defined.
    pub fn check_anticommutation(&self) -> Result<()> {
        for i in 0..self.d.saturating_sub(1) {
            for j in 0..=self.d {
                self.check_anticommutation_at(i, j)?;
            }
        }
        Ok(())
    }

    fn check_anticommutation_at(&self, i: usize, j: usize) -> Result<()> {
        let zero_lo = SparseMatrix::zeros(self.dims[i + 1][j], self.dims[i][j]);
        let zero_hi = SparseMatrix::zeros(self.dims[i + 2][j], self.dims[i + 1][j]);
        for a in 0..self.q {
            for b in a..self.q {
                let lo_a = self.action[a][i][j].as_ref().unwrap_or(&zero_lo);
                let lo_b = self.action[b][i][j].as_ref().unwrap_or(&zero_lo);
                let hi_a = self.action[a][i + 1][j].as_ref().unwrap_or(&zero_hi);
                let hi_b = self.action[b][i + 1][j].as_ref().unwrap_or(&zero_hi);
                let ab = hi_a.mul(lo_b)?;
                let ba = hi_b.mul(lo_a)?;
                let sum = ab.to_dense().into_iter().zip(ba.to_dense()).all(|(x, y)| {
                    x.iter().zip(&y).all(|(u, v)| (u + v).is_zero())
                });
                if !sum {
                    return Err(Error::Anticommutation { a, b, i, j });
                }
            }
        }
        Ok(())
    }
}

/// `W ⊆ V`, given by `k` linearly independent coordinate vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct SubspaceW {
    basis: Vec<Vec<Rational>>,
}

impl SubspaceW {
    pub fn new(basis: Vec<Vec<Rational>>) -> Result<Self> {
        let q = basis.first().map_or(0, Vec::len);
        if basis.is_empty() || basis.iter().any(|v| v.len() != q) {
            return Err(Error::Domain(
                "W needs at least one vector, all of the same length".into(),
            ));
        }
        if rank_of(&basis) != basis.len() {
            return Err(Error::Domain("basis of W is linearly dependent".into()));
        }
        Ok(SubspaceW { basis })
    }

    /// The whole space `V` with its standard basis.
    pub fn full(q: usize) -> Self {
        let basis = (0..q)
            .map(|t| {
                (0..q)
                    .map(|a| if a == t { Rational::from_integer(1.into()) } else { Rational::zero() })
                    .collect()
            })
            .collect();
        SubspaceW { basis }
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis[0].len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// The basis `W·g`: new vector `s` is `Σ_t g[t][s] w_t`.
    pub fn transformed(&self, g: &[Vec<Rational>]) -> Result<Self> {
        let k = self.k();
        if g.len() != k || g.iter().any(|r| r.len() != k) {
            return Err(Error::Domain(alloc::format!("g must be {k}x{k}")));
        }
        if inverse(g).is_none() {
            return Err(Error::Domain("g is singular".into()));
        }
        // Columns of W as a q × k matrix, times g.
        let w_cols: Vec<Vec<Rational>> = (0..self.ambient())
            .map(|a| (0..k).map(|t| self.basis[t][a].clone()).collect())
            .collect();
        let prod = dense_mul(&w_cols, g);
        let basis = (0..k)
            .map(|s| prod.iter().map(|row| row[s].clone()).collect())
            .collect();
        SubspaceW::new(basis)
    }
}

/// A bounded complex `0 → T_0 → T_1 → … → T_n` of rational matrices with
/// `φ_{i+1} φ_i = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexOfMatrices {
    term_dims: Vec<usize>,
    maps: Vec<SparseMatrix>,
    pub r: usize,
    pub j: usize,
}

impl ComplexOfMatrices {
    /// Builds a complex from explicit maps, checking shapes and
    /// composition-zero.
    pub fn from_maps(term_dims: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self> {
        if term_dims.is_empty() || maps.len() + 1 != term_dims.len() {
            return Err(Error::SizeMismatch("need one more term than maps".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols() != term_dims[i] || m.rows() != term_dims[i + 1] {
                return Err(Error::SizeMismatch(alloc::format!("map {i} has the wrong shape")));
            }
        }
        let c = ComplexOfMatrices {
            term_dims,
            maps,
            r: 0,
            j: 0,
        };
        if let Some(i) = c.first_nonzero_composition()? {
            return Err(Error::Computation(alloc::format!(
                "maps {i} and {} do not compose to zero",
                i + 1
            )));
        }
        Ok(c)
    }

    pub fn term_dims(&self) -> &[usize] {
        &self.term_dims
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    /// Index of the last term.
    pub fn n(&self) -> usize {
        self.term_dims.len() - 1
    }

    /// Whether only the first few maps were built.
    pub fn is_truncated(&self) -> bool {
        self.maps.len() < self.n()
    }

    /// Number of leading steps whose homology is determined by the maps.
    pub fn known_steps(&self) -> usize {
        if self.is_truncated() {
            self.maps.len()
        } else {
            self.n() + 1
        }
    }

    fn first_nonzero_composition(&self) -> Result<Option<usize>> {
        for i in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[i + 1].mul(&self.maps[i])?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Whether every consecutive composition vanishes.
    pub fn composition_zero(&self) -> bool {
        matches!(self.first_nonzero_composition(), Ok(None))
    }
}

/// `C^j_{r,W}`: terms `Sym^{r−i}W ⊗ H^j(Ω^i)` for `i = 0..min(r, d)`.
///
/// `Sym^m W` has the monomial basis of multisets over the given basis of
/// `W` in lexicographic order; the basis vector `(monomial, b)` has index
/// `monomial · h^{i,j} + b`. The map sends `w_{t_1}⋯w_{t_m} ⊗ α` to
/// `Σ_t mult_t · (monomial without one t) ⊗ (w_t ∧ α)`, summing over
/// distinct `t`.
pub fn build_complex(
    datum: &HodgeDatum,
    w: &SubspaceW,
    r: usize,
    j: usize,
) -> Result<ComplexOfMatrices> {
    build_complex_through(datum, w, r, j, usize::MAX)
}

/// As [`build_complex`], building only `φ_0..φ_{maps−1}`. The result knows
/// its homology at steps `0..maps` only.
pub fn build_complex_through(
    datum: &HodgeDatum,
    w: &SubspaceW,
    r: usize,
    j: usize,
    maps: usize,
) -> Result<ComplexOfMatrices> {
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    if j > datum.d() {
        return Err(Error::Domain(alloc::format!("j = {j} exceeds d = {}", datum.d())));
    }
    if w.ambient() != datum.q() {
        return Err(Error::Domain(alloc::format!(
            "W lives in a space of dimension {}, the datum has q = {}",
            w.ambient(),
            datum.q()
        )));
    }
    let n = r.min(datum.d());
    let k = w.k();
    let monos: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| multisets(k, r - i)).collect();
    let term_dims: Vec<usize> = (0..=n).map(|i| monos[i].len() * datum.h(i, j)).collect();

    let built = maps.min(n);
    let mut maps = Vec::with_capacity(built);
    for i in 0..built {
        let (h_src, h_dst) = (datum.h(i, j), datum.h(i + 1, j));
        let wedges: Vec<SparseMatrix> = w.basis().iter().map(|v| datum.wedge_with(v, i, j)).collect();
        let target_index: BTreeMap<&[usize], usize> = monos[i + 1]
            .iter()
            .enumerate()
            .map(|(idx, m)| (m.as_slice(), idx))
            .collect();
        let mut phi = SparseMatrix::zeros(term_dims[i + 1], term_dims[i]);
        for (mi, mono) in monos[i].iter().enumerate() {
            // Distinct members with multiplicities.
            let mut members: Vec<(usize, usize)> = Vec::new();
            for &t in mono {
                match members.last_mut() {
                    Some((last, mult)) if *last == t => *mult += 1,
                    _ => members.push((t, 1)),
                }
            }
            let reduced: Vec<(usize, usize, Rational)> = members
                .iter()
                .map(|&(t, mult)| {
                    let mut m = mono.clone();
                    let pos = m.iter().position(|&x| x == t).expect("member of monomial");
                    m.remove(pos);
                    (t, target_index[m.as_slice()], Rational::from_integer(mult.into()))
                })
                .collect();
            for b in 0..h_src {
                let mut col: BTreeMap<usize, Rational> = BTreeMap::new();
                for (t, target, mult) in &reduced {
                    for (row, v) in wedges[*t].column(b) {
                        *col.entry(target * h_dst + row).or_insert_with(Rational::zero) += mult * v;
                    }
                }
                phi.set_column(mi * h_src + b, col);
            }
        }
        maps.push(phi);
    }

    let c = ComplexOfMatrices {
        term_dims,
        maps,
        r,
        j,
    };
    if let Some(i) = c.first_nonzero_composition()? {
        // Locate the offending pair of basis vectors in the datum.
        datum.check_anticommutation_at(i, j)?;
        return Err(Error::Computation(alloc::format!(
            "maps {i} and {} of C^{j}_{{{r},W}} do not compose to zero",
            i + 1
        )));
    }
    Ok(c)
}

/// Ranks of `φ_0..φ_{count−1}`. Modular lower bounds are certified where
/// possible by `rank φ_{i−1} + rank φ_i = dim T_i` (the most a complex
/// allows); anything left uncertified is recomputed exactly.
fn certified_ranks(c: &ComplexOfMatrices, count: usize) -> Vec<usize> {
    let bounds: Vec<_> = c.maps[..count].iter().map(|m| m.rank_lower_bound()).collect();
    let mut exact: Vec<Option<usize>> = bounds.iter().map(|b| b.exact.then_some(b.lower)).collect();
    for i in 1..count {
        if bounds[i - 1].lower + bounds[i].lower == c.term_dims[i] {
            exact[i - 1] = Some(bounds[i - 1].lower);
            exact[i] = Some(bounds[i].lower);
        }
    }
    exact
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.unwrap_or_else(|| c.maps[i].rank()))
        .collect()
}

/// Homology at steps `0..steps` (capped at the known steps), computing only
/// the ranks those steps need. Step `n` is the cokernel of the last map.
pub fn homology_through(c: &ComplexOfMatrices, steps: usize) -> Vec<usize> {
    let steps = steps.min(c.known_steps());
    let count = steps.min(c.maps.len());
    let ranks = certified_ranks(c, count);
    (0..steps)
        .map(|s| {
            let out = if s < c.maps.len() { ranks[s] } else { 0 };
            let inc = if s > 0 { ranks[s - 1] } else { 0 };
            c.term_dims[s] - out - inc
        })
        .collect()
}

/// `dim ker φ_i − rank φ_{i−1}` at every known step, ending with the
/// cokernel for a complete complex.
pub fn homology_dims(c: &ComplexOfMatrices) -> Vec<usize> {
    homology_through(c, c.known_steps())
}

/// Number of leading steps with zero homology.
pub fn exactness_prefix(c: &ComplexOfMatrices) -> usize {
    prefix_of(&homology_dims(c))
}

pub fn prefix_of(homology: &[usize]) -> usize {
    homology.iter().take_while(|&&h| h == 0).count()
}

/// `Σ (−1)^i dim T_i = Σ (−1)^i dim H_i`.
pub fn euler_identity_holds(c: &ComplexOfMatrices, homology: &[usize]) -> bool {
    let alt = |xs: &[usize]| -> i64 {
        xs.iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    };
    homology.len() == c.term_dims.len() && alt(&c.term_dims) == alt(homology)
}

/// `'E_2^{i,j}` for `C^j_{r,W}`, `j = 0..d`, and the antidiagonal sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct E2Table {
    pub r: usize,
    /// `entries[i][j]`, `i = 0..min(r, d)`, `j = 0..d`.
    pub entries: Vec<Vec<usize>>,
    /// `hyper[m] = Σ_{i+j=m} entries[i][j]`.
    pub hyper: Vec<usize>,
}

impl E2Table {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn from_columns(r: usize, columns: &[Vec<usize>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let entries: Vec<Vec<usize>> = (0..rows)
            .map(|i| columns.iter().map(|col| col[i]).collect())
            .collect();
        let span = rows + columns.len();
        let mut hyper = vec![0; span.saturating_sub(1)];
        for (i, row) in entries.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                hyper[i + j] += e;
            }
        }
        E2Table { r, entries, hyper }
    }
}

pub fn e2_table(datum: &HodgeDatum, w: &SubspaceW, r: usize) -> Result<E2Table> {
    let columns = (0..=datum.d())
        .map(|j| {
            let c = build_complex(datum, w, r, j)?;
            let h = homology_dims(&c);
            if !euler_identity_holds(&c, &h) {
                return Err(Error::Computation(alloc::format!("Euler identity fails for j = {j}")));
            }
            Ok(h)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(E2Table::from_columns(r, &columns))
}

/// Whether the homology of `C^j_{r,W}` is unchanged by the basis change
/// `W ↦ W·g`.
pub fn basis_change_invariance_check(
    datum: &HodgeDatum,
    w: &SubspaceW,
    g: &[Vec<Rational>],
    r: usize,
    j: usize,
) -> Result<bool> {
    let moved = w.transformed(g)?;
    let before = homology_dims(&build_complex(datum, w, r, j)?);
    let after = homology_dims(&build_complex(datum, &moved, r, j)?);
    Ok(before == after)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn line_datum() -> HodgeDatum {
        // d = 1, q = 1: an elliptic curve.
        let mut d = HodgeDatum::new(1, 1, vec![vec![1, 1], vec![1, 1]]).unwrap();
        for j in 0..=1 {
            d.set_action(0, 0, j, SparseMatrix::identity(1)).unwrap();
        }
        d
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(HodgeDatum::new(1, 2, vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(HodgeDatum::new(1, 1, vec![vec![0, 1], vec![1, 1]]).is_err());
        let mut d = line_datum();
        assert!(d.set_action(0, 0, 0, SparseMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn elliptic_curve_complex() {
        let d = line_datum();
        let w = SubspaceW::full(1);
        let c = build_complex(&d, &w, 3, 0).unwrap();
        assert_eq!(c.term_dims(), &[1, 1]);
        assert_eq!(homology_dims(&c), vec![0, 0]);
        assert_eq!(exactness_prefix(&c), 2);
    }

    #[test]
    fn zero_complex() {
        let c = ComplexOfMatrices::from_maps(
            vec![0, 0, 0],
            vec![SparseMatrix::zeros(0, 0), SparseMatrix::zeros(0, 0)],
        )
        .unwrap();
        assert_eq!(homology_dims(&c), vec![0, 0, 0]);
        assert!(euler_identity_holds(&c, &[0, 0, 0]));
    }

    #[test]
    fn from_maps_rejects_nonzero_composition() {
        let one = SparseMatrix::identity(1);
        assert!(ComplexOfMatrices::from_maps(vec![1, 1, 1], vec![one.clone(), one]).is_err());
    }

    #[test]
    fn subspace_validation() {
        assert!(SubspaceW::new(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_err());
        let w = SubspaceW::new(vec![vec![rat(1), rat(0)]]).unwrap();
        assert!(w.transformed(&[vec![rat(0)]]).is_err());
        assert_eq!(w.transformed(&[vec![rat(2)]]).unwrap().basis()[0][0], rat(2));
    }
}
