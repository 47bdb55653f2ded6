//! Concrete Hodge data: abelian varieties and a product of two genus-3
//! curves.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::complex::{HodgeDatum, SubspaceW};
use crate::error::{Error, Result};
use crate::linalg::{inverse, SparseMatrix};
use crate::symchern::binomial;
use crate::Rational;

/// `i`-element subsets of `0..q` in lexicographic order.
pub fn subsets(q: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i);
    fn rec(q: usize, i: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for s in start..q {
            cur.push(s);
            rec(q, i, s + 1, cur, out);
            cur.pop();
        }
    }
    rec(q, i, 0, &mut cur, &mut out);
    out
}

/// An abelian variety of dimension `q`: `H^j(Ω^i) = Λ^iV ⊗ Λ^jV̄` with basis
/// `e_I ⊗ ē_J` (index `idx(I)·binom(q,j) + idx(J)`, subsets in lex order),
/// and `v_a` acting by left exterior multiplication on `Λ^iV`.
pub fn abelian_model(q: usize) -> Result<HodgeDatum> {
    if q == 0 {
        return Err(Error::Domain("abelian model needs q >= 1".into()));
    }
    let dims = (0..=q)
        .map(|i| (0..=q).map(|j| binomial(q, i) * binomial(q, j)).collect())
        .collect();
    let mut datum = HodgeDatum::new(q, q, dims)?;
    let subsets_by_size: Vec<Vec<Vec<usize>>> = (0..=q).map(|i| subsets(q, i)).collect();
    let index: Vec<BTreeMap<&[usize], usize>> = subsets_by_size
        .iter()
        .map(|s| s.iter().enumerate().map(|(n, v)| (v.as_slice(), n)).collect())
        .collect();
    for a in 0..q {
        for i in 0..q {
            // Left multiplication v_a ∧ e_I on Λ^iV → Λ^{i+1}V.
            let mut left = SparseMatrix::zeros(binomial(q, i + 1), binomial(q, i));
            for (src, set) in subsets_by_size[i].iter().enumerate() {
                if set.contains(&a) {
                    continue;
                }
                let before = set.iter().filter(|&&b| b < a).count();
                let mut grown = set.clone();
                grown.insert(before, a);
                let sign = if before % 2 == 0 { Rational::one() } else { -Rational::one() };
                left.set_column(src, BTreeMap::from([(index[i + 1][grown.as_slice()], sign)]));
            }
            for j in 0..=q {
                datum.set_action(a, i, j, kron_identity_right(&left, binomial(q, j)))?;
            }
        }
    }
    Ok(datum)
}

/// `m ⊗ I_n`: index `(row, b)` ↦ `row·n + b`.
fn kron_identity_right(m: &SparseMatrix, n: usize) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(m.rows() * n, m.cols() * n);
    for c in 0..m.cols() {
        for b in 0..n {
            let col = m.column(c).iter().map(|(r, v)| (r * n + b, v.clone())).collect();
            out.set_column(c * n + b, col);
        }
    }
    out
}

/// `I_n ⊗ m`, scaled by `sign`: index `(a, row)` ↦ `a·rows(m) + row`.
fn kron_identity_left(n: usize, m: &SparseMatrix, sign: &Rational) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(n * m.rows(), n * m.cols());
    for a in 0..n {
        for c in 0..m.cols() {
            let col = m
                .column(c)
                .iter()
                .map(|(r, v)| (a * m.rows() + r, v * sign))
                .collect();
            out.set_column(a * m.cols() + c, col);
        }
    }
    out
}

/// The four cohomology groups of a genus-`g` curve, `(p, s) ↦ H^s(Ω^p)`,
/// and the wedge action of `α_t`: `1 ↦ α_t`, `α*_s ↦ pairing[t][s]·[pt]`.
struct Curve {
    genus: usize,
    pairing: Vec<Vec<Rational>>,
}

impl Curve {
    fn dim(&self, p: usize, s: usize) -> usize {
        match (p, s) {
            (0, 0) | (1, 1) => 1,
            _ => self.genus,
        }
    }

    /// `α_t ∧ ·` on `H^s(Ω^0) → H^s(Ω^1)`.
    fn wedge(&self, t: usize, s: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim(1, s), self.dim(0, s));
        if s == 0 {
            m.set_column(0, BTreeMap::from([(t, Rational::one())]));
        } else {
            for (col, v) in self.pairing[t].iter().enumerate() {
                m.set_column(col, BTreeMap::from([(0, v.clone())]));
            }
        }
        m
    }
}

/// Blocks `(i₁, j₁)` of `H^j(Ω^i)` on `C₁ × C₂`, in order, with offsets.
fn kunneth_blocks(c1: &Curve, c2: &Curve, i: usize, j: usize) -> Vec<((usize, usize), usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for i1 in 0..=1 {
        for j1 in 0..=1 {
            if i1 > i || j1 > j || i - i1 > 1 || j - j1 > 1 {
                continue;
            }
            out.push(((i1, j1), offset));
            offset += c1.dim(i1, j1) * c2.dim(i - i1, j - j1);
        }
    }
    out
}

/// Expected `'E_2` entries `(i, j, dim)` of the curve-product example at `r = 2`.
pub const CURVES_E2: [(usize, usize, usize); 3] = [(1, 0, 3), (1, 1, 18), (0, 2, 37)];

/// Expected hypercohomology dimensions `ℍ^0, ℍ^1, ℍ^2` of the example.
pub const CURVES_HYPER: [usize; 3] = [0, 3, 55];

/// `C₁ × C₂` for two genus-3 curves, with `V = ⟨p₁*α_t, p₂*β_t⟩` and
/// `W = ⟨p₁*α_t + p₂*β_t⟩`. Serre duality pairs `α_t` with `α*_s` by the
/// identity.
pub fn curves_product_model() -> Result<(HodgeDatum, SubspaceW)> {
    let id: Vec<Vec<Rational>> = (0..3)
        .map(|t| (0..3).map(|s| if s == t { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    curves_product_model_with_pairings(&id, &id)
}

/// As [`curves_product_model`], with arbitrary invertible pairings between
/// the holomorphic forms and the chosen bases of `H¹(O)` on each curve.
pub fn curves_product_model_with_pairings(
    p1: &[Vec<Rational>],
    p2: &[Vec<Rational>],
) -> Result<(HodgeDatum, SubspaceW)> {
    const G: usize = 3;
    for p in [p1, p2] {
        if p.len() != G || p.iter().any(|r| r.len() != G) || inverse(p).is_none() {
            return Err(Error::Domain("pairings must be invertible 3x3 matrices".into()));
        }
    }
    let c1 = Curve { genus: G, pairing: p1.to_vec() };
    let c2 = Curve { genus: G, pairing: p2.to_vec() };
    let dim = |i: usize, j: usize| -> usize {
        kunneth_blocks(&c1, &c2, i, j)
            .iter()
            .map(|((i1, j1), _)| c1.dim(*i1, *j1) * c2.dim(i - i1, j - j1))
            .sum()
    };
    let dims: Vec<Vec<usize>> = (0..=2).map(|i| (0..=2).map(|j| dim(i, j)).collect()).collect();
    let mut datum = HodgeDatum::new(2, 2 * G, dims)?;

    for a in 0..2 * G {
        for i in 0..2 {
            for j in 0..=2 {
                let mut m = SparseMatrix::zeros(dim(i + 1, j), dim(i, j));
                let targets = kunneth_blocks(&c1, &c2, i + 1, j);
                let find = |key: (usize, usize)| targets.iter().find(|(k, _)| *k == key).map(|(_, o)| *o);
                for ((i1, j1), src_off) in kunneth_blocks(&c1, &c2, i, j) {
                    let (i2, j2) = (i - i1, j - j1);
                    let d2 = c2.dim(i2, j2);
                    let block = if a < G {
                        if i1 != 0 {
                            continue;
                        }
                        let Some(dst) = find((1, j1)) else { continue };
                        (kron_identity_right(&c1.wedge(a, j1), d2), dst)
                    } else {
                        if i2 != 0 {
                            continue;
                        }
                        let Some(dst) = find((i1, j1)) else { continue };
                        let sign = if (i1 + j1) % 2 == 0 { Rational::one() } else { -Rational::one() };
                        (kron_identity_left(c1.dim(i1, j1), &c2.wedge(a - G, j2), &sign), dst)
                    };
                    let (blk, dst_off) = block;
                    for c in 0..blk.cols() {
                        let col = blk.column(c).iter().map(|(r, v)| (dst_off + r, v.clone())).collect();
                        m.set_column(src_off + c, col);
                    }
                }
                datum.set_action(a, i, j, m)?;
            }
        }
    }
    datum.check_anticommutation()?;

    let mut meta = BTreeMap::new();
    meta.insert(String::from("curves"), String::from("two smooth plane quartics, genus 3 each"));
    meta.insert(String::from("Z_1"), String::from("∅"));
    meta.insert(String::from("Z_2"), String::from("{P_1,…,P_16}"));
    meta.insert(String::from("H^0(X,H^1)"), String::from("C^48 (16 stalks of dimension 3)"));
    datum.metadata = meta;

    let w = SubspaceW::new(
        (0..G)
            .map(|t| {
                let mut v = vec![Rational::zero(); 2 * G];
                v[t] = Rational::one();
                v[t + G] = Rational::one();
                v
            })
            .collect(),
    )?;
    Ok((datum, w))
}

/// `max(0, d − k − j + 1)`: the number of leading steps a non-degenerate
/// `W` makes exact.
pub fn expected_exactness(d: usize, k: usize, j: usize) -> usize {
    (d + 1).saturating_sub(k + j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, e2_table, homology_dims};

    #[test]
    fn elliptic_curve() {
        let d = abelian_model(1).unwrap();
        assert_eq!(d.dims(), &[vec![1, 1], vec![1, 1]]);
        for j in 0..=1 {
            assert_eq!(d.action(0, 0, j).unwrap(), &SparseMatrix::identity(1));
        }
    }

    #[test]
    fn abelian_dims_and_signs() {
        let d = abelian_model(3).unwrap();
        assert_eq!(d.h(1, 2), 9);
        for q in 1..=5 {
            abelian_model(q).unwrap().check_anticommutation().unwrap();
        }
    }

    #[test]
    fn abelian_surface_complex() {
        let d = abelian_model(2).unwrap();
        let w = SubspaceW::new(vec![vec![Rational::one(), Rational::zero()]]).unwrap();
        let c = build_complex(&d, &w, 2, 0).unwrap();
        assert_eq!(c.term_dims(), &[1, 2, 1]);
        assert_eq!(homology_dims(&c), vec![0, 0, 0]);
    }

    #[test]
    fn curves_dims_and_example() {
        let (d, w) = curves_product_model().unwrap();
        assert_eq!(d.dims(), &[vec![1, 6, 9], vec![6, 20, 6], vec![9, 6, 1]]);
        let c = build_complex(&d, &w, 2, 0).unwrap();
        assert_eq!(c.term_dims(), &[6, 18, 9]);
        let e2 = e2_table(&d, &w, 2).unwrap();
        for (i, j, v) in CURVES_E2 {
            assert_eq!(e2.get(i, j), v, "E2[{i}][{j}]");
        }
        assert_eq!(&e2.hyper[..3], &CURVES_HYPER);
    }

    #[test]
    fn expected_exactness_values() {
        assert_eq!(expected_exactness(4, 2, 0), 3);
        assert_eq!(expected_exactness(2, 3, 0), 0);
        assert_eq!(expected_exactness(5, 1, 0), 5);
    }
}
