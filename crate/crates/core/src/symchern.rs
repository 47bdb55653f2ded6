//! Universal Chern classes of symmetric powers.
//!
//! For a rank-`k` bundle `E` with Chern roots `x_1..x_k`, the roots of
//! `Sym^r E` are the sums `x_{i_1} + … + x_{i_r}` over multisets
//! `i_1 ≤ … ≤ i_r`. The table expands the product of `(1 + root)` and
//! rewrites each homogeneous part in the elementary symmetric functions
//! `e_1..e_k`, so it can be specialised to any bundle of rank `k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::schur::{apply_words, GrassmannianContext, SchubertExpr};
use crate::series::GradedSeries;
use crate::Rational;

/// `c(Sym^r E)` in terms of `e_1..e_k`, up to a working degree.
#[derive(Clone, PartialEq, Debug)]
pub struct SymChernTable {
    rank: usize,
    power: usize,
    max_degree: usize,
    /// `entries[d]`: exponent vector of `e_1..e_k` → coefficient, with
    /// `Σ i·a_i = d`.
    entries: Vec<BTreeMap<Vec<u32>, Rational>>,
}

impl SymChernTable {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Degree-`d` entry; empty above the rank of `Sym^r E`.
    pub fn entry(&self, d: usize) -> &BTreeMap<Vec<u32>, Rational> {
        &self.entries[d]
    }

    pub fn entries(&self) -> &[BTreeMap<Vec<u32>, Rational>] {
        &self.entries
    }

    /// Rank of `Sym^r E`, i.e. the number of multisets of size `r`.
    pub fn bundle_rank(&self) -> usize {
        binomial(self.rank + self.power - 1, self.power)
    }

    /// Builds a table from explicit entries (for deserialisation).
    pub fn from_entries(
        rank: usize,
        power: usize,
        entries: Vec<BTreeMap<Vec<u32>, Rational>>,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Data("table needs a degree-0 entry".into()));
        }
        for (d, entry) in entries.iter().enumerate() {
            for mono in entry.keys() {
                if mono.len() != rank || weighted_degree(mono) != d {
                    return Err(Error::Data(alloc::format!(
                        "monomial {mono:?} does not have degree {d} in e_1..e_{rank}"
                    )));
                }
            }
        }
        Ok(SymChernTable {
            rank,
            power,
            max_degree: entries.len() - 1,
            entries,
        })
    }

    /// Multiplies `base` by `c(Sym^r S)` with `e_i ↦ c_i(S) = (−1)^i σ_{1^i}`,
    /// dropping classes above `max_degree`.
    pub fn apply<C: Coeff>(
        &self,
        base: &SchubertExpr<C>,
        max_degree: Option<usize>,
    ) -> Result<SchubertExpr<C>> {
        if base.context().k() != self.rank {
            return Err(Error::Domain(alloc::format!(
                "table has rank {} but the Grassmannian has k = {}",
                self.rank,
                base.context().k()
            )));
        }
        let cap = max_degree.unwrap_or(self.max_degree).min(self.max_degree);
        let mut words: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        for (d, entry) in self.entries.iter().enumerate().take(cap + 1) {
            let sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (mono, c) in entry {
                let word: Vec<usize> = mono
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &a)| core::iter::repeat_n(i + 1, a as usize))
                    .collect();
                words.insert(word, C::from_rational(&(c * &sign)));
            }
        }
        Ok(apply_words(base, &words, |e, i| e.times_column(i, max_degree)))
    }

    /// `c(Sym^r S)` as a series over `ctx`.
    pub fn substitute(
        &self,
        ctx: GrassmannianContext,
        max_degree: Option<usize>,
    ) -> Result<GradedSeries<Rational>> {
        let one = GradedSeries::<Rational>::one(ctx, max_degree)?;
        let d = one.max_degree();
        let expr = self.apply(&SchubertExpr::one(ctx), Some(d))?;
        GradedSeries::from_expr(&expr, Some(d))
    }
}

fn weighted_degree(mono: &[u32]) -> usize {
    mono.iter()
        .enumerate()
        .map(|(i, &a)| (i + 1) * a as usize)
        .sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Multisets of size `r` drawn from `0..k`, in lexicographic order.
pub fn multisets(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(k: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(k, r, i, cur, out);
            cur.pop();
        }
    }
    rec(k, r, 0, &mut cur, &mut out);
    out
}

/// `Π (1 + x_{i_1} + … + x_{i_r})` over multisets, truncated at total degree
/// `max_degree`, as a polynomial in the roots.
pub fn root_expansion(k: usize, r: usize, max_degree: usize) -> Poly {
    let mut acc = Poly::one(k);
    for m in multisets(k, r) {
        let mut factor = Poly::one(k);
        for &i in &m {
            factor.add_in(&Poly::var(k, i));
        }
        acc = acc.mul_truncated(&factor, Some(max_degree as u32));
    }
    acc
}

fn elementary(k: usize, i: usize) -> Poly {
    let mut p = Poly::zero(k);
    for subset in subsets(k, i) {
        let mut e = vec![0u32; k];
        for s in subset {
            e[s] = 1;
        }
        p.add_term(e, Rational::one());
    }
    p
}

fn subsets(k: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, i: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for s in start..k {
            cur.push(s);
            rec(k, i, s + 1, cur, out);
            cur.pop();
        }
    }
    rec(k, i, 0, &mut cur, &mut out);
    out
}

/// Builds the table for `c(Sym^r E)`, `E` of rank `k`, up to degree `D`.
pub fn sym_power_chern(k: usize, r: usize, max_degree: usize) -> Result<SymChernTable> {
    if k == 0 || r == 0 {
        return Err(Error::Domain("need rank >= 1 and power >= 1".into()));
    }
    let effective = max_degree.min(binomial(k + r - 1, r));
    let expanded = root_expansion(k, r, effective);
    check_symmetric(&expanded)?;

    let mut by_degree: Vec<Poly> = (0..=max_degree).map(|_| Poly::zero(k)).collect();
    for (e, c) in expanded.terms() {
        let d: u32 = e.iter().sum();
        by_degree[d as usize].add_term(e.to_vec(), c.clone());
    }

    let elementaries: Vec<Poly> = (0..=k).map(|i| elementary(k, i)).collect();
    let mut entries = Vec::with_capacity(max_degree + 1);
    for mut rest in by_degree {
        let mut entry = BTreeMap::new();
        // Peel off the lexicographically leading monomial x^λ, which must be a
        // partition, by subtracting c · e_{λ'}; the basis change is
        // unitriangular so this terminates.
        while let Some((lead, c)) = rest.terms().last().map(|(e, c)| (e.to_vec(), c.clone())) {
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Computation(alloc::format!(
                    "leading monomial {lead:?} is not a partition; expansion is not symmetric"
                )));
            }
            let mono: Vec<u32> = (0..k)
                .map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0))
                .collect();
            let mut prod = Poly::one(k);
            for (i, &a) in mono.iter().enumerate() {
                for _ in 0..a {
                    prod = prod.mul_truncated(&elementaries[i + 1], None);
                }
            }
            rest.add_in(&prod.scale(&-c.clone()));
            entry.insert(mono, c);
        }
        entries.push(entry);
    }
    Ok(SymChernTable {
        rank: k,
        power: r,
        max_degree,
        entries,
    })
}

fn check_symmetric(p: &Poly) -> Result<()> {
    for (e, c) in p.terms() {
        let mut sorted = e.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if p.coeff(&sorted) != *c {
            return Err(Error::Computation(alloc::format!(
                "root expansion is not symmetric at {e:?}"
            )));
        }
    }
    if p.coeff(&vec![0; p.nvars()]).is_zero() {
        return Err(Error::Computation("root expansion lost its constant term".into()));
    }
    Ok(())
}
