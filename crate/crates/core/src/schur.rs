//! The cohomology ring of `Gr(k, q)` in the Schubert basis.
//!
//! Products are computed by expanding one factor with Giambelli's
//! determinant into special classes `σ_m` and applying the Pieri rule
//! repeatedly to the other factor. In stable mode nothing is truncated by
//! the box and the ring is the ring of symmetric polynomials in `k`
//! variables (Schur basis), which is what symbolic-`q` computations need.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::partition::{box_partitions, partitions_of, Partition};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Width {
    /// Partitions are confined to the `k × width` box, `width = q − k`.
    Concrete(usize),
    /// No box truncation; only the length bound `≤ k` applies.
    Stable,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct GrassmannianContext {
    k: usize,
    width: Width,
}

impl GrassmannianContext {
    /// `Gr(k, q)`: `k`-planes in a `q`-dimensional space.
    pub fn new(k: usize, q: usize) -> Result<Self> {
        if k == 0 || k > q {
            return Err(Error::Domain(alloc::format!(
                "Gr({k},{q}) needs 1 <= k <= q"
            )));
        }
        Ok(GrassmannianContext {
            k,
            width: Width::Concrete(q - k),
        })
    }

    pub fn stable(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("stable context needs k >= 1".into()));
        }
        Ok(GrassmannianContext {
            k,
            width: Width::Stable,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> Width {
        self.width
    }

    pub fn box_width(&self) -> Option<usize> {
        match self.width {
            Width::Concrete(w) => Some(w),
            Width::Stable => None,
        }
    }

    pub fn q(&self) -> Option<usize> {
        self.box_width().map(|w| w + self.k)
    }

    pub fn is_stable(&self) -> bool {
        self.width == Width::Stable
    }

    /// Complex dimension `k(q − k)`; `None` in stable mode.
    pub fn dim(&self) -> Option<usize> {
        self.box_width().map(|w| w * self.k)
    }

    pub fn fits(&self, lambda: &Partition) -> bool {
        match self.width {
            Width::Concrete(w) => lambda.fits_box(self.k, w),
            Width::Stable => lambda.len() <= self.k,
        }
    }

    pub fn check(&self, lambda: &Partition) -> Result<()> {
        if self.fits(lambda) {
            return Ok(());
        }
        Err(Error::OutsideBox {
            partition: alloc::format!("{lambda}"),
            k: self.k,
            width: self.box_width().unwrap_or(usize::MAX),
        })
    }

    /// Every Schubert class of a concrete Grassmannian.
    pub fn box_partitions(&self) -> Result<Vec<Partition>> {
        let w = self.box_width().ok_or(Error::NotConcrete)?;
        Ok(box_partitions(self.k, w))
    }

    /// Basis classes of codimension `d`.
    pub fn partitions_of_degree(&self, d: usize) -> Vec<Partition> {
        partitions_of(d, self.k, self.box_width())
    }
}

/// Finite formal sum `Σ c_λ σ_λ` with no stored zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct SchubertExpr<C> {
    ctx: GrassmannianContext,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> SchubertExpr<C> {
    pub fn zero(ctx: GrassmannianContext) -> Self {
        SchubertExpr {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: GrassmannianContext) -> Self {
        let mut e = Self::zero(ctx);
        e.terms.insert(Partition::empty(), C::one());
        e
    }

    /// The single class `σ_λ`.
    pub fn class(ctx: GrassmannianContext, lambda: Partition) -> Result<Self> {
        Self::term(ctx, lambda, C::one())
    }

    pub fn term(ctx: GrassmannianContext, lambda: Partition, c: C) -> Result<Self> {
        ctx.check(&lambda)?;
        let mut e = Self::zero(ctx);
        e.add_term(lambda, &c);
        Ok(e)
    }

    pub fn from_terms(
        ctx: GrassmannianContext,
        terms: impl IntoIterator<Item = (Partition, C)>,
    ) -> Result<Self> {
        let mut e = Self::zero(ctx);
        for (lambda, c) in terms {
            ctx.check(&lambda)?;
            e.add_term(lambda, &c);
        }
        Ok(e)
    }

    pub fn context(&self) -> GrassmannianContext {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.terms.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c σ_λ`. Classes outside the box are dropped.
    pub(crate) fn add_term(&mut self, lambda: Partition, c: &C) {
        if c.is_zero() || !self.ctx.fits(&lambda) {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_in(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) -> Result<()> {
        self.same_context(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (lambda, v) in &other.terms {
            self.add_term(lambda.clone(), &v.times(c));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().negated())?;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().negated())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.ctx);
        for (lambda, v) in &self.terms {
            out.add_term(lambda.clone(), &v.times(c));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SchubertExpr<D> {
        let mut out = SchubertExpr::zero(self.ctx);
        for (lambda, v) in &self.terms {
            out.add_term(lambda.clone(), &f(v));
        }
        out
    }

    /// Degree-`d` part.
    pub fn homogeneous(&self, d: usize) -> Self {
        SchubertExpr {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == d)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets a stable expression in a concrete context with the same
    /// `k`, dropping every class outside the box.
    pub fn truncate_to(&self, ctx: GrassmannianContext) -> Result<Self> {
        if ctx.k() != self.ctx.k() {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(ctx);
        for (lambda, c) in &self.terms {
            out.add_term(lambda.clone(), c);
        }
        Ok(out)
    }

    /// `self · σ_m`, dropping classes of codimension above `max_degree`.
    pub fn times_special(&self, m: usize, max_degree: Option<usize>) -> Self {
        let mut out = Self::zero(self.ctx);
        for (lambda, c) in &self.terms {
            if max_degree.is_some_and(|d| lambda.size() + m > d) {
                continue;
            }
            for nu in pieri_shapes(lambda, m, &self.ctx) {
                out.add_term(nu, c);
            }
        }
        out
    }
}

impl<C: Coeff> SchubertExpr<C> {
    /// `self · σ_{1^n}` by the dual Pieri rule (vertical strips).
    pub fn times_column(&self, n: usize, max_degree: Option<usize>) -> Self {
        let mut out = Self::zero(self.ctx);
        for (lambda, c) in &self.terms {
            if max_degree.is_some_and(|d| lambda.size() + n > d) {
                continue;
            }
            for nu in vertical_strip_shapes(lambda, n, &self.ctx) {
                out.add_term(nu, c);
            }
        }
        out
    }
}

fn vertical_strip_shapes(lambda: &Partition, n: usize, ctx: &GrassmannianContext) -> Vec<Partition> {
    let k = ctx.k();
    if n > k {
        return Vec::new();
    }
    let lam = lambda.padded(k);
    let width = ctx.box_width().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut cur = lam.clone();
    vstrip(&lam, 0, n, width, &mut cur, &mut out);
    out
}

fn vstrip(
    lam: &[usize],
    row: usize,
    remaining: usize,
    width: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted(cur.clone()));
        return;
    }
    if row == lam.len() || lam.len() - row < remaining {
        return;
    }
    // Skip this row.
    vstrip(lam, row + 1, remaining, width, cur, out);
    // Add a box to it, if the result stays a partition inside the box.
    let grown = lam[row] + 1;
    if grown <= width && (row == 0 || cur[row - 1] >= grown) {
        cur[row] = grown;
        vstrip(lam, row + 1, remaining - 1, width, cur, out);
        cur[row] = lam[row];
    }
}

/// Shapes `ν ⊇ λ` with `ν/λ` a horizontal `m`-strip, of length `≤ k` and
/// inside the box in concrete mode.
fn pieri_shapes(lambda: &Partition, m: usize, ctx: &GrassmannianContext) -> Vec<Partition> {
    let k = ctx.k();
    let lam = lambda.padded(k);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    strip(&lam, 0, m, ctx.box_width(), &mut cur, &mut out);
    out
}

fn strip(
    lam: &[usize],
    row: usize,
    remaining: usize,
    width: Option<usize>,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if row == lam.len() {
        if remaining == 0 {
            out.push(Partition::from_sorted(cur.clone()));
        }
        return;
    }
    let lo = lam[row];
    let cap = if row == 0 {
        width.unwrap_or(usize::MAX)
    } else {
        lam[row - 1]
    };
    let hi = cap.min(lo + remaining);
    if hi < lo {
        return;
    }
    // Rows below can absorb at most the sum of their own caps.
    let below: usize = (row + 1..lam.len()).map(|r| lam[r - 1] - lam[r]).sum();
    for v in lo..=hi {
        let rest = remaining - (v - lo);
        if rest > below {
            continue;
        }
        cur.push(v);
        strip(lam, row + 1, rest, width, cur, out);
        cur.pop();
    }
}

/// `σ_λ · σ_m` by the Pieri rule.
pub fn pieri<C: Coeff>(
    lambda: &Partition,
    m: usize,
    ctx: GrassmannianContext,
) -> Result<SchubertExpr<C>> {
    SchubertExpr::class(ctx, lambda.clone()).map(|e| e.times_special(m, None))
}

/// Giambelli's determinant `det(σ_{λ_i + j − i})` as a polynomial in the
/// special classes. Keys are ascending lists of indices `m ≥ 1` (`σ_0 = 1`
/// is omitted); values are integer coefficients.
pub fn giambelli_monomials(lambda: &Partition) -> BTreeMap<Vec<usize>, i64> {
    let parts = lambda.parts();
    let n = parts.len();
    let mut layer: BTreeMap<u32, BTreeMap<Vec<usize>, i64>> = BTreeMap::new();
    layer.insert(0, BTreeMap::from([(Vec::new(), 1)]));
    for (row, &part) in parts.iter().enumerate() {
        let mut next: BTreeMap<u32, BTreeMap<Vec<usize>, i64>> = BTreeMap::new();
        for (mask, polys) in &layer {
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let idx = part as isize + col as isize - row as isize;
                if idx < 0 {
                    continue;
                }
                let inversions = (mask >> (col + 1)).count_ones();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                let target = next.entry(mask | (1 << col)).or_default();
                for (mono, c) in polys {
                    let mut m = mono.clone();
                    if idx > 0 {
                        let pos = m.partition_point(|&x| x <= idx as usize);
                        m.insert(pos, idx as usize);
                    }
                    *target.entry(m).or_insert(0) += sign * c;
                }
            }
        }
        layer = next;
    }
    let mut out = layer.remove(&((1u32 << n) - 1)).unwrap_or_default();
    out.retain(|_, c| *c != 0);
    out
}

/// Applies a polynomial in commuting operators to `base`: each key is a word
/// of operator indices (sorted), each value its coefficient. Words sharing a
/// prefix reuse the partial result.
pub(crate) fn apply_words<C: Coeff>(
    base: &SchubertExpr<C>,
    words: &BTreeMap<Vec<usize>, C>,
    mut step: impl FnMut(&SchubertExpr<C>, usize) -> SchubertExpr<C>,
) -> SchubertExpr<C> {
    let mut result = SchubertExpr::zero(base.ctx);
    let mut prefix: Vec<usize> = Vec::new();
    let mut stack: Vec<SchubertExpr<C>> = vec![base.clone()];
    for (word, coeff) in words {
        let common = prefix
            .iter()
            .zip(word)
            .take_while(|(a, b)| a == b)
            .count();
        prefix.truncate(common);
        stack.truncate(common + 1);
        for &letter in &word[common..] {
            let top = stack.last().expect("stack holds the base");
            let next = if top.is_zero() {
                top.clone()
            } else {
                step(top, letter)
            };
            stack.push(next);
            prefix.push(letter);
        }
        let top = stack.last().expect("stack holds the base");
        for (lambda, v) in &top.terms {
            result.add_term(lambda.clone(), &v.times(coeff));
        }
    }
    result
}

/// `σ_λ` rebuilt from its Giambelli expansion with Pieri products. Equals
/// `σ_λ` whenever `λ` fits the context.
pub fn giambelli<C: Coeff>(lambda: &Partition, ctx: GrassmannianContext) -> Result<SchubertExpr<C>> {
    if lambda.len() > ctx.k() {
        return Err(Error::OutsideBox {
            partition: alloc::format!("{lambda}"),
            k: ctx.k(),
            width: ctx.box_width().unwrap_or(usize::MAX),
        });
    }
    let words: BTreeMap<Vec<usize>, C> = giambelli_monomials(lambda)
        .into_iter()
        .map(|(w, c)| (w, C::from_int(c)))
        .collect();
    Ok(apply_words(&SchubertExpr::one(ctx), &words, |e, m| {
        e.times_special(m, None)
    }))
}

/// Product in the Schubert ring.
pub fn multiply<C: Coeff>(a: &SchubertExpr<C>, b: &SchubertExpr<C>) -> Result<SchubertExpr<C>> {
    multiply_truncated(a, b, None)
}

/// Product keeping only classes of codimension `≤ max_degree`. The second
/// factor is expanded into special classes.
pub fn multiply_truncated<C: Coeff>(
    a: &SchubertExpr<C>,
    b: &SchubertExpr<C>,
    max_degree: Option<usize>,
) -> Result<SchubertExpr<C>> {
    a.same_context(b)?;
    let mut words: BTreeMap<Vec<usize>, C> = BTreeMap::new();
    for (mu, c) in &b.terms {
        for (w, n) in giambelli_monomials(mu) {
            let entry = words.entry(w).or_insert_with(C::zero);
            entry.add_multiple(c, n);
        }
    }
    words.retain(|_, c| !c.is_zero());
    Ok(apply_words(a, &words, |e, m| e.times_special(m, max_degree)))
}

/// Poincaré-dual partition `λ̂_i = (q − k) − λ_{k+1−i}`.
pub fn complement(lambda: &Partition, ctx: GrassmannianContext) -> Result<Partition> {
    let w = ctx.box_width().ok_or(Error::NotConcrete)?;
    ctx.check(lambda)?;
    let k = ctx.k();
    let parts = (0..k).map(|i| w - lambda.get(k - 1 - i)).collect();
    Ok(Partition::from_sorted(parts))
}
