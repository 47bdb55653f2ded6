//! Total-Chern-class series truncated at a working degree.

use alloc::vec::Vec;


use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::CoefPoly;
use crate::schur::{multiply_truncated, GrassmannianContext, SchubertExpr};
use crate::Rational;

/// `Σ_d s_d` with `s_d` homogeneous of codimension `d`, for `d ≤ D`.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedSeries<C> {
    ctx: GrassmannianContext,
    components: Vec<SchubertExpr<C>>,
}

fn resolve_degree(ctx: GrassmannianContext, max_degree: Option<usize>) -> Result<usize> {
    match (max_degree, ctx.dim()) {
        (Some(d), _) => Ok(d),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::Domain(
            "stable context needs an explicit working degree".into(),
        )),
    }
}

impl<C: Coeff> GradedSeries<C> {
    /// The zero series. `max_degree` defaults to `k(q − k)` in concrete mode
    /// and is required in stable mode.
    pub fn zero(ctx: GrassmannianContext, max_degree: Option<usize>) -> Result<Self> {
        let d = resolve_degree(ctx, max_degree)?;
        Ok(GradedSeries {
            ctx,
            components: (0..=d).map(|_| SchubertExpr::zero(ctx)).collect(),
        })
    }

    pub fn one(ctx: GrassmannianContext, max_degree: Option<usize>) -> Result<Self> {
        let mut s = Self::zero(ctx, max_degree)?;
        s.components[0] = SchubertExpr::one(ctx);
        Ok(s)
    }

    /// Splits an expression by degree, dropping everything above the working
    /// degree.
    pub fn from_expr(expr: &SchubertExpr<C>, max_degree: Option<usize>) -> Result<Self> {
        let mut s = Self::zero(expr.context(), max_degree)?;
        for (lambda, c) in expr.terms() {
            if let Some(slot) = s.components.get_mut(lambda.size()) {
                slot.add_term(lambda.clone(), c);
            }
        }
        Ok(s)
    }

    pub fn context(&self) -> GrassmannianContext {
        self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, d: usize) -> &SchubertExpr<C> {
        &self.components[d]
    }

    pub fn components(&self) -> &[SchubertExpr<C>] {
        &self.components
    }

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.components
            .get(lambda.size())
            .map_or_else(C::zero, |e| e.coeff(lambda))
    }

    pub fn constant_term(&self) -> C {
        self.components[0].coeff(&Partition::empty())
    }

    /// Whether the degree-0 part is exactly 1.
    pub fn is_unit(&self) -> bool {
        self.constant_term() == C::one()
    }

    pub fn total(&self) -> SchubertExpr<C> {
        let mut out = SchubertExpr::zero(self.ctx);
        for c in &self.components {
            out.add_scaled(c, &C::one()).expect("same context");
        }
        out
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.max_degree() != other.max_degree() {
            return Err(Error::Domain(alloc::format!(
                "working degrees differ ({} vs {})",
                self.max_degree(),
                other.max_degree()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, &C::one())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&C::one().negated()))
    }

    pub fn scale(&self, c: &C) -> Self {
        GradedSeries {
            ctx: self.ctx,
            components: self.components.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedSeries<D> {
        GradedSeries {
            ctx: self.ctx,
            components: self.components.iter().map(|e| e.map_coeffs(&f)).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let d = self.max_degree();
        let prod = multiply_truncated(&self.total(), &other.total(), Some(d))?;
        Self::from_expr(&prod, Some(d))
    }

    /// Multiplicative inverse by the degreewise recursion
    /// `t_n = −Σ_{i=1..n} s_i t_{n−i}`.
    pub fn invert(&self) -> Result<Self> {
        self.require_constant(true)?;
        let d = self.max_degree();
        let mut t = Self::one(self.ctx, Some(d))?;
        for n in 1..=d {
            let mut acc = SchubertExpr::zero(self.ctx);
            for i in 1..=n {
                if self.components[i].is_zero() || t.components[n - i].is_zero() {
                    continue;
                }
                let prod = multiply_truncated(&self.components[i], &t.components[n - i], Some(n))?;
                acc.add_scaled(&prod, &C::one())?;
            }
            t.components[n] = acc.neg();
        }
        Ok(t)
    }

    fn require_constant(&self, one: bool) -> Result<()> {
        let c0 = self.constant_term();
        let ok = if one { c0 == C::one() } else { c0.is_zero() };
        if ok {
            Ok(())
        } else {
            let expected = if one { "1" } else { "0" };
            Err(Error::BadConstantTerm(alloc::format!("{c0:?}"), expected))
        }
    }

    /// `x ↦ Σ_{n ≤ D} coeffs[n] x^n` for a series `x` with zero constant term.
    fn compose(&self, coeffs: &[Rational]) -> Result<Self> {
        let d = self.max_degree();
        let mut out = Self::zero(self.ctx, Some(d))?;
        let mut power = Self::one(self.ctx, Some(d))?;
        for (n, c) in coeffs.iter().enumerate().take(d + 1) {
            if n > 0 {
                power = power.mul(self)?;
            }
            if !c.is_zero() {
                out = out.add(&power.scale(&C::from_rational(c)))?;
            }
        }
        Ok(out)
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log_series(&self) -> Result<Self> {
        self.require_constant(true)?;
        let mut x = self.clone();
        x.components[0] = SchubertExpr::zero(self.ctx);
        let coeffs: Vec<Rational> = (0..=self.max_degree())
            .map(|n| {
                if n == 0 {
                    Rational::zero()
                } else {
                    let sign = if n % 2 == 1 { 1 } else { -1 };
                    Rational::new(sign.into(), (n as i64).into())
                }
            })
            .collect();
        x.compose(&coeffs)
    }

    /// Formal exponential of a series with constant term 0.
    pub fn exp_series(&self) -> Result<Self> {
        self.require_constant(false)?;
        let mut coeffs = Vec::with_capacity(self.max_degree() + 1);
        let mut c = Rational::one();
        for n in 0..=self.max_degree() {
            if n > 0 {
                c /= Rational::from_integer((n as i64).into());
            }
            coeffs.push(c.clone());
        }
        self.compose(&coeffs)
    }

    /// `s^n` for an integer `n`, by repeated multiplication (of the inverse
    /// when `n < 0`).
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one(self.ctx, Some(self.max_degree()))?;
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

impl GradedSeries<Rational> {
    pub fn lift(&self) -> GradedSeries<CoefPoly> {
        self.map_coeffs(|c| CoefPoly::constant(c.clone()))
    }

    /// `exp(e · log s)` for a symbolic exponent `e` in `h`, `q`.
    pub fn pow_symbolic(&self, exponent: &CoefPoly) -> Result<GradedSeries<CoefPoly>> {
        self.lift().pow_symbolic(exponent)
    }
}

impl GradedSeries<CoefPoly> {
    pub fn pow_symbolic(&self, exponent: &CoefPoly) -> Result<GradedSeries<CoefPoly>> {
        self.log_series()?.scale(exponent).exp_series()
    }

    /// Substitutes concrete values for `h` and `q` in every coefficient.
    pub fn evaluate(&self, h: &Rational, q: &Rational) -> GradedSeries<Rational> {
        self.map_coeffs(|c| c.eval(h, q))
    }
}

/// `c(S) = 1 + Σ_{i=1..k} (−1)^i σ_{1^i}`.
pub fn chern_s<C: Coeff>(
    ctx: GrassmannianContext,
    max_degree: Option<usize>,
) -> Result<GradedSeries<C>> {
    let mut s = GradedSeries::one(ctx, max_degree)?;
    let top = ctx.k().min(s.max_degree());
    for i in 1..=top {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        s.components[i].add_term(Partition::column(i), &C::from_int(sign));
    }
    Ok(s)
}

/// `c(Q) = 1 + Σ_m σ_m`, `m` up to `q − k` (up to `D` in stable mode).
pub fn chern_q<C: Coeff>(
    ctx: GrassmannianContext,
    max_degree: Option<usize>,
) -> Result<GradedSeries<C>> {
    let mut s = GradedSeries::one(ctx, max_degree)?;
    let top = ctx.box_width().unwrap_or(usize::MAX).min(s.max_degree());
    for m in 1..=top {
        s.components[m].add_term(Partition::row(m), &C::one());
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn gr(k: usize, q: usize) -> GrassmannianContext {
        GrassmannianContext::new(k, q).unwrap()
    }

    #[test]
    fn chern_s_and_q_are_inverse() {
        let ctx = gr(2, 5);
        let s: GradedSeries<Rational> = chern_s(ctx, None).unwrap();
        let q: GradedSeries<Rational> = chern_q(ctx, None).unwrap();
        assert_eq!(s.mul(&q).unwrap(), GradedSeries::one(ctx, None).unwrap());
        assert_eq!(s.invert().unwrap(), q);
        assert_eq!(s.coeff(&Partition::column(2)), rat(1));
    }

    #[test]
    fn line_bundle_case() {
        let ctx = gr(1, 3);
        let q: GradedSeries<Rational> = chern_q(ctx, None).unwrap();
        assert_eq!(q.coeff(&Partition::row(2)), rat(1));
        let s: GradedSeries<Rational> = chern_s(ctx, None).unwrap();
        assert_eq!(s.coeff(&Partition::row(1)), rat(-1));
    }

    #[test]
    fn log_exp_round_trip() {
        let ctx = gr(2, 5);
        let q: GradedSeries<Rational> = chern_q(ctx, None).unwrap();
        let back = q.log_series().unwrap().exp_series().unwrap();
        assert_eq!(back, q);
        let one = GradedSeries::<Rational>::one(ctx, None).unwrap();
        assert!(one.log_series().unwrap().total().is_zero());
    }

    #[test]
    fn preconditions_are_checked() {
        let ctx = gr(2, 4);
        let two = GradedSeries::<Rational>::one(ctx, None).unwrap().scale(&rat(2));
        assert!(matches!(two.invert(), Err(Error::BadConstantTerm(..))));
        assert!(matches!(two.log_series(), Err(Error::BadConstantTerm(..))));
        let one = GradedSeries::<Rational>::one(ctx, None).unwrap();
        assert!(matches!(one.exp_series(), Err(Error::BadConstantTerm(..))));
        let stable = GrassmannianContext::stable(2).unwrap();
        assert!(GradedSeries::<Rational>::one(stable, None).is_err());
    }

    #[test]
    fn symbolic_power_specialises() {
        let ctx = gr(2, 5);
        let cq: GradedSeries<Rational> = chern_q(ctx, None).unwrap();
        let sym = cq.pow_symbolic(&CoefPoly::q()).unwrap();
        let at5 = sym.evaluate(&rat(0), &rat(5));
        assert_eq!(at5, cq.pow_int(5).unwrap());
        let zero = cq.pow_symbolic(&CoefPoly::zero()).unwrap();
        assert_eq!(zero, GradedSeries::one(ctx, None).unwrap().lift());
    }
}
