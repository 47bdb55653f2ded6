//! Chern classes of the Grassmannian BGG sheaves `F` and `G`.
//!
//! `c(F) = c(Sym²S) · c(Q)^q` lives on a concrete `Gr(k, q)`. For `G` the
//! exponents `q` and `h = h^{2,0}` are kept symbolic and the computation runs
//! in the stable ring, so the resulting `g_λ` are polynomials in `h`, `q`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::poly::CoefPoly;
use crate::schur::{GrassmannianContext, SchubertExpr};
use crate::series::{chern_s, GradedSeries};
use crate::symchern::{binomial, sym_power_chern, SymChernTable};
use crate::{rat, Rational};

/// `c(Q)^n` on a concrete Grassmannian, by repeated Pieri steps.
pub fn chern_q_power(ctx: GrassmannianContext, n: usize) -> Result<SchubertExpr<Rational>> {
    let w = ctx.box_width().ok_or(Error::NotConcrete)?;
    let dim = ctx.dim();
    let mut acc = SchubertExpr::one(ctx);
    for _ in 0..n {
        let mut next = acc.clone();
        for m in 1..=w {
            next.add_scaled(&acc.times_special(m, dim), &Rational::one())?;
        }
        acc = next;
    }
    Ok(acc)
}

/// `c(S)^n` on any context, by repeated dual Pieri steps.
pub fn chern_s_power(
    ctx: GrassmannianContext,
    n: usize,
    max_degree: Option<usize>,
) -> Result<SchubertExpr<Rational>> {
    times_chern_s_power(SchubertExpr::one(ctx), n, max_degree)
}

/// `base · c(S)^n`, one dual Pieri step per factor.
fn times_chern_s_power(
    base: SchubertExpr<Rational>,
    n: usize,
    max_degree: Option<usize>,
) -> Result<SchubertExpr<Rational>> {
    let k = base.context().k();
    let mut acc = base;
    for _ in 0..n {
        let mut next = acc.clone();
        for i in 1..=k {
            let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
            next.add_scaled(&acc.times_column(i, max_degree), &sign)?;
        }
        acc = next;
    }
    Ok(acc)
}

/// `c(F) = c(Sym²S) · c(Q)^q` on `Gr(k, q)`, truncated at `k(q − k)`.
pub fn chern_f(k: usize, q: usize) -> Result<GradedSeries<Rational>> {
    check_kq(k, q)?;
    chern_f_with(k, q, &sym_power_chern(k, 2, k * (q - k))?)
}

fn check_kq(k: usize, q: usize) -> Result<()> {
    if k == 0 || k >= q {
        return Err(Error::Domain(alloc::format!("c(F) needs 1 <= k < q, got k={k}, q={q}")));
    }
    Ok(())
}

fn check_table(k: usize, dim: usize, sym2: &SymChernTable) -> Result<()> {
    if sym2.rank() != k || sym2.power() != 2 || sym2.max_degree() < dim {
        return Err(Error::Domain(alloc::format!(
            "need a Sym^2 table of rank {k} up to degree {dim}"
        )));
    }
    Ok(())
}

/// As [`chern_f`], with a precomputed `c(Sym²)` table of rank `k` reaching
/// degree `k(q − k)`.
pub fn chern_f_with(k: usize, q: usize, sym2: &SymChernTable) -> Result<GradedSeries<Rational>> {
    check_kq(k, q)?;
    let ctx = GrassmannianContext::new(k, q)?;
    let dim = k * (q - k);
    check_table(k, dim, sym2)?;
    let cq = chern_q_power(ctx, q)?;
    let prod = sym2.apply(&cq, Some(dim))?;
    GradedSeries::from_expr(&prod, Some(dim))
}

/// Checks `c(F) · c(S)^q = c(Sym²S)`, which holds because `c(S)c(Q) = 1`.
/// Uses the dual Pieri rule for `c(S)^q` and a fresh table substitution for
/// the right-hand side.
pub fn chern_f_consistent(k: usize, q: usize, cf: &GradedSeries<Rational>) -> Result<bool> {
    chern_f_consistent_with(k, q, cf, &sym_power_chern(k, 2, cf.max_degree())?)
}

pub fn chern_f_consistent_with(
    k: usize,
    q: usize,
    cf: &GradedSeries<Rational>,
    sym2: &SymChernTable,
) -> Result<bool> {
    let ctx = GrassmannianContext::new(k, q)?;
    let dim = cf.max_degree();
    check_table(k, dim, sym2)?;
    if cf.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let lhs = times_chern_s_power(cf.total(), q, Some(dim))?;
    let rhs = sym2.substitute(ctx, Some(dim))?.total();
    Ok(lhs == rhs)
}

/// The partition `μ = (q−k−1, q−k−2, …, q−2k)` with non-positive parts
/// dropped.
pub fn conjecture_mu(k: usize, q: usize) -> Partition {
    let parts = (1..=k).filter_map(|i| (q - k).checked_sub(i)).collect();
    Partition::new(parts).expect("strictly decreasing")
}

/// `binom(q−k, 2)` for `q ≤ 2k`, `k(2q−3k−1)/2` for `q ≥ 2k`; equals `|μ|`.
pub fn rank_lower_bound(k: usize, q: usize) -> usize {
    if q <= 2 * k {
        binomial(q - k, 2)
    } else {
        k * (2 * q - 3 * k - 1) / 2
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        }
    }

    /// The worse of two statuses.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Warn, _) | (_, Warn) => Warn,
            _ => Pass,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ConjectureReport {
    pub k: usize,
    pub q: usize,
    pub mu: Partition,
    pub above_mu_all_zero: bool,
    pub mu_coefficient: Rational,
    /// Every `λ > μ` in the box with a non-zero coefficient.
    pub offending: Vec<(Partition, Rational)>,
    pub codim_mu: usize,
    pub rank_lower_bound: usize,
    /// `q = k + 1`, where `μ = ∅`.
    pub boundary: bool,
    /// Outcome of the `c(F)·c(S)^q = c(Sym²S)` cross-check.
    pub cross_check: bool,
    pub status: Status,
}

pub fn verify_conjecture(k: usize, q: usize) -> Result<ConjectureReport> {
    check_kq(k, q)?;
    verify_conjecture_with(k, q, &sym_power_chern(k, 2, k * (q - k))?)
}

/// As [`verify_conjecture`], sharing a `c(Sym²)` table across calls.
pub fn verify_conjecture_with(k: usize, q: usize, sym2: &SymChernTable) -> Result<ConjectureReport> {
    let cf = chern_f_with(k, q, sym2)?;
    let cross_check = chern_f_consistent_with(k, q, &cf, sym2)?;
    Ok(report_from(k, q, &cf, cross_check))
}

/// Builds the report for an already computed `c(F)`.
pub fn report_from(k: usize, q: usize, cf: &GradedSeries<Rational>, cross_check: bool) -> ConjectureReport {
    let mu = conjecture_mu(k, q);
    let mut offending = Vec::new();
    for component in cf.components() {
        for (lambda, c) in component.terms() {
            if lambda.is_bigger_than(&mu) {
                offending.push((lambda.clone(), c.clone()));
            }
        }
    }
    let mu_coefficient = cf.coeff(&mu);
    let above_mu_all_zero = offending.is_empty();
    let boundary = q == k + 1;
    let holds = above_mu_all_zero && !mu_coefficient.is_zero();
    let status = if !cross_check {
        Status::Fail
    } else if holds {
        Status::Pass
    } else if boundary {
        Status::Warn
    } else {
        Status::Fail
    };
    ConjectureReport {
        k,
        q,
        codim_mu: mu.size(),
        mu,
        above_mu_all_zero,
        mu_coefficient,
        offending,
        rank_lower_bound: rank_lower_bound(k, q),
        boundary,
        cross_check,
        status,
    }
}

/// The `g_λ` of `c(G) = Σ g_λ σ_λ` for one concrete `k`.
#[derive(Clone, PartialEq, Debug)]
pub struct GCoeffs {
    pub k: usize,
    pub max_degree: usize,
    /// Smallest `q` for which the stable computation agrees with `Gr(k, q)`
    /// in every degree computed: `q − k ≥ max_degree`.
    pub valid_from_q: usize,
    /// Every partition of size `≤ max_degree` and length `≤ k`, zero or not.
    pub coeffs: BTreeMap<Partition, CoefPoly>,
}

impl GCoeffs {
    pub fn get(&self, lambda: &Partition) -> CoefPoly {
        self.coeffs.get(lambda).cloned().unwrap_or_else(CoefPoly::zero)
    }
}

/// The three stable factors `c(Sym²S)`, `c(S)`, `c(Sym³S)` of `c(G)`.
pub fn g_factors(
    k: usize,
    max_degree: usize,
) -> Result<(GradedSeries<Rational>, GradedSeries<Rational>, GradedSeries<Rational>)> {
    let ctx = GrassmannianContext::stable(k)?;
    let d = Some(max_degree);
    let sym2 = sym_power_chern(k, 2, max_degree)?.substitute(ctx, d)?;
    let s = chern_s(ctx, d)?;
    let sym3 = sym_power_chern(k, 3, max_degree)?.substitute(ctx, d)?;
    Ok((sym2, s, sym3))
}

/// `exp(q log c(Sym²S)) · exp(−h log c(S)) · c(Sym³S)^{-1}` in the stable
/// ring of rank `k`.
pub fn chern_g_coeffs(k: usize, max_degree: usize) -> Result<GCoeffs> {
    if k == 0 {
        return Err(Error::Domain("c(G) needs k >= 1".into()));
    }
    let (sym2, s, sym3) = g_factors(k, max_degree)?;
    let a = sym2.pow_symbolic(&CoefPoly::q())?;
    let b = s.pow_symbolic(&-CoefPoly::h())?;
    let c = sym3.invert()?.lift();
    let g = a.mul(&b)?.mul(&c)?;
    let mut coeffs = BTreeMap::new();
    for d in 0..=max_degree {
        for lambda in partitions_of(d, k, None) {
            let v = g.coeff(&lambda);
            coeffs.insert(lambda, v);
        }
    }
    Ok(GCoeffs {
        k,
        max_degree,
        valid_from_q: k + max_degree,
        coeffs,
    })
}

fn binom_poly_q2() -> CoefPoly {
    // binom(q, 2) = (q² − q)/2
    (&CoefPoly::q().pow(2) - &CoefPoly::q()).scale(&Rational::new(1.into(), 2.into()))
}

fn int(n: i64) -> CoefPoly {
    CoefPoly::int(n)
}

fn frac(n: i64, d: i64) -> CoefPoly {
    CoefPoly::frac(n, d)
}

fn c1_shift(k: usize) -> CoefPoly {
    // q(k+1) − binom(k+2, 2)
    &CoefPoly::q().scale(&rat(k as i64 + 1)) - &int(binomial(k + 2, 2) as i64)
}

/// `h − q(k+1) + binom(k+2,2)`.
pub fn closed_form_g1(k: usize) -> CoefPoly {
    &CoefPoly::h() - &c1_shift(k)
}

/// `½h² − (q(k+1) − binom(k+2,2) − ½)h + binom(q,2)(k+1)² − ½q(k+2)(k²+k+2)
/// + ⅛(k+3)(k+2)(k²+k+4)`.
pub fn closed_form_g2(k: usize) -> CoefPoly {
    let k = k as i64;
    let h = CoefPoly::h();
    let lead = (&h * &h).scale(&Rational::new(1.into(), 2.into()));
    let lin = &(&c1_shift(k as usize) - &frac(1, 2)) * &h;
    let c0 = &(&binom_poly_q2() * &int((k + 1) * (k + 1)))
        - &CoefPoly::q().scale(&Rational::new(((k + 2) * (k * k + k + 2)).into(), 2.into()));
    let c0 = &c0 + &frac((k + 3) * (k + 2) * (k * k + k + 4), 8);
    &(&lead - &lin) + &c0
}

/// `½h² − (q(k+1) − binom(k+2,2) + ½)h + binom(q,2)(k+1)² − qk·binom(k+2,2)
/// + 3·binom(k+3,4)`.
pub fn closed_form_g11(k: usize) -> CoefPoly {
    let b = binomial(k + 2, 2) as i64;
    let k4 = binomial(k + 3, 4) as i64;
    let k = k as i64;
    let h = CoefPoly::h();
    let lead = (&h * &h).scale(&Rational::new(1.into(), 2.into()));
    let lin = &(&c1_shift(k as usize) + &frac(1, 2)) * &h;
    let c0 = &(&binom_poly_q2() * &int((k + 1) * (k + 1))) - &CoefPoly::q().scale(&rat(k * b));
    let c0 = &c0 + &int(3 * k4);
    &(&lead - &lin) + &c0
}

/// Roots `center ± ½√radicand` of a monic-up-to-½ quadratic in `h`, with
/// `center` and `radicand` polynomials in `q`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadraticRoots {
    pub center: CoefPoly,
    pub radicand: CoefPoly,
}

/// Roots at concrete `(k, q)`.
#[derive(Clone, PartialEq, Debug)]
pub struct RootValues {
    pub center: Rational,
    pub radicand: Rational,
}

impl RootValues {
    pub fn has_real_roots(&self) -> bool {
        !self.radicand.is_negative()
    }

    /// The two roots when the radicand is a perfect square.
    pub fn rational_roots(&self) -> Option<(Rational, Rational)> {
        let half_root = rational_sqrt(&self.radicand)? / rat(2);
        Some((&self.center + &half_root, &self.center - &half_root))
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl QuadraticRoots {
    pub fn at(&self, q: usize) -> RootValues {
        let q = rat(q as i64);
        let zero = Rational::zero();
        RootValues {
            center: self.center.eval(&zero, &q),
            radicand: self.radicand.eval(&zero, &q),
        }
    }

    /// `½((h − center)² − radicand/4)`, which must equal the quadratic whose
    /// roots these are.
    pub fn quadratic(&self) -> CoefPoly {
        let shifted = &CoefPoly::h() - &self.center;
        let inner = &(&shifted * &shifted) - &self.radicand.scale(&Rational::new(1.into(), 4.into()));
        inner.scale(&Rational::new(1.into(), 2.into()))
    }
}

/// `α_± = (q(k+1) − binom(k+2,2) − ½) ± ½√(8(q−k) − 15)`.
pub fn g2_roots(k: usize) -> QuadraticRoots {
    QuadraticRoots {
        center: &c1_shift(k) - &frac(1, 2),
        radicand: &CoefPoly::q().scale(&rat(8)) - &int(8 * k as i64 + 15),
    }
}

/// `β_± = (q(k+1) − binom(k+2,2) + ½) ± ½`.
pub fn g11_roots(k: usize) -> QuadraticRoots {
    QuadraticRoots {
        center: &c1_shift(k) + &frac(1, 2),
        radicand: int(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn mu_shapes() {
        assert_eq!(conjecture_mu(2, 6), p(&[3, 2]));
        assert_eq!(conjecture_mu(3, 12), p(&[8, 7, 6]));
        assert_eq!(conjecture_mu(2, 3), Partition::empty());
        assert_eq!(conjecture_mu(3, 5), p(&[1]));
        assert_eq!(conjecture_mu(2, 5), p(&[2, 1]));
    }

    #[test]
    fn rank_bound_is_codim_mu() {
        for k in 1..=5 {
            for q in k + 1..=14 {
                assert_eq!(rank_lower_bound(k, q), conjecture_mu(k, q).size(), "k={k} q={q}");
            }
        }
    }

    #[test]
    fn chern_f_low_degrees() {
        let cf = chern_f(2, 6).unwrap();
        assert_eq!(cf.constant_term(), rat(1));
        assert_eq!(cf.coeff(&p(&[1])), rat(6 - 3));
        let r = verify_conjecture(2, 6).unwrap();
        assert!(r.above_mu_all_zero && !r.mu_coefficient.is_zero());
        assert_eq!(r.status, Status::Pass);
        assert!(r.cross_check);
    }

    #[test]
    fn g1_matches_closed_form() {
        for k in 1..=3 {
            let g = chern_g_coeffs(k, 1).unwrap();
            assert_eq!(g.get(&Partition::empty()), CoefPoly::one());
            assert_eq!(g.get(&p(&[1])), closed_form_g1(k));
        }
    }

    #[test]
    fn beta_roots_are_consecutive() {
        for k in 1..=6 {
            let b = g11_roots(k);
            assert_eq!(b.quadratic(), closed_form_g11(k));
            assert_eq!(g2_roots(k).quadratic(), closed_form_g2(k));
            let (hi, lo) = b.at(k + 3).rational_roots().unwrap();
            assert_eq!(hi - lo, rat(1));
        }
        assert!(!g2_roots(4).at(5).has_real_roots());
    }
}
