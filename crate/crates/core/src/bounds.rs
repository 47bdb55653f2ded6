//! Closed-form Hodge-number inequalities and the identities behind them.
//!
//! Every bound reports whether its hypotheses on the numerical data hold.
//! Geometric hypotheses (a non-degenerate subspace exists, no higher
//! irrational pencils, exactness of a sheaf sequence) cannot be read off
//! from numbers and are the caller's to assert.

use num_traits::{Signed, Zero};

use crate::bgg::rank_lower_bound;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::{rat, Rational};

/// `binom(n, k)` for any integer `n` and `k ≥ 0`:
/// `n(n−1)⋯(n−k+1)/k!`, so that `binom(−1, k) = (−1)^k`.
pub fn gbinom(n: i128, k: u32) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        gbinom(n, k as u32)
    }
}

fn sign(e: i128) -> i128 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `Σ_{n=0}^{min(A,B)} (−1)^{B−n} binom(A,n) binom(A+B−n−1, B−n)`, which is
/// `1` for `B = 0` and `0` otherwise.
pub fn combin_identity(a: u32, b: u32) -> i128 {
    let (a, b) = (a as i128, b as i128);
    (0..=a.min(b))
        .map(|n| sign(b - n) * binom(a, n) * gbinom(a + b - n - 1, (b - n) as u32))
        .sum()
}

/// `Σ_{i=0}^p (−1)^{p−i} binom(r−i+k−1, k−1) h_i` for one row `h_i = h^{i,j}`.
pub fn alternating_sum(hrow: &[i64], r: usize, k: usize, p: usize) -> Result<Rational> {
    if p >= hrow.len() {
        return Err(Error::Domain(alloc::format!(
            "p = {p} but only {} Hodge numbers were given",
            hrow.len()
        )));
    }
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let mut total = Rational::zero();
    for (i, &h) in hrow.iter().enumerate().take(p + 1) {
        let sym = binom(r as i128 - i as i128 + k as i128 - 1, k as i128 - 1);
        total += rat((sign((p - i) as i128) * sym) as i64) * rat(h);
    }
    Ok(total)
}

/// Whether the alternating-sum inequality is claimed: `p ≤ min(d−k−j+1, r)`.
pub fn alternating_sum_applies(d: usize, k: usize, j: usize, r: usize, p: usize) -> bool {
    p as i64 <= (d as i64 - k as i64 - j as i64 + 1).min(r as i64)
}

/// `M_{p,j}`: the alternating sum with `r = p`.
pub fn m_value(hrow: &[i64], k: usize, p: usize) -> Result<Rational> {
    alternating_sum(hrow, p, k, p)
}

/// `Σ_{i=0}^p binom(k, p−i) M_{i,j}`, which equals `h^{p,j}` for `p ≤ k`.
pub fn corollary_chain(hrow: &[i64], k: usize, p: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for i in 0..=p {
        total += m_value(hrow, k, i)? * rat(binom(k as i128, (p - i) as i128) as i64);
    }
    Ok(total)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundValue {
    pub value: i128,
    /// Whether the numerical hypotheses of the bound hold.
    pub applicable: bool,
}

/// `h^{p,j} ≥ binom(k,p)·binom(k,j)`, claimed for `p, j ≤ k`, `p + j ≤ d−k+1`.
pub fn binom_bound(k: usize, p: usize, j: usize, d: usize) -> BoundValue {
    let (k, p, j, d) = (k as i128, p as i128, j as i128, d as i128);
    BoundValue {
        value: binom(k, p) * binom(k, j),
        applicable: p <= k && j <= k && p + j <= d - k + 1,
    }
}

/// `binom(d+1−(p+j), p)·binom(d+1−(p+j), j)`, claimed when
/// `max(p, j) ≤ d+1−(p+j)`.
pub fn subvariety_bound(d: usize, p: usize, j: usize) -> BoundValue {
    let m = d as i128 + 1 - (p + j) as i128;
    let (p, j) = (p as i128, j as i128);
    BoundValue {
        value: binom(m, p) * binom(m, j),
        applicable: p.max(j) <= m,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Thm11Bound {
    /// `binom(q,2)` if `q ≤ 2d−1`, else `2(d−1)q − binom(2d−1,2)`.
    pub piecewise: i128,
    /// `max_{0 ≤ k' < d} 2k'q − binom(2k'+1, 2)`.
    pub family_max: i128,
}

pub fn thm11_bound(d: usize, q: usize) -> Result<Thm11Bound> {
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    let (d, q) = (d as i128, q as i128);
    let piecewise = if q < 2 * d {
        binom(q, 2)
    } else {
        2 * (d - 1) * q - binom(2 * d - 1, 2)
    };
    let family_max = (0..d)
        .map(|kp| 2 * kp * q - binom(2 * kp + 1, 2))
        .max()
        .expect("d >= 1");
    Ok(Thm11Bound {
        piecewise,
        family_max,
    })
}

/// `h ≥ q(k+1) − binom(k+2, 2)` from `c_1(G) ≥ 0`.
pub fn c1_bound(q: usize, k: usize) -> i128 {
    q as i128 * (k as i128 + 1) - binom(k as i128 + 2, 2)
}

/// `h ≥ base + ½(√radicand − 1)` from `c_2(G) ≥ 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct C2Bound {
    /// `q(k+1) − binom(k+2,2)`.
    pub base: i128,
    /// `8q − 8k − 15`.
    pub radicand: i128,
    /// `k ≤ q − 2`, i.e. the radicand is non-negative.
    pub applicable: bool,
    /// Smallest integer `h` satisfying the bound, when applicable.
    pub min_integer_h: Option<i128>,
}

pub fn c2_bound(q: usize, k: usize) -> C2Bound {
    let base = c1_bound(q, k);
    let radicand = 8 * q as i128 - 8 * k as i128 - 15;
    let applicable = k + 2 <= q;
    // h − base ≥ (√R − 1)/2  ⇔  t = 2(h − base) + 1 ≥ √R, t odd.
    let min_integer_h = applicable.then(|| {
        let mut t = isqrt(radicand);
        if t * t < radicand {
            t += 1;
        }
        if t % 2 == 0 {
            t += 1;
        }
        base + (t - 1) / 2
    });
    C2Bound {
        base,
        radicand,
        applicable,
        min_integer_h,
    }
}

fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Whether an integer `h` satisfies `h ≥ base + ½(√R − 1)`, decided exactly.
pub fn satisfies_c2(h: i128, bound: &C2Bound) -> bool {
    let t = 2 * (h - bound.base) + 1;
    t >= 0 && t * t >= bound.radicand
}

/// `h ≥ (k+1)q/2 − (k+2)(k+1)/6`, from the rank of a truncated complex.
pub fn truncation_bound(q: usize, k: usize) -> Rational {
    let (q, k) = (q as i64, k as i64);
    Rational::new(((k + 1) * q).into(), 2.into()) - Rational::new(((k + 2) * (k + 1)).into(), 6.into())
}

/// `h ≥ kq − binom(k+1, 2)`, from the exactness of `C^0_{2,W}`.
pub fn exact_complex_bound(q: usize, k: usize) -> i128 {
    k as i128 * q as i128 - binom(k as i128 + 1, 2)
}

/// `2kq − (k² + binom(k+1,2))`. Conditional: it would follow only if the
/// top Chern class of `F` were non-zero.
pub fn hypothetical_top_chern_bound(q: usize, k: usize) -> i128 {
    let (q, k) = (q as i128, k as i128);
    2 * k * q - (k * k + binom(k + 1, 2))
}

/// `(rank bound for F, resulting bound rank + kq − binom(k+1,2) on h)`.
pub fn conjecture_rank_bound(q: usize, k: usize) -> Result<(i128, i128)> {
    if k == 0 || k >= q {
        return Err(Error::Domain(alloc::format!("need 1 <= k < q, got k={k}, q={q}")));
    }
    let rank = rank_lower_bound(k, q) as i128;
    Ok((rank, rank + exact_complex_bound(q, k)))
}

/// Castelnuovo–de Franchis trigger `p_g ≤ 2q − 4` (a hypothesis for a
/// fibration, not a bound).
pub fn cdf_predicate(pg: i64, q: i64) -> bool {
    pg <= 2 * q - 4
}

/// Checks, as polynomials in `q` and `k`,
/// `binom(q−k,2) + kq − binom(k+1,2) = binom(q,2)` and
/// `k(2q−3k−1)/2 + kq − binom(k+1,2) = 2kq − binom(2k+1,2)`.
pub fn rank_identities_hold() -> (bool, bool) {
    let q = Poly::var(2, 0);
    let k = Poly::var(2, 1);
    let c = |n: i64| Poly::constant(2, rat(n));
    let half = Rational::new(1.into(), 2.into());
    let add = |a: &Poly, b: &Poly| {
        let mut s = a.clone();
        s.add_in(b);
        s
    };
    let sub = |a: &Poly, b: &Poly| add(a, &b.scale(&rat(-1)));
    let mul = |a: &Poly, b: &Poly| a.mul_truncated(b, None);
    // binom(x, 2) = x(x−1)/2
    let b2 = |x: &Poly| mul(x, &sub(x, &c(1))).scale(&half);
    let kq = mul(&k, &q);
    let tail = sub(&kq, &b2(&add(&k, &c(1))));

    let first = add(&b2(&sub(&q, &k)), &tail) == b2(&q);
    let lhs = add(
        &mul(&k, &sub(&sub(&q.scale(&rat(2)), &k.scale(&rat(3))), &c(1))).scale(&half),
        &tail,
    );
    let rhs = sub(&kq.scale(&rat(2)), &b2(&add(&k.scale(&rat(2)), &c(1))));
    (first, lhs == rhs)
}

/// `½(√R − 1) > 0`, i.e. whether the `c_2` bound improves on the `c_1` one.
pub fn c2_improves_on_c1(bound: &C2Bound) -> bool {
    bound.applicable && bound.radicand > 1
}

/// Rational number helper for callers that want the sign of a bound gap.
pub fn is_non_negative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combin_small_cases() {
        assert_eq!(combin_identity(5, 0), 1);
        assert_eq!(combin_identity(3, 2), 0);
        assert_eq!(combin_identity(0, 4), 0);
        assert_eq!(combin_identity(0, 0), 1);
    }

    #[test]
    fn alternating_sums() {
        assert_eq!(alternating_sum(&[1, 3, 3, 1], 1, 1, 1).unwrap(), rat(2));
        assert_eq!(alternating_sum(&[1, 4, 6, 4, 1], 2, 2, 2).unwrap(), rat(1));
        assert_eq!(alternating_sum(&[7], 3, 2, 0).unwrap(), rat(4 * 7));
        assert!(alternating_sum(&[1], 1, 1, 1).is_err());
    }

    #[test]
    fn binomial_bounds() {
        assert_eq!(subvariety_bound(5, 1, 1).value, 16);
        assert_eq!(binom_bound(3, 0, 0, 5).value, 1);
        assert_eq!(binom_bound(3, 2, 1, 4), BoundValue { value: 9, applicable: false });
        assert!(binom_bound(3, 2, 1, 6).applicable);
    }

    #[test]
    fn h20_bound_examples() {
        assert_eq!(thm11_bound(3, 7).unwrap().piecewise, 18);
        assert_eq!(thm11_bound(3, 4).unwrap().piecewise, 6);
        assert_eq!(thm11_bound(1, 1).unwrap(), Thm11Bound { piecewise: 0, family_max: 0 });
    }

    #[test]
    fn chern_bounds() {
        assert_eq!(c1_bound(10, 1), 17);
        let b = c2_bound(10, 1);
        assert_eq!((b.base, b.radicand), (17, 57));
        // √57 ≈ 7.55, so h ≥ 17 + 3.27: the least integer is 21.
        assert_eq!(b.min_integer_h, Some(21));
        assert!(satisfies_c2(21, &b) && !satisfies_c2(20, &b));
        assert!(!c2_bound(6, 5).applicable);
        assert_eq!(truncation_bound(9, 1), rat(8));
        assert_eq!(hypothetical_top_chern_bound(10, 2), 33);
        assert_eq!(conjecture_rank_bound(12, 4).unwrap(), (22, 60));
    }

    #[test]
    fn identities() {
        assert_eq!(rank_identities_hold(), (true, true));
        assert_eq!(gbinom(-1, 3), -1);
    }

    #[test]
    fn cdf() {
        assert!(cdf_predicate(4, 4));
        assert!(!cdf_predicate(5, 4));
    }
}
