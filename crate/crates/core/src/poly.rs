//! Sparse multivariate polynomials with exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Polynomial in a fixed number of variables, stored as exponent vector →
/// non-zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector has wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_in(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Total degree of the highest term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Product with every term of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Poly, max_degree: Option<u32>) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(m) = max_degree {
                    if da + eb.iter().sum::<u32>() > m {
                        continue;
                    }
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul_truncated(self, None);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }

    /// Substitutes a value for one variable, keeping the variable slot (its
    /// exponent becomes zero).
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e[var] {
                term *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, term);
        }
        out
    }

    /// Canonical text: terms by descending total degree, then descending
    /// lexicographic exponent vector; coefficients as `p/q`.
    pub fn format_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut ordered: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| canonical_order(a, b));
        let mut s = String::new();
        for (idx, (e, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !mag.is_one() {
                let _ = write!(s, "{mag}");
                if !is_const {
                    s.push('*');
                }
            }
            let mut first = true;
            for (name, &k) in names.iter().zip(e.iter()) {
                if k == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(name);
                if k > 1 {
                    let _ = write!(s, "^{k}");
                }
            }
        }
        s
    }
}

fn canonical_order(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Polynomial in the two formal symbols `h` (index 0) and `q` (index 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoefPoly(Poly);

impl CoefPoly {
    pub const NAMES: [&'static str; 2] = ["h", "q"];

    pub fn zero() -> Self {
        CoefPoly(Poly::zero(2))
    }

    pub fn one() -> Self {
        CoefPoly(Poly::one(2))
    }

    pub fn constant(c: Rational) -> Self {
        CoefPoly(Poly::constant(2, c))
    }

    pub fn int(n: i64) -> Self {
        CoefPoly::constant(Rational::from_integer(n.into()))
    }

    /// `n / d` as a constant.
    pub fn frac(n: i64, d: i64) -> Self {
        CoefPoly::constant(Rational::new(n.into(), d.into()))
    }

    pub fn h() -> Self {
        CoefPoly(Poly::var(2, 0))
    }

    pub fn q() -> Self {
        CoefPoly(Poly::var(2, 1))
    }

    pub fn from_poly(p: Poly) -> Self {
        assert_eq!(p.nvars(), 2, "CoefPoly needs exactly the symbols h, q");
        CoefPoly(p)
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub(crate) fn as_poly_mut(&mut self) -> &mut Poly {
        &mut self.0
    }

    /// Coefficient of `h^a q^b`.
    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.0.coeff(&[a, b])
    }

    pub fn eval(&self, h: &Rational, q: &Rational) -> Rational {
        self.0.eval(&[h.clone(), q.clone()])
    }

    pub fn eval_q(&self, q: &Rational) -> CoefPoly {
        CoefPoly(self.0.substitute(1, q))
    }

    pub fn degree_in_h(&self) -> Option<u32> {
        self.0.terms().map(|(e, _)| e[0]).max()
    }

    pub fn scale(&self, c: &Rational) -> CoefPoly {
        CoefPoly(self.0.scale(c))
    }

    pub fn pow(&self, n: u32) -> CoefPoly {
        CoefPoly(self.0.pow(n))
    }
}

impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_with(&Self::NAMES))
    }
}

impl Add for &CoefPoly {
    type Output = CoefPoly;
    fn add(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        out.0.add_in(&rhs.0);
        out
    }
}

impl Sub for &CoefPoly {
    type Output = CoefPoly;
    fn sub(self, rhs: &CoefPoly) -> CoefPoly {
        self + &(-rhs)
    }
}

impl Mul for &CoefPoly {
    type Output = CoefPoly;
    fn mul(self, rhs: &CoefPoly) -> CoefPoly {
        CoefPoly(self.0.mul_truncated(&rhs.0, None))
    }
}

impl Neg for &CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        CoefPoly(self.0.scale(&-Rational::one()))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CoefPoly {
            type Output = CoefPoly;
            fn $m(self, rhs: CoefPoly) -> CoefPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::rat;

    #[test]
    fn canonical_string() {
        let h = CoefPoly::h();
        let q = CoefPoly::q();
        let p = &(&(&h * &h).scale(&Rational::new(1.into(), 2.into())) - &(&h * &q).scale(&rat(3)))
            + &CoefPoly::int(-5);
        assert_eq!(p.to_string(), "1/2*h^2 - 3*h*q - 5");
        assert_eq!(CoefPoly::zero().to_string(), "0");
        assert_eq!((-&q).to_string(), "-q");
    }

    #[test]
    fn truncated_product_drops_high_terms() {
        let x = Poly::var(2, 0);
        let one_plus_x = {
            let mut p = Poly::one(2);
            p.add_in(&x);
            p
        };
        let sq = one_plus_x.mul_truncated(&one_plus_x, Some(1));
        assert_eq!(sq.coeff(&[1, 0]), rat(2));
        assert_eq!(sq.coeff(&[2, 0]), rat(0));
    }

    #[test]
    fn evaluation_and_substitution_agree() {
        let p = &(&CoefPoly::h() * &CoefPoly::q()) + &CoefPoly::q().pow(2);
        let at = p.eval(&rat(2), &rat(3));
        assert_eq!(at, rat(15));
        assert_eq!(p.eval_q(&rat(3)).eval(&rat(2), &rat(0)), rat(15));
    }
}
