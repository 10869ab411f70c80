//! Monomials and pure-difference binomials in `K[x_1..x_n, y_1..y_n]`, and
//! dense integer polynomials in one variable `t` for Hilbert series.
//!
//! Variable slots: `x_i` lives in slot `i - 1` and `y_i` in slot `n + i - 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Lexicographic, `x_1 > ... > x_n > y_1 > ... > y_n`.
    Lex,
    /// Graded reverse lexicographic on the same variable sequence.
    DegRevLex,
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegRevLex => "degrevlex",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The single variable in `slot`.
    pub fn var(num_vars: usize, slot: usize) -> Self {
        let mut m = Monomial::one(num_vars);
        m.exps[slot] = 1;
        m
    }

    /// `x_i` in a ring with `n` vertex indices (1-based `i`).
    pub fn x(n: usize, i: usize) -> Self {
        Monomial::var(2 * n, i - 1)
    }

    /// `y_i` in a ring with `n` vertex indices (1-based `i`).
    pub fn y(n: usize, i: usize) -> Self {
        Monomial::var(2 * n, n + i - 1)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Support as a bitmask; only meaningful for at most 64 variables.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (k, _)| m | 1 << k)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    /// `self / divisor`; fails when `divisor` does not divide `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        if !divisor.divides(self) {
            return Err(Error::NotDivisible(divisor.to_string(), self.to_string()));
        }
        Ok(Monomial {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub(crate) fn quotient_unchecked(&self, divisor: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(self));
        Monomial {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn compare(&self, other: &Monomial, order: MonomialOrder) -> Result<Ordering> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::VariableMismatch(self.exps.len(), other.exps.len()));
        }
        Ok(self.cmp_unchecked(other, order))
    }

    pub(crate) fn cmp_unchecked(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::Lex => self.exps.cmp(&other.exps),
            MonomialOrder::DegRevLex => self.degree().cmp(&other.degree()).then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Renders with `n` vertex indices, e.g. `x1*y2` or `x1^2*y3`.
    pub fn render(&self) -> String {
        let n = self.exps.len() / 2;
        let mut parts = Vec::new();
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if k < n {
                format!("x{}", k + 1)
            } else {
                format!("y{}", k - n + 1)
            };
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `lead - trail` with `lead` strictly greater under the order the binomial
/// was built with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    lead: Monomial,
    trail: Monomial,
}

impl Binomial {
    /// Orients `a - b` (up to sign) so the larger term leads. Returns `None`
    /// for `a == b`.
    pub fn new(a: Monomial, b: Monomial, order: MonomialOrder) -> Option<Binomial> {
        match a.cmp_unchecked(&b, order) {
            Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Binomial { lead: b, trail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn trail(&self) -> &Monomial {
        &self.trail
    }

    pub fn num_vars(&self) -> usize {
        self.lead.num_vars()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lead.degree() == self.trail.degree()
    }

    pub fn degree(&self) -> u32 {
        self.lead.degree().max(self.trail.degree())
    }

    /// Re-orients under another order.
    pub fn reoriented(&self, order: MonomialOrder) -> Binomial {
        Binomial::new(self.lead.clone(), self.trail.clone(), order).expect("terms are distinct")
    }

    pub fn scaled(&self, m: &Monomial) -> Binomial {
        Binomial {
            lead: &self.lead * m,
            trail: &self.trail * m,
        }
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

// ---------------------------------------------------------------------------
// Univariate integer polynomials

/// Dense polynomial in `t` over the integers, constant term first, with no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivarPoly {
    coeffs: Vec<BigInt>,
}

impl UnivarPoly {
    pub fn zero() -> Self {
        UnivarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivarPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        UnivarPoly::from_coeffs(vec![c])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        UnivarPoly { coeffs }
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        UnivarPoly::from_big(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn from_big(coeffs: Vec<BigInt>) -> Self {
        let mut p = UnivarPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// `1 + t`.
    pub fn one_plus_t() -> Self {
        UnivarPoly::from_coeffs(vec![1, 1])
    }

    /// `1 - t`.
    pub fn one_minus_t() -> Self {
        UnivarPoly::from_coeffs(vec![1, -1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &t + c)
    }

    pub fn pow(&self, e: u32) -> UnivarPoly {
        let mut acc = UnivarPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> UnivarPoly {
        UnivarPoly::from_big(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> UnivarPoly {
        if self.is_zero() {
            return UnivarPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UnivarPoly { coeffs }
    }

    /// Exact division by `(1 - t)`, if it divides.
    pub fn div_one_minus_t(&self) -> Option<UnivarPoly> {
        if self.is_zero() {
            return Some(UnivarPoly::zero());
        }
        // p = (1 - t) q  <=>  q_k = p_k + q_{k-1}, and q has degree deg p - 1.
        let d = self.coeffs.len() - 1;
        let mut q = Vec::with_capacity(d);
        let mut prev = BigInt::zero();
        for k in 0..d {
            prev += &self.coeffs[k];
            q.push(prev.clone());
        }
        if (prev + &self.coeffs[d]).is_zero() {
            Some(UnivarPoly::from_big(q))
        } else {
            None
        }
    }

    /// Writes `self = reduced * (1 - t)^count` with `reduced(1) != 0`.
    pub fn strip_one_minus_t(&self) -> Result<(UnivarPoly, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut p = self.clone();
        let mut count = 0;
        while p.eval(1).is_zero() {
            p = p.div_one_minus_t().expect("p(1) = 0 implies (1 - t) | p");
            count += 1;
        }
        Ok((p, count))
    }

    /// Canonical text form, ascending degree with explicit signs:
    /// `1 + 4*t + 3*t^2 - 2*t^3`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&var);
            } else {
                s.push_str(&format!("{mag}*{var}"));
            }
        }
        s
    }
}

impl fmt::Display for UnivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &UnivarPoly {
    type Output = UnivarPoly;

    fn add(self, rhs: &UnivarPoly) -> UnivarPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UnivarPoly::from_big((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UnivarPoly {
    type Output = UnivarPoly;

    fn sub(self, rhs: &UnivarPoly) -> UnivarPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UnivarPoly::from_big((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UnivarPoly {
    type Output = UnivarPoly;

    fn neg(self) -> UnivarPoly {
        UnivarPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UnivarPoly {
    type Output = UnivarPoly;

    fn mul(self, rhs: &UnivarPoly) -> UnivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivarPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivarPoly::from_big(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UnivarPoly {
            type Output = UnivarPoly;
            fn $m(self, rhs: UnivarPoly) -> UnivarPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `numerator / (1 - t)^pole_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: UnivarPoly,
    pub pole_order: usize,
}

impl RationalSeries {
    pub fn new(numerator: UnivarPoly, pole_order: usize) -> Self {
        RationalSeries {
            numerator,
            pole_order,
        }
    }

    /// True when no factor `(1 - t)` can be cancelled.
    pub fn is_reduced(&self) -> bool {
        self.pole_order == 0 || !self.numerator.eval(1).is_zero()
    }

    /// Lowest terms: cancels common `(1 - t)` factors. A zero numerator is
    /// left untouched.
    pub fn reduced(&self) -> RationalSeries {
        let mut num = self.numerator.clone();
        let mut pole = self.pole_order;
        while pole > 0 && !num.is_zero() && num.eval(1).is_zero() {
            num = num.div_one_minus_t().expect("root at 1");
            pole -= 1;
        }
        RationalSeries::new(num, pole)
    }

    /// Equality as rational functions.
    pub fn same_function(&self, other: &RationalSeries) -> bool {
        let lhs = &self.numerator * &UnivarPoly::one_minus_t().pow(other.pole_order as u32);
        let rhs = &other.numerator * &UnivarPoly::one_minus_t().pow(self.pole_order as u32);
        lhs == rhs
    }

    /// Coefficients of `t^0 .. t^max_degree` in the power series expansion.
    pub fn taylor(&self, max_degree: usize) -> Vec<BigInt> {
        // 1/(1-t)^k has coefficients C(j + k - 1, k - 1).
        let k = self.pole_order;
        let series_coeff = |j: usize| -> BigInt {
            if k == 0 {
                return if j == 0 { BigInt::one() } else { BigInt::zero() };
            }
            binomial(j + k - 1, k - 1)
        };
        (0..=max_degree)
            .map(|d| {
                (0..=d)
                    .map(|i| self.numerator.coeff(i) * series_coeff(d - i))
                    .sum()
            })
            .collect()
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UnivarPoly {
        UnivarPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn lex_and_degrevlex() {
        let n = 2;
        let x1 = Monomial::x(n, 1);
        let y1 = Monomial::y(n, 1);
        let lex = MonomialOrder::Lex;
        assert_eq!(x1.compare(&y1, lex).unwrap(), Ordering::Greater);
        let a = &Monomial::x(n, 1) * &Monomial::y(n, 2);
        let b = &Monomial::x(n, 2) * &Monomial::y(n, 1);
        assert_eq!(a.compare(&b, lex).unwrap(), Ordering::Greater);
        let drl = MonomialOrder::DegRevLex;
        assert_eq!(x1.compare(&x1, drl).unwrap(), Ordering::Equal);
        // x1*y2 vs x2*y1: y2 is the last variable, so x1*y2 is smaller
        assert_eq!(a.compare(&b, drl).unwrap(), Ordering::Less);
        assert!(x1.compare(&Monomial::one(3), lex).is_err());
    }

    #[test]
    fn lcm_divides_quotient() {
        let n = 3;
        let a = &Monomial::x(n, 1) * &Monomial::y(n, 2);
        let b = &Monomial::x(n, 2) * &Monomial::y(n, 1);
        let l = a.lcm(&b);
        assert_eq!(l.render(), "x1*x2*y1*y2");
        assert!(Monomial::x(n, 1).divides(&(&Monomial::x(n, 1) * &Monomial::y(n, 3))));
        assert_eq!(l.quotient(&a).unwrap(), b);
        assert!(a.quotient(&b).is_err());
    }

    #[test]
    fn render_monomials_and_binomials() {
        let n = 2;
        let m = &(&Monomial::x(n, 1) * &Monomial::x(n, 1)) * &Monomial::y(n, 2);
        assert_eq!(m.render(), "x1^2*y2");
        assert_eq!(Monomial::one(4).render(), "1");
        let a = &Monomial::x(n, 1) * &Monomial::y(n, 2);
        let b = &Monomial::x(n, 2) * &Monomial::y(n, 1);
        let f = Binomial::new(b, a, MonomialOrder::Lex).unwrap();
        assert_eq!(f.to_string(), "x1*y2 - x2*y1");
        assert!(Binomial::new(m.clone(), m, MonomialOrder::Lex).is_none());
    }

    #[test]
    fn univariate_arithmetic() {
        assert_eq!(UnivarPoly::one_plus_t() * UnivarPoly::one_minus_t(), p(&[1, 0, -1]));
        assert_eq!(UnivarPoly::one_plus_t().pow(3), p(&[1, 3, 3, 1]));
        let e = UnivarPoly::one_plus_t().pow(3) * UnivarPoly::one_minus_t().pow(2);
        // direct expansion: (1 + 3t + 3t^2 + t^3)(1 - 2t + t^2)
        let mut oracle = [0i64; 6];
        let a = [1, 3, 3, 1];
        let b = [1, -2, 1];
        for i in 0..4 {
            for j in 0..3 {
                oracle[i + j] += a[i] * b[j];
            }
        }
        assert_eq!(oracle, [1, 1, -2, -2, 1, 1]);
        assert_eq!(e, p(&oracle));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(UnivarPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0]), UnivarPoly::zero());
    }

    #[test]
    fn strip_factors() {
        assert_eq!(p(&[1, 0, -1]).strip_one_minus_t().unwrap(), (p(&[1, 1]), 1));
        assert_eq!(p(&[1, 1]).strip_one_minus_t().unwrap(), (p(&[1, 1]), 0));
        let q = UnivarPoly::one_plus_t() * UnivarPoly::one_minus_t().pow(4);
        assert_eq!(q.strip_one_minus_t().unwrap(), (p(&[1, 1]), 4));
        assert_eq!(UnivarPoly::zero().strip_one_minus_t(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 4, 3, -2]).render(), "1 + 4*t + 3*t^2 - 2*t^3");
        assert_eq!(p(&[0, 1, 0, -1]).render(), "t - t^3");
        assert_eq!(p(&[-2]).render(), "-2");
        assert_eq!(UnivarPoly::zero().render(), "0");
    }

    #[test]
    fn taylor_of_free_ring() {
        // 1/(1-t)^4: number of monomials of degree d in 4 variables
        let s = RationalSeries::new(UnivarPoly::one(), 4);
        let t: Vec<i64> = s.taylor(3).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(t, vec![1, 4, 10, 20]);
        let red = RationalSeries::new(p(&[1, 0, -1]), 4).reduced();
        assert_eq!(red, RationalSeries::new(p(&[1, 1]), 3));
        assert!(red.same_function(&RationalSeries::new(p(&[1, 0, -1]), 4)));
    }

    fn mono(num_vars: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..3, num_vars).prop_map(Monomial::from_exponents)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::DegRevLex)]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_and_well_based(
            a in mono(6), b in mono(6), c in mono(6), ord in order()
        ) {
            let ab = a.cmp_unchecked(&b, ord);
            prop_assert_eq!(ab, b.cmp_unchecked(&a, ord).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!((&a * &c).cmp_unchecked(&(&b * &c), ord), ab);
            prop_assert_ne!(Monomial::one(6).cmp_unchecked(&a, ord), Ordering::Greater);
            if a.divides(&b) {
                prop_assert_ne!(ab, Ordering::Greater);
            }
        }

        #[test]
        fn order_is_transitive(a in mono(4), b in mono(4), c in mono(4), ord in order()) {
            if a.cmp_unchecked(&b, ord) == Ordering::Less && b.cmp_unchecked(&c, ord) == Ordering::Less {
                prop_assert_eq!(a.cmp_unchecked(&c, ord), Ordering::Less);
            }
        }

        #[test]
        fn strip_recomposes(coeffs in prop::collection::vec(-5i64..6, 1..6), k in 0usize..5) {
            let base = p(&coeffs);
            prop_assume!(!base.is_zero());
            let q = &base * &UnivarPoly::one_minus_t().pow(k as u32);
            let (red, count) = q.strip_one_minus_t().unwrap();
            prop_assert!(!red.eval(1).is_zero());
            prop_assert_eq!(&red * &UnivarPoly::one_minus_t().pow(count as u32), q);
            prop_assert!(count >= k);
        }

        #[test]
        fn binomial_orientation_is_idempotent(a in mono(4), b in mono(4), ord in order()) {
            if let Some(f) = Binomial::new(a.clone(), b.clone(), ord) {
                prop_assert_eq!(f.reoriented(ord), f.clone());
                prop_assert_eq!(Binomial::new(b, a, ord).unwrap(), f);
            }
        }
    }
}
