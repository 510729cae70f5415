//! Truncated formal series.
//!
//! [`BiSeries`] is the bivariate series in the coupling parameter γ and
//! the perturbation parameter ε that carries fields and models.
//! [`PowerSeries`] is a univariate helper used for operator reversion.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Bivariate series Σ γ^k ε^e c_{k,e}, kept to errors O(γ^gamma_order, ε^eps_order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries<T> {
    terms: BTreeMap<(u32, u32), T>,
    gamma_order: u32,
    eps_order: u32,
}

impl<T> BiSeries<T>
where
    T: Clone + Zero,
{
    pub fn new(gamma_order: u32, eps_order: u32) -> Self {
        BiSeries {
            terms: BTreeMap::new(),
            gamma_order,
            eps_order,
        }
    }

    pub fn gamma_order(&self) -> u32 {
        self.gamma_order
    }

    pub fn eps_order(&self) -> u32 {
        self.eps_order
    }

    pub fn in_range(&self, k: u32, e: u32) -> bool {
        k < self.gamma_order && e < self.eps_order
    }

    /// Coefficient of γ^k ε^e; zero when absent or beyond truncation.
    pub fn get(&self, k: u32, e: u32) -> T {
        self.terms.get(&(k, e)).cloned().unwrap_or_else(T::zero)
    }

    pub fn get_ref(&self, k: u32, e: u32) -> Option<&T> {
        self.terms.get(&(k, e))
    }

    /// Sets a coefficient. Orders beyond truncation are discarded.
    pub fn set(&mut self, k: u32, e: u32, value: T) {
        if !self.in_range(k, e) || value.is_zero() {
            self.terms.remove(&(k, e));
        } else {
            self.terms.insert((k, e), value);
        }
    }

    pub fn add_at(&mut self, k: u32, e: u32, value: T) {
        if !self.in_range(k, e) || value.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&(k, e)) {
            Some(old) => old + value,
            None => value,
        };
        self.set(k, e, sum);
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &T)> {
        self.terms.iter().map(|(&(k, e), v)| (k, e, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-declares the truncation orders, dropping terms beyond them.
    pub fn truncate(&self, gamma_order: u32, eps_order: u32) -> Self {
        let mut out = Self::new(gamma_order, eps_order);
        for (k, e, v) in self.iter() {
            out.set(k, e, v.clone());
        }
        out
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> BiSeries<U> {
        let mut out = BiSeries::new(self.gamma_order, self.eps_order);
        for (k, e, v) in self.iter() {
            out.set(k, e, f(v));
        }
        out
    }

    /// Cauchy product with a caller-supplied coefficient product.
    /// Truncation is the smaller of the two operands'.
    pub fn mul_with<U, V>(&self, rhs: &BiSeries<U>, f: impl Fn(&T, &U) -> V) -> BiSeries<V>
    where
        U: Clone + Zero,
        V: Clone + Zero,
    {
        let mut out = BiSeries::new(
            self.gamma_order.min(rhs.gamma_order),
            self.eps_order.min(rhs.eps_order),
        );
        for (k1, e1, a) in self.iter() {
            for (k2, e2, b) in rhs.iter() {
                if out.in_range(k1 + k2, e1 + e2) {
                    out.add_at(k1 + k2, e1 + e2, f(a, b));
                }
            }
        }
        out
    }

    /// Sum of the two series to the smaller truncation.
    pub fn plus(&self, rhs: &Self) -> Self {
        let mut out = Self::new(
            self.gamma_order.min(rhs.gamma_order),
            self.eps_order.min(rhs.eps_order),
        );
        for (k, e, v) in self.iter().chain(rhs.iter()) {
            out.add_at(k, e, v.clone());
        }
        out
    }
}

impl<T> Add for &BiSeries<T>
where
    T: Clone + Zero,
{
    type Output = BiSeries<T>;

    fn add(self, rhs: &BiSeries<T>) -> BiSeries<T> {
        self.plus(rhs)
    }
}

impl<T> Neg for &BiSeries<T>
where
    T: Clone + Zero + Neg<Output = T>,
{
    type Output = BiSeries<T>;

    fn neg(self) -> BiSeries<T> {
        self.map(|v| -v.clone())
    }
}

impl<T> Mul for &BiSeries<T>
where
    T: Clone + Zero + Mul<Output = T>,
{
    type Output = BiSeries<T>;

    fn mul(self, rhs: &BiSeries<T>) -> BiSeries<T> {
        self.mul_with(rhs, |a, b| a.clone() * b.clone())
    }
}

/// Univariate truncated power series Σ c_n x^n, n < len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn identity(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(), n)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(), n)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// f(g(x)) for g with zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeff(0).is_zero(), "inner series must vanish at zero");
        let n = self.order().min(inner.order());
        // Horner
        self.coeffs
            .iter()
            .take(n)
            .rev()
            .fold(Self::new(vec![], n), |acc, c| {
                acc.mul(inner).add(&Self::new(vec![c.clone()], n))
            })
    }

    /// Compositional inverse of f = x + O(x²).
    pub fn revert(&self) -> Self {
        assert!(
            self.coeff(0).is_zero() && self.coeff(1).is_one(),
            "series must be x + O(x^2)"
        );
        let n = self.order();
        let x = Self::identity(n);
        // y ← x − (f(y) − y); each pass fixes at least one more coefficient
        let mut y = x.clone();
        for _ in 0..n {
            let next = x.sub(&self.compose(&y).sub(&y));
            if next == y {
                break;
            }
            y = next;
        }
        y
    }

    /// (1 + c x)^α for rational α by the binomial series.
    pub fn binomial(c: &Rational, alpha: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut term = Rational::one();
        for n in 0..order {
            coeffs.push(term.clone());
            term = term * (alpha - int(n as i64)) / int(n as i64 + 1) * c;
        }
        Self::new(coeffs, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn arb_series() -> impl Strategy<Value = BiSeries<Rational>> {
        prop::collection::vec(((0u32..4, 0u32..4), (-9i64..9, 1i64..4)), 0..10).prop_map(|ts| {
            let mut s = BiSeries::new(3, 3);
            for ((k, e), (n, d)) in ts {
                s.add_at(k, e, rat(n, d));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }
    }

    #[test]
    fn truncation_discards() {
        let mut s = BiSeries::<Rational>::new(2, 2);
        s.set(2, 0, int(1));
        s.set(0, 2, int(1));
        assert!(s.is_zero());
        let mut a = BiSeries::new(2, 2);
        a.set(1, 1, int(3));
        let sq = &a * &a;
        assert!(sq.is_zero());
    }

    #[test]
    fn reversion_of_sinh() {
        // 2 sinh(y/2) = y + y³/24 + y⁵/1920 + ...; inverse 2 asinh(x/2) = x − x³/24 + 3x⁵/640
        let n = 8;
        let mut c = vec![Rational::zero(); n];
        c[1] = int(1);
        c[3] = rat(1, 24);
        c[5] = rat(1, 1920);
        c[7] = rat(1, 322560);
        let inv = PowerSeries::new(c.clone(), n).revert();
        assert_eq!(inv.coeff(3), rat(-1, 24));
        assert_eq!(inv.coeff(5), rat(3, 640));
        let round = PowerSeries::new(c, n).compose(&inv);
        assert_eq!(round, PowerSeries::identity(n));
    }

    #[test]
    fn binomial_inverse_sqrt() {
        let s = PowerSeries::binomial(&rat(1, 4), &rat(-1, 2), 4);
        assert_eq!(
            s.coeffs(),
            &[int(1), rat(-1, 8), rat(3, 128), rat(-5, 1024)]
        );
    }
}
