//! Polynomials in the element coordinate ξ = (x − x_j)/h.
//!
//! A unit step in ξ is a step of `h` in `x`, so the x-differences `δ_x`
//! and `μ_x` act on an [`XiPoly`] as unit-step differences in ξ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Polynomial in ξ with exact coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct XiPoly {
    coeffs: Vec<Rational>,
}

/// Difference operators acting on ξ with unit step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiOperator {
    /// δ²p(ξ) = p(ξ+1) − 2p(ξ) + p(ξ−1)
    SecondDifference,
    /// μδp(ξ) = (p(ξ+1) − p(ξ−1))/2
    MeanDifference,
    /// δp(ξ) = p(ξ+½) − p(ξ−½)
    Difference,
    /// μp(ξ) = (p(ξ+½) + p(ξ−½))/2
    Mean,
}

impl XiPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = XiPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial ξ^n.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        XiPoly { coeffs }
    }

    /// ξ itself.
    pub fn xi() -> Self {
        Self::monomial(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, xi: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * xi + c)
    }

    pub fn eval_f64(&self, xi: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * xi + crate::rational::to_f64(c))
    }

    /// Value at ξ = 0.
    pub fn at_origin(&self) -> Rational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XiPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// q(ξ) = p(ξ + s).
    pub fn shift(&self, s: &Rational) -> Self {
        // Horner in the shifted variable: p(ξ+s) = (...(c_n (ξ+s) + c_{n-1})(ξ+s) + ...)
        let step = XiPoly::new(vec![s.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(XiPoly::zero(), |acc, c| {
            &(&acc * &step) + &XiPoly::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        XiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at ξ = 0.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / int(n as i64 + 1)),
        );
        XiPoly::new(coeffs)
    }

    pub fn apply(&self, op: XiOperator) -> Self {
        let half = Rational::new(1.into(), 2.into());
        match op {
            XiOperator::SecondDifference => {
                let fwd = self.shift(&Rational::one());
                let back = self.shift(&-Rational::one());
                &(&fwd + &back) - &self.scale(&int(2))
            }
            XiOperator::MeanDifference => {
                let fwd = self.shift(&Rational::one());
                let back = self.shift(&-Rational::one());
                (&fwd - &back).scale(&half)
            }
            XiOperator::Difference => &self.shift(&half) - &self.shift(&-half.clone()),
            XiOperator::Mean => (&self.shift(&half) + &self.shift(&-half.clone())).scale(&half),
        }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }
}

/// q(ξ) = p(ξ + s).
pub fn xi_shift(p: &XiPoly, s: &Rational) -> XiPoly {
    p.shift(s)
}

pub fn apply_xi_operator(p: &XiPoly, op: XiOperator) -> XiPoly {
    p.apply(op)
}

impl Zero for XiPoly {
    fn zero() -> Self {
        XiPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for &XiPoly {
    type Output = XiPoly;

    fn add(self, rhs: &XiPoly) -> XiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XiPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for XiPoly {
    type Output = XiPoly;

    fn add(self, rhs: XiPoly) -> XiPoly {
        &self + &rhs
    }
}

impl Sub for &XiPoly {
    type Output = XiPoly;

    fn sub(self, rhs: &XiPoly) -> XiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XiPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for XiPoly {
    type Output = XiPoly;

    fn neg(self) -> XiPoly {
        XiPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &XiPoly {
    type Output = XiPoly;

    fn mul(self, rhs: &XiPoly) -> XiPoly {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        XiPoly::new(coeffs)
    }
}

impl Mul for XiPoly {
    type Output = XiPoly;

    fn mul(self, rhs: XiPoly) -> XiPoly {
        &self * &rhs
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ξ")?,
                _ => write!(f, "({c})ξ^{n}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn shift_examples() {
        assert_eq!(
            XiPoly::xi().shift(&rat(1, 2)),
            XiPoly::new(vec![rat(1, 2), int(1)])
        );
        assert_eq!(
            XiPoly::monomial(2).shift(&int(-1)),
            XiPoly::from_ints(&[1, -2, 1])
        );
        // p2 = (ξ³ − ξ)/6 shifted by one: expand (ξ+1)³ − (ξ+1) = ξ³ + 3ξ² + 2ξ
        let p2 = XiPoly::new(vec![int(0), rat(-1, 6), int(0), rat(1, 6)]);
        let expected = XiPoly::from_ints(&[0, 2, 3, 1]).scale(&rat(1, 6));
        assert_eq!(p2.shift(&int(1)), expected);
    }

    #[test]
    fn operator_examples() {
        assert_eq!(
            XiPoly::monomial(2).apply(XiOperator::SecondDifference),
            XiPoly::constant(int(2))
        );
        assert_eq!(
            XiPoly::xi().apply(XiOperator::MeanDifference),
            XiPoly::one()
        );
        let p2 = XiPoly::new(vec![int(0), rat(-1, 6), int(0), rat(1, 6)]);
        assert_eq!(p2.apply(XiOperator::SecondDifference), XiPoly::xi());
    }

    #[test]
    fn half_step_operators_compose() {
        let p = XiPoly::from_ints(&[3, -1, 4, 1, -5]);
        let dd = p
            .apply(XiOperator::Difference)
            .apply(XiOperator::Difference);
        assert_eq!(dd, p.apply(XiOperator::SecondDifference));
        let md = p.apply(XiOperator::Difference).apply(XiOperator::Mean);
        assert_eq!(md, p.apply(XiOperator::MeanDifference));
    }

    #[test]
    fn calculus() {
        let p = XiPoly::from_ints(&[1, 2, 3]);
        assert_eq!(p.derivative(), XiPoly::from_ints(&[2, 6]));
        assert_eq!(p.antiderivative().derivative(), p);
        assert!(p.antiderivative().at_origin().is_zero());
        assert_eq!(p.eval(&int(2)), int(17));
        assert_eq!(XiPoly::zero().degree(), None);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = XiPoly> {
        prop::collection::vec((-20i64..20, 1i64..7), 0..=max_deg + 1)
            .prop_map(|cs| XiPoly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn shift_composes(p in arb_poly(8), s in (-9i64..9, 1i64..5), t in (-9i64..9, 1i64..5)) {
            let s = rat(s.0, s.1);
            let t = rat(t.0, t.1);
            prop_assert_eq!(p.shift(&s).shift(&t), p.shift(&(s + t)));
        }

        #[test]
        fn mean_difference_squared(p in arb_poly(10)) {
            // μδ∘μδ = δ²(1 + δ²/4)
            let lhs = p.apply(XiOperator::MeanDifference).apply(XiOperator::MeanDifference);
            let d2 = p.apply(XiOperator::SecondDifference);
            let rhs = &d2 + &d2.apply(XiOperator::SecondDifference).scale(&rat(1, 4));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn degree_of_product(p in arb_poly(6), q in arb_poly(6)) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!((&p * &q).degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
        }
    }
}
