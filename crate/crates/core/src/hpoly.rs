//! Laurent polynomials in the grid spacing `h`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::{to_f64, Rational};

/// Σ c_p h^p over finitely many integer powers `p`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct HPoly {
    terms: BTreeMap<i32, Rational>,
}

impl HPoly {
    /// c·h^p
    pub fn monomial(c: Rational, p: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        HPoly { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn coeff(&self, p: i32) -> Rational {
        self.terms.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn add_term(&mut self, p: i32, c: &Rational) {
        let v = self.terms.entry(p).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = HPoly::zero();
        for (p, a) in self.iter() {
            out.add_term(p, &(a * c));
        }
        out
    }

    /// Multiplies by h^p.
    pub fn shift(&self, p: i32) -> Self {
        HPoly {
            terms: self
                .terms
                .iter()
                .map(|(&q, c)| (q + p, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, h: f64) -> f64 {
        self.iter().map(|(p, c)| to_f64(c) * h.powi(p)).sum()
    }

    /// The single (power, coefficient) pair when the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.iter().next()
        } else {
            None
        }
    }
}

impl Zero for HPoly {
    fn zero() -> Self {
        HPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for HPoly {
    type Output = HPoly;

    fn add(mut self, rhs: HPoly) -> HPoly {
        for (p, c) in rhs.iter() {
            self.add_term(p, c);
        }
        self
    }
}

impl Sub for HPoly {
    type Output = HPoly;

    fn sub(self, rhs: HPoly) -> HPoly {
        self + (-rhs)
    }
}

impl Neg for HPoly {
    type Output = HPoly;

    fn neg(self) -> HPoly {
        HPoly {
            terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Mul for &HPoly {
    type Output = HPoly;

    fn mul(self, rhs: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (p, a) in self.iter() {
            for (q, b) in rhs.iter() {
                out.add_term(p + q, &(a * b));
            }
        }
        out
    }
}

impl Mul for HPoly {
    type Output = HPoly;

    fn mul(self, rhs: HPoly) -> HPoly {
        &self * &rhs
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, c)| match p {
                0 => format!("{c}"),
                1 => format!("({c})h"),
                _ => format!("({c})h^{p}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
