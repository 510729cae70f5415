//! Derivatives written as series of central difference operators.
//!
//! With `δ = 2 sinh(hD/2)` and `μ² = 1 + δ²/4`:
//!
//! * even order `n`: `Dⁿ = Σ_{m≥0} a_m δ^{2m}`
//! * odd order `n`:  `Dⁿ = Σ_{m≥1} b_m μδ^{2m−1}`

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::rational::{int, rat, Rational};
use crate::series::PowerSeries;
use crate::stencil::{even_power, odd_power, StencilSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Σ_{m≥0} c_m δ^{2m}
    Even,
    /// Σ_{m≥1} c_m μδ^{2m−1}
    Odd,
}

/// Truncated expansion in the canonical central basis.
///
/// `coeffs[i]` multiplies `δ^{2i}` (even kind) or `μδ^{2i+1}` (odd kind).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSeries {
    kind: SeriesKind,
    coeffs: Vec<HPoly>,
}

impl OperatorSeries {
    pub fn new(kind: SeriesKind, coeffs: Vec<HPoly>) -> Self {
        OperatorSeries { kind, coeffs }
    }

    pub fn zero(kind: SeriesKind, terms: usize) -> Self {
        OperatorSeries {
            kind,
            coeffs: vec![HPoly::zero(); terms],
        }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Number of stored coefficients (the truncation `M`).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[HPoly] {
        &self.coeffs
    }

    /// Coefficient by canonical index: `a_m` for even kind (m ≥ 0), `b_m` for odd (m ≥ 1).
    pub fn coeff(&self, m: usize) -> HPoly {
        let idx = match self.kind {
            SeriesKind::Even => Some(m),
            SeriesKind::Odd => m.checked_sub(1),
        };
        idx.and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_default()
    }

    /// Highest canonical index available.
    pub fn max_index(&self) -> usize {
        match self.kind {
            SeriesKind::Even => self.coeffs.len().saturating_sub(1),
            SeriesKind::Odd => self.coeffs.len(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OperatorSeries {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Termwise sum; truncation is the shorter of the two.
    pub fn add(&self, other: &OperatorSeries) -> Result<OperatorSeries> {
        if self.kind != other.kind {
            return Err(Error::InvalidOperator(
                "cannot add even and odd series".into(),
            ));
        }
        let n = self.len().min(other.len());
        Ok(OperatorSeries {
            kind: self.kind,
            coeffs: (0..n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        })
    }

    /// The grid operator `c_m × basis_m` for canonical index `m`.
    pub fn term_stencil(&self, m: usize) -> StencilSum {
        let c = self.coeff(m);
        if c.is_zero() {
            return StencilSum::zero();
        }
        let basis = match self.kind {
            SeriesKind::Even => even_power(m as u32),
            SeriesKind::Odd => odd_power(m as u32),
        };
        StencilSum::weighted(&c, &basis)
    }

    /// Sum of all stored terms as one grid operator.
    pub fn to_stencil(&self) -> StencilSum {
        let range = match self.kind {
            SeriesKind::Even => 0..self.len(),
            SeriesKind::Odd => 1..self.len() + 1,
        };
        range.fold(StencilSum::zero(), |acc, m| acc + self.term_stencil(m))
    }
}

impl fmt::Display for OperatorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let op = match self.kind {
                SeriesKind::Even => crate::stencil::even_label(i as u32),
                SeriesKind::Odd => crate::stencil::odd_label(i as u32 + 1),
            };
            parts.push(format!("[{c}]·{op}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Series of `∂ⁿ/∂xⁿ` in the canonical basis, keeping `terms` coefficients
/// from the leading one (`δⁿ` or `μδⁿ`) upward. Lower canonical indices are
/// stored as zeros.
///
/// Reverts `δ = 2 sinh(hD/2)` to `hD = 2 asinh(δ/2)`, raises it to the
/// `n`-th power, and for odd `n` divides out `μ = (1 + δ²/4)^{1/2}` so the
/// result is a series in `μδ^{2m−1}`.
pub fn derivative_to_series(n: u32, terms: usize) -> Result<OperatorSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "derivative order must be positive".into(),
        ));
    }
    if terms == 0 {
        return Err(Error::InvalidArgument(
            "need at least one series term".into(),
        ));
    }
    // powers of δ needed: up to δ^{n + 2(terms−1)}
    // highest canonical index kept
    let top = n as usize / 2 + terms - 1 + (n as usize % 2);
    let order = n as usize + 2 * terms;
    let sinh = {
        // 2 sinh(y/2) = Σ y^{2k+1} / (2^{2k} (2k+1)!)
        let mut c = vec![Rational::zero(); order];
        let mut fact = Rational::one();
        for k in 0..order {
            if k > 0 {
                fact *= int(k as i64);
            }
            if k % 2 == 1 {
                c[k] = Rational::one() / (&fact * int(1i64 << (k - 1)));
            }
        }
        PowerSeries::new(c, order)
    };
    let hd = sinh.revert();
    let power = hd.pow(n);
    let kind;
    let series_in_delta: Vec<Rational> = if n % 2 == 0 {
        kind = SeriesKind::Even;
        // coefficient of δ^{2m}; the leading power is δⁿ so lower m vanish
        (0..=top).map(|m| power.coeff(2 * m)).collect()
    } else {
        kind = SeriesKind::Odd;
        // divide by δ, then by μ: multiply by (1 + δ²/4)^{−1/2}
        let shifted = PowerSeries::new((1..order).map(|i| power.coeff(i)).collect(), order - 1);
        let inv_mu = {
            let base = PowerSeries::binomial(&rat(1, 4), &rat(-1, 2), (order - 1) / 2 + 1);
            let mut c = vec![Rational::zero(); order - 1];
            for (i, v) in base.coeffs().iter().enumerate() {
                if 2 * i < order - 1 {
                    c[2 * i] = v.clone();
                }
            }
            PowerSeries::new(c, order - 1)
        };
        let reduced = shifted.mul(&inv_mu);
        // μδ^{2m−1} = μ δ · δ^{2m−2}
        (1..=top).map(|m| reduced.coeff(2 * m - 2)).collect()
    };
    let coeffs = series_in_delta
        .into_iter()
        .map(|c| HPoly::monomial(c, -(n as i32)))
        .collect();
    Ok(OperatorSeries::new(kind, coeffs))
}
