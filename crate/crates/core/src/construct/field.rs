//! Subgrid fields.
//!
//! Within element `j` the field is a finite sum
//! `v(ξ) = Σ h^p P_{p,r}(ξ) u_{j+r}`, stored as a map from
//! `(p, r)` to the ξ-polynomial `P_{p,r}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::hpoly::HPoly;
use crate::rational::Rational;
use crate::series::BiSeries;
use crate::stencil::StencilSum;
use crate::xipoly::{XiOperator, XiPoly};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubgridField {
    parts: BTreeMap<(i32, i64), XiPoly>,
}

impl SubgridField {
    /// shape(ξ) × (S u)_j
    pub fn product(shape: &XiPoly, stencil: &StencilSum) -> Self {
        let mut out = SubgridField::zero();
        for (&r, weight) in stencil.taps() {
            for (p, c) in weight.iter() {
                out.add_part(p, r, shape.scale(c));
            }
        }
        out
    }

    fn add_part(&mut self, hpower: i32, offset: i64, poly: XiPoly) {
        if poly.is_zero() {
            return;
        }
        let key = (hpower, offset);
        let sum = match self.parts.remove(&key) {
            Some(old) => &old + &poly,
            None => poly,
        };
        if !sum.is_zero() {
            self.parts.insert(key, sum);
        }
    }

    /// `(h-power, grid offset, shape)` triples.
    pub fn parts(&self) -> impl Iterator<Item = (i32, i64, &XiPoly)> {
        self.parts.iter().map(|(&(p, r), poly)| (p, r, poly))
    }

    pub fn map_polys(&self, f: impl Fn(&XiPoly) -> XiPoly) -> Self {
        let mut out = SubgridField::zero();
        for (p, r, poly) in self.parts() {
            out.add_part(p, r, f(poly));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_polys(|p| p.scale(c))
    }

    /// Multiplies by h^k.
    pub fn shift_h(&self, k: i32) -> Self {
        SubgridField {
            parts: self
                .parts
                .iter()
                .map(|(&(p, r), poly)| ((p + k, r), poly.clone()))
                .collect(),
        }
    }

    /// Multiplies by a Laurent polynomial in `h`.
    pub fn scale_h(&self, weight: &HPoly) -> Self {
        weight.iter().fold(SubgridField::zero(), |acc, (p, c)| {
            acc + self.scale(c).shift_h(p)
        })
    }

    pub fn apply_xi(&self, op: XiOperator) -> Self {
        self.map_polys(|p| p.apply(op))
    }

    /// ∂ⁿ/∂xⁿ, with ∂_x = h⁻¹∂_ξ.
    pub fn derivative_x(&self, n: u32) -> Self {
        let mut out = SubgridField::zero();
        for (p, r, poly) in self.parts() {
            out.add_part(p - n as i32, r, poly.nth_derivative(n));
        }
        out
    }

    /// Antiderivative in ξ from ξ = 0 (no power of `h` attached).
    pub fn antiderivative_xi(&self) -> Self {
        self.map_polys(XiPoly::antiderivative)
    }

    /// Value at the element centre, a grid operator on `u`.
    pub fn at_origin(&self) -> StencilSum {
        let mut out = StencilSum::zero();
        for (p, r, poly) in self.parts() {
            out.add_tap(r, &HPoly::monomial(poly.at_origin(), p));
        }
        out
    }

    /// The field driven by `u̇ = S u`: every `u_{j+r}` is replaced by `(S u)_{j+r}`.
    pub fn compose(&self, stencil: &StencilSum) -> Self {
        let mut out = SubgridField::zero();
        for (p, r, poly) in self.parts() {
            for (&s, weight) in stencil.taps() {
                for (q, c) in weight.iter() {
                    out.add_part(p + q, r + s, poly.scale(c));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.parts.values().filter_map(XiPoly::degree).max()
    }

    pub fn eval(&self, xi: f64, h: f64, u: impl Fn(i64) -> f64) -> f64 {
        self.parts()
            .map(|(p, r, poly)| h.powi(p) * poly.eval_f64(xi) * u(r))
            .sum()
    }
}

impl Zero for SubgridField {
    fn zero() -> Self {
        SubgridField::default()
    }

    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

impl std::ops::Add for SubgridField {
    type Output = SubgridField;

    fn add(mut self, rhs: SubgridField) -> SubgridField {
        for ((p, r), poly) in rhs.parts {
            self.add_part(p, r, poly);
        }
        self
    }
}

impl std::ops::Neg for SubgridField {
    type Output = SubgridField;

    fn neg(self) -> SubgridField {
        SubgridField {
            parts: self.parts.into_iter().map(|(k, p)| (k, -p)).collect(),
        }
    }
}

impl std::ops::Sub for SubgridField {
    type Output = SubgridField;

    fn sub(self, rhs: SubgridField) -> SubgridField {
        self + (-rhs)
    }
}

/// The centre-manifold field `v = Σ γ^k ε^e v_{k,e}(ξ)` to errors O(γ^ℓ, ε^E).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldExpansion {
    series: BiSeries<SubgridField>,
}

impl FieldExpansion {
    pub fn new(gamma_order: u32, eps_order: u32) -> Self {
        FieldExpansion {
            series: BiSeries::new(gamma_order, eps_order),
        }
    }

    pub fn from_series(series: BiSeries<SubgridField>) -> Self {
        FieldExpansion { series }
    }

    pub fn series(&self) -> &BiSeries<SubgridField> {
        &self.series
    }

    pub fn series_mut(&mut self) -> &mut BiSeries<SubgridField> {
        &mut self.series
    }

    pub fn gamma_order(&self) -> u32 {
        self.series.gamma_order()
    }

    pub fn eps_order(&self) -> u32 {
        self.series.eps_order()
    }

    pub fn order(&self, k: u32, e: u32) -> SubgridField {
        self.series.get(k, e)
    }

    /// Flattened terms `(k, e, h-power, offset, shape)`:
    /// `v += γ^k ε^e h^p shape(ξ) u_{j+offset}`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i32, i64, &XiPoly)> {
        self.series
            .iter()
            .flat_map(|(k, e, f)| f.parts().map(move |(p, r, poly)| (k, e, p, r, poly)))
    }

    /// `v⁰ = u_j` and every correction vanishes at the element centre.
    pub fn satisfies_amplitude_condition(&self) -> bool {
        let base = SubgridField::product(&XiPoly::one(), &StencilSum::identity());
        self.series.get(0, 0) == base
            && self
                .series
                .iter()
                .filter(|&(k, e, _)| k + e > 0)
                .all(|(_, _, f)| f.at_origin().is_zero())
    }

    /// Field value at `ξ` for concrete γ, ε, h and grid values `u_{j+r}`.
    pub fn eval(&self, gamma: f64, eps: f64, h: f64, xi: f64, u: impl Fn(i64) -> f64) -> f64 {
        self.series
            .iter()
            .map(|(k, e, f)| gamma.powi(k as i32) * eps.powi(e as i32) * f.eval(xi, h, &u))
            .sum()
    }
}
