//! Equivalent differential equations of grid models.
//!
//! Each tap `u_{j+r}` is expanded as `e^{rh∂}u_j`, giving the model as a
//! series `Σ c_{n,e}(h) εᵉ ∂ⁿ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::construct::{ModelSeries, PdeSpec};
use crate::hpoly::HPoly;
use crate::rational::{factorial, format_rational, int, Rational};
use crate::stencil::StencilSum;

/// `Σ c_{n,e}(h) εᵉ ∂ⁿ` keeping powers of `h` up to `max_h_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOpSeries {
    terms: BTreeMap<(u32, u32), HPoly>,
    max_h_order: i32,
}

/// One row of the flat report: `coefficient · h^h_power · ε^eps_power · ∂^d_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOpTerm {
    pub d_order: u32,
    pub eps_power: u32,
    pub h_power: i32,
    pub coeff: Rational,
}

impl DiffOpSeries {
    pub fn new(max_h_order: i32) -> Self {
        DiffOpSeries {
            terms: BTreeMap::new(),
            max_h_order,
        }
    }

    /// The target operator `𝒜 + ε𝓑` of a PDE (no powers of `h`).
    pub fn from_pde(spec: &PdeSpec, max_h_order: i32) -> Self {
        let mut out = DiffOpSeries::new(max_h_order);
        for t in spec.terms() {
            out.add(t.order, t.eps_power, &HPoly::constant(t.coeff.clone()));
        }
        out
    }

    pub fn max_h_order(&self) -> i32 {
        self.max_h_order
    }

    /// Adds to a coefficient, discarding powers of `h` beyond the truncation.
    pub fn add(&mut self, order: u32, eps_power: u32, c: &HPoly) {
        let mut kept = HPoly::zero();
        for (p, a) in c.iter().filter(|&(p, _)| p <= self.max_h_order) {
            kept.add_term(p, a);
        }
        if kept.is_zero() {
            return;
        }
        let key = (order, eps_power);
        let sum = self.terms.remove(&key).unwrap_or_default() + kept;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Coefficient of `εᵉ ∂ⁿ` as a polynomial in `h`.
    pub fn coeff(&self, order: u32, eps_power: u32) -> HPoly {
        self.terms
            .get(&(order, eps_power))
            .cloned()
            .unwrap_or_default()
    }

    /// Flat rows ordered by (∂-order, ε-power, h-power).
    pub fn terms(&self) -> Vec<DiffOpTerm> {
        let mut rows = Vec::new();
        for (&(n, e), c) in &self.terms {
            for (p, a) in c.iter() {
                rows.push(DiffOpTerm {
                    d_order: n,
                    eps_power: e,
                    h_power: p,
                    coeff: a.clone(),
                });
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &DiffOpSeries) -> DiffOpSeries {
        let mut out = DiffOpSeries::new(self.max_h_order.min(other.max_h_order));
        for (&(n, e), c) in &self.terms {
            out.add(n, e, c);
        }
        for (&(n, e), c) in &other.terms {
            out.add(n, e, &-c.clone());
        }
        out
    }

    /// Keeps only terms with ε-power below `eps_order`.
    pub fn below_eps(&self, eps_order: u32) -> DiffOpSeries {
        DiffOpSeries {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, e), _)| e < eps_order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            max_h_order: self.max_h_order,
        }
    }

    /// Lowest power of `h` among the nonzero terms.
    pub fn lowest_h_power(&self) -> Option<i32> {
        self.terms
            .values()
            .filter_map(|c| c.iter().next().map(|(p, _)| p))
            .min()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("d_order,eps_power,h_power,coefficient\n");
        for t in self.terms() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                t.d_order,
                t.eps_power,
                t.h_power,
                format_rational(&t.coeff)
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("u_t =");
        if self.is_zero() {
            out.push_str(" 0");
        }
        for t in self.terms() {
            let _ = write!(out, "\n  + ({})", format_rational(&t.coeff));
            if t.h_power != 0 {
                let _ = write!(out, " h^{}", t.h_power);
            }
            if t.eps_power != 0 {
                let _ = write!(out, " eps^{}", t.eps_power);
            }
            let _ = write!(out, " d^{}u/dx^{}", t.d_order, t.d_order);
        }
        let _ = writeln!(out, "\n  + O(h^{})", self.max_h_order + 1);
        out
    }
}

/// Taylor expansion of a grid operator: `Σ_r c_r(h) e^{rh∂}`, grouped by ∂-order.
fn expand_stencil(s: &StencilSum, eps_power: u32, out: &mut DiffOpSeries) {
    let Some(min_p) = s
        .taps()
        .values()
        .filter_map(|c| c.iter().next().map(|(p, _)| p))
        .min()
    else {
        return;
    };
    let max_n = (out.max_h_order - min_p).max(-1);
    for n in 0..=max_n {
        let n = n as u32;
        let inv_fact = factorial(n).recip();
        let mut coeff = HPoly::zero();
        for (&r, c) in s.taps() {
            let weight = crate::rational::powi(&int(r), n as i32) * &inv_fact;
            if weight.is_zero() {
                continue;
            }
            coeff = coeff + c.scale(&weight).shift(n as i32);
        }
        out.add(n, eps_power, &coeff);
    }
}

/// Equivalent PDE of a model after setting γ = 1, to errors O(h^{max_h_order+1}).
pub fn equivalent_pde(model: &ModelSeries, max_h_order: i32) -> DiffOpSeries {
    let mut out = DiffOpSeries::new(max_h_order);
    for e in 0..model.eps_order() {
        expand_stencil(&model.eps_coefficient(e), e, &mut out);
    }
    out
}

/// Equivalent PDE of a single grid operator.
pub fn equivalent_operator(s: &StencilSum, max_h_order: i32) -> DiffOpSeries {
    let mut out = DiffOpSeries::new(max_h_order);
    expand_stencil(s, 0, &mut out);
    out
}

/// Order of consistency: the power `p` with `equivalent − target = O(h^p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsistencyOrder {
    Exact(i32),
    /// No discrepancy found up to the expansion limit.
    AtLeast(i32),
}

impl ConsistencyOrder {
    pub fn value(self) -> i32 {
        match self {
            ConsistencyOrder::Exact(p) | ConsistencyOrder::AtLeast(p) => p,
        }
    }
}

impl std::fmt::Display for ConsistencyOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConsistencyOrder::Exact(p) => write!(f, "{p}"),
            ConsistencyOrder::AtLeast(p) => write!(f, ">={p}"),
        }
    }
}

/// Default expansion depth used by [`consistency_order`].
pub const CONSISTENCY_H_LIMIT: i32 = 12;

fn discrepancy(model: &ModelSeries, spec: &PdeSpec, limit: i32) -> DiffOpSeries {
    let equiv = equivalent_pde(model, limit);
    equiv
        .sub(&DiffOpSeries::from_pde(spec, limit))
        .below_eps(model.eps_order())
}

fn order_of(diff: &DiffOpSeries, limit: i32) -> ConsistencyOrder {
    match diff.lowest_h_power() {
        Some(p) => ConsistencyOrder::Exact(p),
        None => ConsistencyOrder::AtLeast(limit + 1),
    }
}

/// Consistency order of the model against `spec`, over all ε-powers the
/// model resolves.
pub fn consistency_order(model: &ModelSeries, spec: &PdeSpec) -> ConsistencyOrder {
    order_of(
        &discrepancy(model, spec, CONSISTENCY_H_LIMIT),
        CONSISTENCY_H_LIMIT,
    )
}

/// Consistency order of the `εᵉ` block alone.
pub fn consistency_order_at_eps(
    model: &ModelSeries,
    spec: &PdeSpec,
    eps_power: u32,
) -> ConsistencyOrder {
    let diff = discrepancy(model, spec, CONSISTENCY_H_LIMIT);
    let block = DiffOpSeries {
        terms: diff
            .terms
            .into_iter()
            .filter(|&((_, e), _)| e == eps_power)
            .collect(),
        max_h_order: CONSISTENCY_H_LIMIT,
    };
    order_of(&block, CONSISTENCY_H_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opseries::derivative_to_series;
    use crate::rational::rat;
    use crate::stencil::even_power;

    #[test]
    fn second_difference() {
        let d2 = StencilSum::weighted(&HPoly::monomial(int(1), -2), &even_power(1));
        let eq = equivalent_operator(&d2, 4);
        assert_eq!(eq.coeff(2, 0), HPoly::constant(int(1)));
        assert_eq!(eq.coeff(4, 0), HPoly::monomial(rat(1, 12), 2));
        assert_eq!(eq.coeff(6, 0), HPoly::monomial(rat(1, 360), 4));
        assert!(eq.coeff(0, 0).is_zero() && eq.coeff(3, 0).is_zero());
        assert!(eq.coeff(8, 0).is_zero());
    }

    #[test]
    fn series_round_trip() {
        for n in 1..=4 {
            let terms = 3;
            let s = derivative_to_series(n, terms).unwrap().to_stencil();
            let limit = 2 * terms as i32 - 1;
            let eq = equivalent_operator(&s, limit);
            let rows = eq.terms();
            assert_eq!(rows.len(), 1, "n={n}: {rows:?}");
            assert_eq!(
                rows[0],
                DiffOpTerm {
                    d_order: n,
                    eps_power: 0,
                    h_power: 0,
                    coeff: int(1)
                }
            );
        }
    }

    #[test]
    fn csv_format() {
        let d2 = StencilSum::weighted(&HPoly::monomial(int(1), -2), &even_power(1));
        let csv = equivalent_operator(&d2, 2).to_csv();
        assert_eq!(
            csv,
            "d_order,eps_power,h_power,coefficient\n2,0,0,1\n4,0,2,1/12\n"
        );
    }
}
