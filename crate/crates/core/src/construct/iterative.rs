//! Residual-driven iterative construction of field and model.
//!
//! Each pass evaluates all residuals of the current approximation and
//! corrects every order at once. At order `γ^k ε^e` the correction solves
//! the homological equation
//!
//! ```text
//! (𝒜 − a₀) v' − g' = −R,   v'(0) = −A,   μ_xδ_x v'(0) = −B,   δ_x² v'(0) = −C
//! ```
//!
//! by twice integrating in ξ against `𝒜 − a₀ = a₁∂²(1 + N)`. A pass fixes
//! the lowest incorrect order exactly, so the loop terminates once the
//! corrections have propagated through the truncation.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::series::BiSeries;
use crate::stencil::StencilSum;
use crate::xipoly::{XiOperator, XiPoly};

use super::field::{FieldExpansion, SubgridField};
use super::model::ModelSeries;
use super::pde::PdeSpec;
use super::residual::{residual_check, OrderResidual};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IterativeOptions {
    /// Maximum number of correction passes; `None` means `2(ℓ + E)`.
    pub max_passes: Option<usize>,
}

/// Output of [`construct_iterative_with`].
#[derive(Clone, Debug)]
pub struct Construction {
    pub field: FieldExpansion,
    pub model: ModelSeries,
    /// Correction passes performed before the residuals vanished.
    pub passes: usize,
}

/// Builds field and model for `spec` to errors O(γ^ℓ, ε^E).
pub fn construct_iterative(
    spec: &PdeSpec,
    gamma_order: u32,
    eps_order: u32,
) -> Result<(FieldExpansion, ModelSeries)> {
    let c = construct_iterative_with(spec, gamma_order, eps_order, &IterativeOptions::default())?;
    Ok((c.field, c.model))
}

pub fn construct_iterative_with(
    spec: &PdeSpec,
    gamma_order: u32,
    eps_order: u32,
    options: &IterativeOptions,
) -> Result<Construction> {
    spec.check_supported()?;
    if gamma_order == 0 || eps_order == 0 {
        return Err(Error::InvalidArgument(
            "truncation orders must be at least 1".into(),
        ));
    }
    let budget = options
        .max_passes
        .unwrap_or(2 * (gamma_order + eps_order) as usize);
    let solver = Homological::new(spec);

    let mut field = BiSeries::new(gamma_order, eps_order);
    field.set(
        0,
        0,
        SubgridField::product(&XiPoly::one(), &StencilSum::identity()),
    );
    let mut model = BiSeries::new(gamma_order, eps_order);
    model.set(0, 0, StencilSum::identity().scale(&spec.a0()));

    for pass in 0..=budget {
        let current_field = FieldExpansion::from_series(field.clone());
        let current_model = ModelSeries::from_series(model.clone());
        let report = residual_check(&current_field, &current_model, spec)?;
        if report.is_zero() {
            return Ok(Construction {
                field: current_field,
                model: current_model,
                passes: pass,
            });
        }
        if pass == budget {
            let (gamma, eps) = report.lowest_nonzero().unwrap_or((0, 0));
            return Err(Error::NonConvergence {
                passes: budget,
                gamma,
                eps,
            });
        }
        for (k, e, res) in report.orders().iter() {
            let (dv, dg) = solver.solve(res);
            field.add_at(k, e, dv);
            model.add_at(k, e, dg);
        }
    }
    unreachable!("loop returns on its final pass")
}

/// Inverse of the linearised operator at the base order.
struct Homological {
    a1: Rational,
    /// `c_n / a₁` for even `n ≥ 4` in 𝒜
    higher: Vec<(u32, Rational)>,
}

impl Homological {
    fn new(spec: &PdeSpec) -> Self {
        let a1 = spec.a1();
        let higher = spec
            .terms()
            .iter()
            .filter(|t| t.eps_power == 0 && t.order >= 4)
            .map(|t| (t.order, &t.coeff / &a1))
            .collect();
        Homological { a1, higher }
    }

    fn apply_n(&self, f: &SubgridField) -> SubgridField {
        self.higher
            .iter()
            .fold(SubgridField::zero(), |acc, (n, c)| {
                acc + f.derivative_x(n - 2).scale(c)
            })
    }

    /// Solves `a₁∂²(1 + N) w = rhs` for the polynomial `w` with `w(0) = w'(0) = 0`.
    fn invert(&self, rhs: &SubgridField) -> SubgridField {
        // (1 + N)⁻¹ as a terminating Neumann series: N lowers ξ-degree
        let mut sum = SubgridField::zero();
        let mut term = rhs.clone();
        while !term.is_zero() {
            sum = sum + term.clone();
            term = -self.apply_n(&term);
        }
        // ∂_x⁻² = h² ∫∫ dξ dξ
        sum.antiderivative_xi()
            .antiderivative_xi()
            .shift_h(2)
            .scale(&self.a1.recip())
    }

    /// Field and model corrections cancelling one order's residuals.
    fn solve(&self, res: &OrderResidual) -> (SubgridField, StencilSum) {
        let w = self.invert(&(-res.pde.clone()));
        let c0 = -res.amplitude.clone();
        let c1 =
            -res.ibc_mean_difference.clone() - w.apply_xi(XiOperator::MeanDifference).at_origin();
        let kink = -res.ibc_second_difference.clone()
            - w.apply_xi(XiOperator::SecondDifference).at_origin();
        let half_xi2 = XiPoly::new(vec![Rational::zero(), Rational::zero(), rat(1, 2)]);
        let dv = w
            + SubgridField::product(&half_xi2, &kink)
            + SubgridField::product(&XiPoly::one(), &c0)
            + SubgridField::product(&XiPoly::xi(), &c1);
        // the ξ²/2 kink costs a₁/h² in the model
        let dg = kink.shift_h(-2).scale(&self.a1);
        (dv, dg)
    }
}
