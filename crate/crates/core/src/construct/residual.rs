//! Residuals of the governing equations for a candidate field and model.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::BiSeries;
use crate::stencil::{even_power, odd_power, StencilSum};
use crate::xipoly::XiOperator;

use super::field::{FieldExpansion, SubgridField};
use super::model::ModelSeries;
use super::pde::LinearPde;

/// Residuals at one order `γ^k ε^e`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrderResidual {
    /// `𝒜v + ε𝓑v − ∂v/∂t`
    pub pde: SubgridField,
    /// `μ_xδ_x v(x_j) − γ μδ u_j`
    pub ibc_mean_difference: StencilSum,
    /// `δ_x² v(x_j) − γ δ² u_j`
    pub ibc_second_difference: StencilSum,
    /// `v(x_j) − u_j`
    pub amplitude: StencilSum,
}

impl OrderResidual {
    pub fn is_zero(&self) -> bool {
        self.pde.is_zero()
            && self.ibc_mean_difference.is_zero()
            && self.ibc_second_difference.is_zero()
            && self.amplitude.is_zero()
    }
}

impl Zero for OrderResidual {
    fn zero() -> Self {
        OrderResidual::default()
    }

    fn is_zero(&self) -> bool {
        OrderResidual::is_zero(self)
    }
}

impl std::ops::Add for OrderResidual {
    type Output = OrderResidual;

    fn add(self, rhs: OrderResidual) -> OrderResidual {
        OrderResidual {
            pde: self.pde + rhs.pde,
            ibc_mean_difference: self.ibc_mean_difference + rhs.ibc_mean_difference,
            ibc_second_difference: self.ibc_second_difference + rhs.ibc_second_difference,
            amplitude: self.amplitude + rhs.amplitude,
        }
    }
}

/// Residuals at every order inside the truncation; zero orders are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    orders: BiSeries<OrderResidual>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.orders.is_zero()
    }

    pub fn get(&self, k: u32, e: u32) -> OrderResidual {
        self.orders.get(k, e)
    }

    /// Nonzero orders `(k, e)` in increasing order.
    pub fn nonzero_orders(&self) -> Vec<(u32, u32)> {
        self.orders.iter().map(|(k, e, _)| (k, e)).collect()
    }

    /// The nonzero order with smallest `k + e` (ties broken by `k`).
    pub fn lowest_nonzero(&self) -> Option<(u32, u32)> {
        self.nonzero_orders()
            .into_iter()
            .min_by_key(|&(k, e)| (k + e, k))
    }

    pub(crate) fn orders(&self) -> &BiSeries<OrderResidual> {
        &self.orders
    }
}

/// Evaluates the PDE, both inter-element coupling conditions, and the
/// amplitude condition at every order `γ^k ε^e` below the shared truncation.
pub fn residual_check(
    field: &FieldExpansion,
    model: &ModelSeries,
    pde: &impl LinearPde,
) -> Result<ResidualReport> {
    if field.gamma_order() != model.gamma_order() || field.eps_order() != model.eps_order() {
        return Err(Error::Truncation(format!(
            "field is O(γ^{}, ε^{}) but model is O(γ^{}, ε^{})",
            field.gamma_order(),
            field.eps_order(),
            model.gamma_order(),
            model.eps_order()
        )));
    }
    let (lg, le) = (field.gamma_order(), field.eps_order());
    let v = field.series();
    let g = model.series();

    // ∂v/∂t = Σ v_{k1,e1} ∘ g_{k2,e2}
    let dvdt = v.mul_with(g, |f, s| f.compose(s));

    let mut orders = BiSeries::new(lg, le);
    for k in 0..lg {
        for e in 0..le {
            let mut pde_res = -dvdt.get(k, e);
            for p in 0..=e.min(pde.max_eps_power()) {
                if let Some(f) = v.get_ref(k, e - p) {
                    pde_res = pde_res + pde.apply(p, f);
                }
            }
            let vke = v.get(k, e);
            let mut amplitude = vke.at_origin();
            let mut mu = vke.apply_xi(XiOperator::MeanDifference).at_origin();
            let mut d2 = vke.apply_xi(XiOperator::SecondDifference).at_origin();
            if k == 0 && e == 0 {
                amplitude = amplitude - StencilSum::identity();
            }
            if k == 1 && e == 0 {
                mu = mu - StencilSum::from(&odd_power(1));
                d2 = d2 - StencilSum::from(&even_power(1));
            }
            orders.set(
                k,
                e,
                OrderResidual {
                    pde: pde_res,
                    ibc_mean_difference: mu,
                    ibc_second_difference: d2,
                    amplitude,
                },
            );
        }
    }
    Ok(ResidualReport { orders })
}
