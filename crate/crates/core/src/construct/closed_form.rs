//! Closed-form models for operators given as difference series.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::opseries::{OperatorSeries, SeriesKind};
use crate::series::BiSeries;
use crate::stencil::{even_power, odd_power, StencilSum};
use crate::xipoly::XiPoly;

use super::basis::basis_polynomials;
use super::field::{FieldExpansion, SubgridField};
use super::model::ModelSeries;

/// Field and model for `u_t = 𝒜u` with `𝒜 = Σ a_m δ_x^{2m}`, to O(γ^ℓ):
/// `g^k = a_k δ^{2k}` and `v^k = p_k(ξ) μδ^{2k−1}u_j + q_k(ξ) δ^{2k}u_j`.
pub fn even_model(a: &OperatorSeries, gamma_order: u32) -> Result<(FieldExpansion, ModelSeries)> {
    if a.kind() != SeriesKind::Even {
        return Err(Error::InvalidOperator(
            "even_model needs an even series".into(),
        ));
    }
    if gamma_order == 0 {
        return Err(Error::InvalidArgument(
            "gamma order must be at least 1".into(),
        ));
    }
    if a.len() < gamma_order as usize {
        return Err(Error::Truncation(format!(
            "O(γ^{gamma_order}) needs {gamma_order} coefficients, the series has {}",
            a.len()
        )));
    }
    let mut field = BiSeries::new(gamma_order, 1);
    let mut model = ModelSeries::new(gamma_order, 1);
    field.set(
        0,
        0,
        SubgridField::product(&XiPoly::one(), &StencilSum::identity()),
    );
    for k in 0..gamma_order {
        model.set_term(k, 0, a.term_stencil(k as usize));
        if k == 0 {
            continue;
        }
        let (p, q) = basis_polynomials(k)?;
        let v = SubgridField::product(&p, &StencilSum::from(&odd_power(k)))
            + SubgridField::product(&q, &StencilSum::from(&even_power(k)));
        field.set(k, 0, v);
    }
    Ok((FieldExpansion::from_series(field), model))
}

/// The ε-linear model increment `Σ_{1≤k<ℓ} ε γ^k b_k μδ^{2k−1}` for
/// `ε𝓑` with `𝓑 = Σ b_m μ_xδ_x^{2m−1}`; truncation O(γ^ℓ, ε²).
pub fn odd_correction(b: &OperatorSeries, gamma_order: u32) -> Result<ModelSeries> {
    if b.kind() != SeriesKind::Odd {
        return Err(Error::InvalidOperator(
            "odd_correction needs an odd series".into(),
        ));
    }
    if (b.len() as u32) + 1 < gamma_order {
        return Err(Error::Truncation(format!(
            "O(γ^{gamma_order}) needs {} coefficients, the series has {}",
            gamma_order - 1,
            b.len()
        )));
    }
    let mut model = ModelSeries::new(gamma_order, 2);
    for k in 1..gamma_order {
        let term = b.term_stencil(k as usize);
        if !term.is_zero() {
            model.set_term(k, 1, term);
        }
    }
    Ok(model)
}
