//! The subgrid basis polynomials `p_k`, `q_k`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{factorial, int, Rational};
use crate::xipoly::XiPoly;

/// `p_k(ξ) = Π_{m=−k+1}^{k−1} (ξ − m) / (2k−1)!` and `q_k(ξ) = ξ p_k(ξ) / (2k)`.
///
/// These are the minimal-degree solutions of `δ²p_k = p_{k−1}`,
/// `δ²q_k = q_{k−1}` vanishing at `ξ = 0`, with `p₀ = 0`, `q₀ = 1`.
pub fn basis_polynomials(k: u32) -> Result<(XiPoly, XiPoly)> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "basis index must be at least 1".into(),
        ));
    }
    let k = k as i64;
    let mut p = XiPoly::one();
    for m in (-k + 1)..=(k - 1) {
        p = &p * &XiPoly::new(vec![int(-m), Rational::one()]);
    }
    let p = p.scale(&factorial(2 * k as u32 - 1).recip());
    let q = (&p * &XiPoly::xi()).scale(&int(2 * k).recip());
    Ok((p, q))
}
