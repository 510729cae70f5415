//! Large-εh upwind models, written with the backward difference ∇.

use num_traits::One;

use crate::construct::ModelSeries;
use crate::hpoly::HPoly;
use crate::rational::{rat, Rational};
use crate::stencil::{grid_operator, GridOpName, StencilSum};

fn nabla(power: u32) -> StencilSum {
    StencilSum::from(&grid_operator(GridOpName::Nabla, power).expect("∇ powers are valid"))
}

/// `u̇_j = −(ε/h)∇u_j`
pub fn upwind1() -> ModelSeries {
    let mut m = ModelSeries::new(2, 2);
    m.set_term(
        1,
        1,
        StencilSum::weighted(
            &HPoly::monomial(-Rational::one(), -1),
            &grid_operator(GridOpName::Nabla, 1).expect("valid"),
        ),
    );
    m
}

/// `u̇_j = −(ε/h)(∇ + ∇²/2)u_j + (1/h²)∇²u_j`
pub fn upwind2() -> ModelSeries {
    let mut m = ModelSeries::new(2, 2);
    m.set_term(1, 0, nabla(2).shift_h(-2));
    let advect = nabla(1) + nabla(2).scale(&rat(1, 2));
    m.set_term(1, 1, advect.scale(&-Rational::one()).shift_h(-1));
    m
}

/// Looks up a preset by name (`upwind1` or `upwind2`).
pub fn by_name(name: &str) -> Option<ModelSeries> {
    match name {
        "upwind1" => Some(upwind1()),
        "upwind2" => Some(upwind2()),
        _ => None,
    }
}
