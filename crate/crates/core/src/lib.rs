//! Holistic finite-difference models of linear PDEs.
//!
//! Models of `u_t = 𝒜u + ε𝓑u` are derived as the evolution on a centre
//! manifold of coupled subgrid elements. The crate builds the model
//! exactly over the rationals, checks it by modified-equation analysis,
//! evaluates its coefficient series, and integrates it in time.

pub mod cli;
pub mod coefficients;
pub mod construct;
pub mod equivalent;
pub mod error;
pub mod format;
pub mod hpoly;
pub mod opseries;
pub mod parallel;
pub mod presets;
pub mod rational;
pub mod series;
pub mod simulate;
pub mod stencil;
pub mod xipoly;

pub use construct::{
    basis_polynomials, construct_iterative, even_model, odd_correction, residual_check,
    FieldExpansion, ModelSeries, PdeSpec,
};
pub use error::{Error, Result};
pub use opseries::{derivative_to_series, OperatorSeries, SeriesKind};
pub use rational::Rational;
pub use stencil::{compose, grid_operator, symbol, GridOpName, Stencil, StencilSum};
pub use xipoly::{apply_xi_operator, xi_shift, XiOperator, XiPoly};
