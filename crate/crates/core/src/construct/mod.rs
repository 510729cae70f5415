//! Centre-manifold construction of holistic models.

mod basis;
mod closed_form;
mod field;
mod iterative;
mod model;
mod pde;
mod residual;

pub use basis::basis_polynomials;
pub use closed_form::{even_model, odd_correction};
pub use field::{FieldExpansion, SubgridField};
pub use iterative::{
    construct_iterative, construct_iterative_with, Construction, IterativeOptions,
};
pub use model::ModelSeries;
pub use pde::{LinearPde, PdeSpec, PdeTerm, SeriesPde};
pub use residual::{residual_check, OrderResidual, ResidualReport};
