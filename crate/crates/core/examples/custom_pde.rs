//! Deriving a model for a user-supplied PDE with perturbation terms.

use holistic_fd::construct::{construct_iterative, residual_check, PdeSpec};
use holistic_fd::equivalent::{consistency_order, equivalent_pde};
use holistic_fd::Result;

fn main() -> Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "ut = 2*uxx + eps*1/3*u - eps*uxxxx + eps*1/2*uxxx".into());
    let spec: PdeSpec = text.parse()?;
    println!("{spec}");
    let (field, model) = construct_iterative(&spec, 3, 2)?;
    print!("{}", model.report());
    println!(
        "residuals zero: {}",
        residual_check(&field, &model, &spec)?.is_zero()
    );
    print!("{}", equivalent_pde(&model, 2).to_text());
    println!("consistency order {}", consistency_order(&model, &spec));
    Ok(())
}
