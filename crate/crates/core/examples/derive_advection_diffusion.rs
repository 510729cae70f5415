//! Iterative construction of holistic models for advection-diffusion.

use holistic_fd::construct::{construct_iterative_with, residual_check, IterativeOptions, PdeSpec};
use holistic_fd::Result;

fn main() -> Result<()> {
    let spec = PdeSpec::advection_diffusion();
    println!("{spec}");
    for ell in [2, 3] {
        let run = construct_iterative_with(&spec, ell, 6, &IterativeOptions::default())?;
        println!("\nℓ = {ell}, {} passes", run.passes);
        print!("{}", run.model.report());
        let residuals = residual_check(&run.field, &run.model, &spec)?;
        println!("residuals zero: {}", residuals.is_zero());
    }

    // models round-trip through JSON exactly
    let run = construct_iterative_with(&spec, 2, 4, &IterativeOptions::default())?;
    let json = run.model.to_json()?;
    assert_eq!(
        holistic_fd::construct::ModelSeries::from_json(&json)?,
        run.model
    );
    println!("\n{json}");
    Ok(())
}
