//! Closed-form models for even operators, checked against the governing
//! equations.

use holistic_fd::construct::{even_model, odd_correction, residual_check, PdeSpec, SeriesPde};
use holistic_fd::Result;

fn main() -> Result<()> {
    // diffusion with a small hyperdiffusive and reactive part
    let spec: PdeSpec = "ut = 1/10*u + uxx - 1/20*uxxxx - eps*ux".parse()?;
    let ell = 3;
    let even = spec.even_part(ell as usize);
    let odd = spec.odd_part(ell as usize);
    println!("𝒜 = {even}");
    println!("𝓑 = {odd}");

    let (field, model) = even_model(&even, ell)?;
    let pde = SeriesPde::new(even.clone(), None)?;
    assert!(residual_check(&field, &model, &pde)?.is_zero());
    print!("{}", model.report());

    // the ε-linear correction for the odd part
    let correction = odd_correction(&odd, ell)?;
    let full = model.truncate(ell, 2).plus(&correction);
    print!("{}", full.report());
    Ok(())
}
