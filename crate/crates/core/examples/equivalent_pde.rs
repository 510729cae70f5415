//! Equivalent differential equations and consistency orders.

use holistic_fd::construct::{construct_iterative, PdeSpec};
use holistic_fd::equivalent::{consistency_order, equivalent_pde};
use holistic_fd::presets::{upwind1, upwind2};
use holistic_fd::Result;

fn main() -> Result<()> {
    let spec = PdeSpec::advection_diffusion();
    for ell in [2, 3] {
        let (_, model) = construct_iterative(&spec, ell, 6)?;
        println!("ℓ = {ell}:");
        print!("{}", equivalent_pde(&model, 4).to_text());
        println!("consistency order {}\n", consistency_order(&model, &spec));
    }
    for (name, model) in [("upwind1", upwind1()), ("upwind2", upwind2())] {
        println!("{name}:");
        print!("{}", equivalent_pde(&model, 2).to_text());
        println!("consistency order {}\n", consistency_order(&model, &spec));
    }
    Ok(())
}
