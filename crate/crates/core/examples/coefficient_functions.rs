//! Coefficient functions ν₁, ν₂, κ₂ in z = εh, summed with the Shanks
//! transform.

use holistic_fd::coefficients::{extract_coefficients, nu1_closed_form, shanks};
use holistic_fd::construct::{construct_iterative, PdeSpec};
use holistic_fd::rational::format_rational;
use holistic_fd::Result;

fn main() -> Result<()> {
    let spec = PdeSpec::advection_diffusion();
    let mut all = Vec::new();
    for ell in [2, 3] {
        let (_, model) = construct_iterative(&spec, ell, 10)?;
        all.extend(extract_coefficients(&model)?);
    }
    for s in &all {
        let terms: Vec<String> = s
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{} z^{}", format_rational(c), 2 * i))
            .collect();
        println!("{} = {}", s.name, terms.join(" + "));
    }
    println!(
        "\n{:>5} {:>10} {:>10} {:>10} {:>10}",
        "z", "coeff", "series", "shanks", "asymptote"
    );
    for s in &all {
        for z in [1.0, 2.0, 4.0, 6.0, 8.0] {
            let sums = s.partial_sums(z);
            let accel = shanks(&sums, 2)?;
            println!(
                "{z:>5} {:>10} {:>10.4} {:>10.4} {:>10.4}",
                s.name.as_str(),
                sums.last().unwrap(),
                accel.value,
                s.name.asymptote(z)
            );
        }
    }
    println!(
        "\nν₁ closed form (z/2)coth(z/2) at z = 6: {:.4}",
        nu1_closed_form(6.0)
    );
    Ok(())
}
