//! Maximum Fourier growth rate of the second-order upwind model and of the
//! holistic model across εh.

use holistic_fd::construct::{construct_iterative, PdeSpec};
use holistic_fd::presets::upwind2;
use holistic_fd::simulate::{is_stable, stability_max_growth};
use holistic_fd::Result;

fn main() -> Result<()> {
    let back = upwind2();
    let (_, holistic) = construct_iterative(&PdeSpec::advection_diffusion(), 2, 10)?;
    println!("{:>6} {:>14} {:>14}", "εh", "upwind2", "holistic ℓ=2");
    for i in 0..=12 {
        let z = 0.25 * i as f64;
        let a = stability_max_growth(&back, 1.0, z, 1.0, 1024)?;
        let b = stability_max_growth(&holistic, 1.0, z, 1.0, 1024)?;
        let mark = |g: f64| if is_stable(g) { "stable" } else { "unstable" };
        println!("{z:>6.2} {a:>9.4} {:<8} {b:>9.4} {}", mark(a), mark(b));
    }

    // bisect for the smallest stable εh of the upwind model
    let (mut lo, mut hi) = (0.5, 2.0);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if is_stable(stability_max_growth(&back, 1.0, mid, 1.0, 4096)?) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    println!("upwind2 is stable for εh ≥ {hi:.4}");
    Ok(())
}
