//! Point-release experiments: moments of the upwind models against their
//! exact predictions.

use holistic_fd::presets::{upwind1, upwind2};
use holistic_fd::simulate::{point_release_moments, IntegrateOptions};
use holistic_fd::Result;

fn main() -> Result<()> {
    // (name, model, ε, h, T, predicted variance rate)
    let runs = [
        ("upwind1", upwind1(), 1.0, 0.1, 1.0, 0.1),
        ("upwind2", upwind2(), 5.0, 1.0, 2.0, 2.0),
    ];
    for (name, model, eps, h, t, var_rate) in runs {
        let report = point_release_moments(&model, eps, h, &IntegrateOptions::new(t))?;
        println!(
            "{name}: ε = {eps}, h = {h}, {} grid points, dt = {:.4}, contaminated: {}",
            report.grid_points, report.trajectory.dt, report.wrap_contaminated
        );
        println!(
            "{:>6} {:>10} {:>12} {:>12}",
            "t", "mass", "mean_x − εt", "var_x − rt"
        );
        for row in &report.rows {
            println!(
                "{:>6.2} {:>10.6} {:>12.2e} {:>12.2e}",
                row.t,
                row.mass,
                row.mean_x - eps * row.t,
                row.var_x - var_rate * row.t
            );
        }
    }
    Ok(())
}
