use holistic_fd::construct::{construct_iterative, ModelSeries, PdeSpec};
use holistic_fd::error::Error;
use holistic_fd::presets::{upwind1, upwind2};
use holistic_fd::simulate::{
    integrate, is_stable, point_release_moments, stability_max_growth, GridState, IntegrateOptions,
    NumericStencil, StepSize,
};

fn diffusion_model() -> ModelSeries {
    construct_iterative(&PdeSpec::diffusion(), 2, 1).unwrap().1
}

fn gaussian(n: usize, h: f64) -> GridState {
    let c = n as f64 / 2.0;
    let values = (0..n)
        .map(|j| (-((j as f64 - c) / 6.0).powi(2)).exp())
        .collect();
    GridState::new(values, h).unwrap()
}

#[test]
fn diffusion_conserves_mass_and_decays() {
    let state = gaussian(128, 0.5);
    let traj = integrate(
        &diffusion_model(),
        1.0,
        0.0,
        &state,
        &IntegrateOptions::new(4.0),
    )
    .unwrap();
    let mass = state.mass();
    let mut peak = f64::INFINITY;
    for s in &traj.states {
        assert!((s.mass() - mass).abs() < 1e-12 * mass.max(1.0));
        let top = s.values.iter().cloned().fold(f64::MIN, f64::max);
        assert!(top <= peak);
        peak = top;
    }
    assert!(peak < 0.9);
    assert_eq!(traj.states.len(), 11);
}

#[test]
fn upwind_release_is_poisson() {
    // εt/h = 5
    let (eps, h, t) = (1.0, 0.1, 0.5);
    let at = 10;
    let state = GridState::point_release(80, at, h).unwrap();
    let mut opts = IntegrateOptions::new(t);
    opts.dt = StepSize::Fixed(0.002);
    opts.samples = 1;
    let traj = integrate(&upwind1(), 1.0, eps, &state, &opts).unwrap();
    let last = traj.final_state();
    let lambda: f64 = eps * t / h;
    let mut p = (-lambda).exp();
    for k in 0..60 {
        assert!((last.values[at + k] - p).abs() < 1e-8, "k = {k}");
        p *= lambda / (k + 1) as f64;
    }
    for j in 0..at {
        assert!(last.values[j].abs() < 1e-8);
    }
}

#[test]
fn upwind_release_stays_non_negative() {
    let report = point_release_moments(&upwind1(), 1.0, 0.1, &IntegrateOptions::new(3.0)).unwrap();
    for s in &report.trajectory.states {
        let low = s.values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(low >= -1e-14, "{low} at t = {}", s.time);
    }
}

#[test]
fn moment_predictions_hold_at_every_sample() {
    // (model, ε, h, T, mean rate, variance rate)
    let cases = [
        (upwind1(), 1.0, 0.1, 1.0, 1.0, 0.1),
        (upwind1(), 3.0, 0.5, 2.0, 3.0, 1.5),
        (upwind2(), 5.0, 1.0, 2.0, 5.0, 2.0),
        (upwind2(), 8.0, 0.25, 1.0, 8.0, 2.0),
        (diffusion_model(), 0.0, 0.5, 2.0, 0.0, 2.0),
    ];
    for (model, eps, h, t, mean_rate, var_rate) in cases {
        let report = point_release_moments(&model, eps, h, &IntegrateOptions::new(t)).unwrap();
        assert!(
            !report.wrap_contaminated,
            "ε={eps} h={h} n={}",
            report.grid_points
        );
        assert_eq!(report.rows.len(), 11);
        for row in &report.rows {
            assert!((row.mass - 1.0).abs() < 1e-12);
            assert!(
                (row.mean_x - mean_rate * row.t).abs() < 1e-6,
                "ε={eps} h={h} t={}",
                row.t
            );
            assert!(
                (row.var_x - var_rate * row.t).abs() < 1e-6,
                "ε={eps} h={h} t={}",
                row.t
            );
        }
    }
}

#[test]
fn moment_csv_layout() {
    let report = point_release_moments(&upwind1(), 1.0, 0.1, &IntegrateOptions::new(1.0)).unwrap();
    let csv = report.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,mass,mean_x,var_x"));
    assert_eq!(
        lines.next(),
        Some("0.000000000000e+00,1.000000000000e+00,0.000000000000e+00,0.000000000000e+00")
    );
    assert_eq!(csv.lines().count(), 12);
    let traj = report.trajectory.to_csv();
    assert!(traj.starts_with("t,j,u_j\n"));
    assert_eq!(traj.lines().count(), 1 + 11 * report.grid_points);
}

#[test]
fn rk4_is_fourth_order() {
    let state = gaussian(64, 1.0);
    let model = diffusion_model();
    let run = |dt: f64| {
        let mut opts = IntegrateOptions::new(2.0);
        opts.dt = StepSize::Fixed(dt);
        opts.samples = 1;
        integrate(&model, 1.0, 0.0, &state, &opts)
            .unwrap()
            .final_state()
            .values
            .clone()
    };
    let reference = run(0.0125);
    let err = |dt: f64| {
        run(dt)
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let ratio = err(0.2) / err(0.1);
    assert!((13.0..19.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn derived_models_keep_constants_fixed() {
    for ell in [2, 3] {
        let model = construct_iterative(&PdeSpec::advection_diffusion(), ell, 10)
            .unwrap()
            .1;
        for (eps, h) in [(0.0, 1.0), (1.0, 0.1), (3.0, 0.7), (-2.0, 2.0)] {
            let s = NumericStencil::from_model(&model, 1.0, eps, h);
            assert!(s.symbol(0.0).norm() < 1e-12);
        }
    }
    for model in [upwind1(), upwind2()] {
        assert!(
            NumericStencil::from_model(&model, 1.0, 4.0, 0.3)
                .symbol(0.0)
                .norm()
                < 1e-12
        );
    }
}

#[test]
fn upwind2_growth_rate() {
    let model = upwind2();
    for z in [0.1, 0.5, 0.9] {
        let g = stability_max_growth(&model, 1.0, z, 1.0, 256).unwrap();
        // attained at θ = π
        assert!((g - 4.0 * (1.0 - z)).abs() < 1e-12, "εh = {z}: {g}");
        assert!(!is_stable(g));
    }
    for z in [1.0, 1.5, 3.0, 8.0] {
        assert!(is_stable(
            stability_max_growth(&model, 1.0, z, 1.0, 256).unwrap()
        ));
    }
    // h scales the rate by h⁻²
    let g = stability_max_growth(&model, 1.0, 1.0, 0.5, 256).unwrap();
    assert!((g - 16.0 * 0.5).abs() < 1e-12);
}

#[test]
fn holistic_models_are_stable() {
    let model = construct_iterative(&PdeSpec::advection_diffusion(), 2, 10)
        .unwrap()
        .1;
    for z in [0.5, 2.0, 4.0, 6.0] {
        assert!(
            is_stable(stability_max_growth(&model, 1.0, z, 1.0, 512).unwrap()),
            "z = {z}"
        );
    }
    assert!(stability_max_growth(&model, 1.0, 1.0, 1.0, 10).is_err());
}

#[test]
fn strict_mode_rejects_large_steps() {
    let state = gaussian(64, 1.0);
    let mut opts = IntegrateOptions::new(1.0);
    opts.dt = StepSize::Fixed(1.0);
    opts.samples = 1;
    opts.strict = true;
    let err = integrate(&diffusion_model(), 1.0, 0.0, &state, &opts).unwrap_err();
    match err {
        Error::UnstableStep { dt, limit } => {
            assert_eq!(dt, 1.0);
            // RK4 reaches about −2.785 on the real axis; the spectral radius is 4
            assert!((limit - 2.785 / 4.0).abs() < 1e-3, "{limit}");
        }
        other => panic!("unexpected {other:?}"),
    }
    opts.strict = false;
    opts.t_end = 1000.0;
    opts.dt = StepSize::Fixed(1.0);
    assert!(matches!(
        integrate(&diffusion_model(), 1.0, 0.0, &state, &opts),
        Err(Error::NonFinite { .. })
    ));
}

#[test]
fn invalid_inputs() {
    assert!(GridState::new(vec![1.0, f64::NAN], 1.0).is_err());
    assert!(GridState::new(vec![1.0], 0.0).is_err());
    assert!(GridState::point_release(4, 4, 1.0).is_err());
    let state = GridState::point_release(2, 0, 1.0).unwrap();
    assert!(integrate(&upwind2(), 1.0, 1.0, &state, &IntegrateOptions::new(1.0)).is_err());
    let state = gaussian(16, 1.0);
    assert!(integrate(&upwind2(), 1.0, 1.0, &state, &IntegrateOptions::new(-1.0)).is_err());
}

#[test]
fn unstable_release_is_flagged() {
    // εh = 0.5 lies in the unstable range of the second-order upwind model
    let report = point_release_moments(&upwind2(), 2.0, 0.25, &IntegrateOptions::new(1.0)).unwrap();
    assert!(report.wrap_contaminated);
}
