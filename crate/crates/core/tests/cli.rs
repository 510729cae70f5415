use std::path::Path;
use std::process::{Command, Output};

use holistic_fd::coefficients::nu1_closed_form;
use holistic_fd::construct::ModelSeries;
use holistic_fd::rational::rat;

fn holistic_fd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holistic-fd"))
        .args(args)
        .env("HOLISTIC_FD_THREADS", "3")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = holistic_fd(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn derive_writes_model_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let model = path(dir.path(), "m.json");
    let report = path(dir.path(), "m.txt");
    ok(&[
        "derive",
        "--pde",
        "ut = -eps*ux + uxx",
        "--gamma",
        "3",
        "--eps-order",
        "10",
        "--out",
        &model,
        "--report",
        &report,
    ]);
    let parsed = ModelSeries::from_json(&std::fs::read_to_string(&model).unwrap()).unwrap();
    assert_eq!((parsed.gamma_order(), parsed.eps_order()), (3, 10));
    let json = std::fs::read_to_string(&model).unwrap();
    for c in ["-1/1900800", "-1/2395008", "1/151200"] {
        assert!(json.contains(c), "{c} missing");
    }
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("u̇_j = "));
    assert!(text.trim_end().ends_with("+ O(γ³, ε¹⁰)"), "{text}");
    // model to stdout when no --out
    let stdout = ok(&[
        "derive",
        "--pde",
        "ut = -eps*ux + uxx",
        "--gamma",
        "3",
        "--eps-order",
        "10",
    ]);
    assert_eq!(stdout, json);
}

#[test]
fn degenerate_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let report = path(dir.path(), "r.txt");
    ok(&[
        "derive", "--pde", "ut = uxx", "--gamma", "1", "--report", &report,
    ]);
    assert_eq!(
        std::fs::read_to_string(&report).unwrap(),
        "u̇_j = 0 + O(γ)\n"
    );
}

#[test]
fn equivalent_from_saved_model() {
    let dir = tempfile::tempdir().unwrap();
    let model = path(dir.path(), "m.json");
    ok(&[
        "derive",
        "--pde",
        "ut = -eps*ux + uxx",
        "--gamma",
        "2",
        "--eps-order",
        "3",
        "--out",
        &model,
    ]);
    let csv = ok(&["equivalent", "--model", &model, "--h-order", "2"]);
    assert_eq!(
        csv,
        "d_order,eps_power,h_power,coefficient\n1,1,0,-1\n2,0,0,1\n2,2,2,1/12\n3,1,2,-1/6\n4,0,2,1/12\n"
    );
    let text = ok(&[
        "equivalent",
        "--pde",
        "ut = -eps*ux + uxx",
        "--gamma",
        "3",
        "--eps-order",
        "4",
        "--format",
        "text",
    ]);
    assert!(
        text.contains("consistency order against ut = uxx - eps*ux: 4"),
        "{text}"
    );
}

#[test]
fn coefficient_sweep_matches_closed_form() {
    let csv = ok(&[
        "coefficients",
        "--which",
        "nu1",
        "--z",
        "0:8:0.25",
        "--shanks",
        "2",
    ]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("z,series_value,shanks_value,closed_form,asymptote")
    );
    let mut count = 0;
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((f[3] - nu1_closed_form(f[0])).abs() <= 1e-12 * f[3].abs());
        assert_eq!(f[4], f[0] / 2.0);
        count += 1;
    }
    assert_eq!(count, 33);
    // three iterations need seven terms, so E = 14
    let csv = ok(&[
        "coefficients",
        "--which",
        "nu1",
        "--z",
        "0:8:0.25",
        "--shanks",
        "3",
        "--eps-order",
        "14",
    ]);
    assert_eq!(csv.lines().count(), 34);
    let out = holistic_fd(&["coefficients", "--which", "nu1", "--shanks", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_and_stability_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let traj = path(dir.path(), "traj.csv");
    let moments = ok(&[
        "simulate",
        "--preset",
        "upwind2",
        "--eps",
        "5",
        "--h",
        "1",
        "--t",
        "2",
        "--trajectory",
        &traj,
    ]);
    let last: Vec<f64> = moments
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(last[0], 2.0);
    assert!((last[2] - 10.0).abs() < 1e-6 && (last[3] - 4.0).abs() < 1e-6);
    assert!(std::fs::read_to_string(&traj)
        .unwrap()
        .starts_with("t,j,u_j\n"));

    let csv = ok(&[
        "stability",
        "--preset",
        "upwind2",
        "--eps-h",
        "0.5:1.5:0.25",
    ]);
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0][1] > 0.0 && rows[1][1] > 0.0);
    assert!(rows[2..].iter().all(|r| r[1] <= 1e-12));
}

#[test]
fn error_lines_and_exit_codes() {
    let cases: [(&[&str], i32, &str); 6] = [
        (&["derive", "--pde", "ut = uxy"], 2, "error: malformed_pde:"),
        (
            &["derive", "--pde", "ut = -ux"],
            3,
            "error: unsupported_pde:",
        ),
        (
            &["equivalent", "--model", "/nonexistent/m.json"],
            4,
            "error: io:",
        ),
        (
            &[
                "simulate", "--preset", "upwind9", "--eps", "1", "--h", "1", "--t", "1",
            ],
            2,
            "error: invalid_argument:",
        ),
        (
            &["coefficients", "--which", "nu7"],
            2,
            "error: invalid_argument:",
        ),
        (&["simulate", "--eps", "1"], 2, "error: usage:"),
    ];
    for (args, code, prefix) in cases {
        let out = holistic_fd(args);
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(out.status.code(), Some(code), "{args:?}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with(prefix), "{err}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let mut all = Vec::new();
            all.extend(
                holistic_fd(&[
                    "derive",
                    "--pde",
                    "ut = -eps*ux + uxx",
                    "--gamma",
                    "2",
                    "--eps-order",
                    "10",
                ])
                .stdout,
            );
            all.extend(holistic_fd(&["coefficients", "--which", "kappa2"]).stdout);
            all.extend(
                holistic_fd(&[
                    "simulate", "--preset", "upwind1", "--eps", "1", "--h", "0.1", "--t", "1",
                ])
                .stdout,
            );
            all
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn rational_coefficients_survive_json() {
    let dir = tempfile::tempdir().unwrap();
    let model = path(dir.path(), "m.json");
    ok(&[
        "derive",
        "--pde",
        "ut = 3/2*uxx - 1/5*uxxxx + eps*2/3*ux",
        "--gamma",
        "2",
        "--eps-order",
        "2",
        "--out",
        &model,
    ]);
    let parsed = ModelSeries::from_json(&std::fs::read_to_string(&model).unwrap()).unwrap();
    let d2 = parsed.term(1, 0);
    // a₁ = 3/2 gives (3/2)δ²/h²; the ∂⁴ term only enters at γ²
    assert_eq!(d2.tap(1).coeff(-2), rat(3, 2));
}
