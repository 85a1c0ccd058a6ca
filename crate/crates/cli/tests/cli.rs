use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use radfric_cli::units::{Scales, UnitSystem};

fn radfric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radfric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_config(dir: &Path, text: &str, extra: &[&str]) -> Output {
    let cfg = dir.join("run.cfg");
    fs::write(&cfg, text).unwrap();
    let out = dir.join("out");
    let mut args = vec!["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    radfric(&args)
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

const EQUILIBRIUM: &str = "\
mode = surface
[particle]
alpha0 = 1
omega0 = 1
damping = 0.1
[motion]
v = 0
[surface]
z = 1
n = 2
[thermal]
T_A = 0.5
T_F = 0.5
[quadrature]
rel_tol = 1e-6
[output]
name = eq
";

#[test]
fn equilibrium_surface_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config(dir.path(), EQUILIBRIUM, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = table(&dir.path().join("out/eq.csv"));
    assert_eq!(h.join(","), "v,z,F_x1,F_x2,F_x,F_z1,F_z2,F_z,err_F_x,err_F_z,evaluations,converged");
    assert_eq!(rows.len(), 1);
    assert!(column(&h, &rows, "F_x")[0].abs() < 1e-10);
    assert!(column(&h, &rows, "F_z")[0] < 0.0);
    assert_eq!(rows[0].last().unwrap(), "true");

    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/eq.json")).unwrap()).unwrap();
    assert_eq!(meta["unit_system"], "natural");
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(meta["all_converged"], true);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let text = EQUILIBRIUM
        .replace("v = 0", "v = linspace(0, 0.2, 3)")
        .replace("rel_tol = 1e-6", "rel_tol = 1e-3");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run_config(a.path(), &text, &["--threads", "1"]).status.success());
    assert!(run_config(b.path(), &text, &["--threads", "3"]).status.success());
    for f in ["out/eq.csv", "out/eq.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let (h, rows) = table(&a.path().join("out/eq.csv"));
    assert_eq!(column(&h, &rows, "v"), vec![0.0, 0.1, 0.2]);
}

#[test]
fn distance_sweep_gives_retarded_scaling() {
    let text = EQUILIBRIUM
        .replace("z = 1", "z = geomspace(10, 100, 4)")
        .replace("T_A = 0.5", "T_A = 0")
        .replace("T_F = 0.5", "T_F = 0")
        .replace("damping = 0.1", "damping = 0.01")
        .replace("rel_tol = 1e-6", "rel_tol = 1e-9");
    let dir = tempfile::tempdir().unwrap();
    assert!(run_config(dir.path(), &text, &[]).status.success());
    let (h, rows) = table(&dir.path().join("out/eq.csv"));
    let z = column(&h, &rows, "z");
    let f = column(&h, &rows, "F_z");
    let slope = (f[3].abs().ln() - f[0].abs().ln()) / (z[3].ln() - z[0].ln());
    assert!((slope + 5.0).abs() < 0.1, "{slope}");
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config(dir.path(), &EQUILIBRIUM.replace("alpha0", "polarisability"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("polarisability"));
    let out = run_config(dir.path(), &EQUILIBRIUM.replace("v = 0", "v = 1.2"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`v`"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn accuracy_failure_keeps_partial_rows() {
    let text = "\
mode = blackbody
[particle]
alpha0 = 1
omega0 = 1
damping = 0.001
[motion]
v = linspace(0.1, 0.3, 2)
[thermal]
T_A = 0.5
T_F = 0.2
[quadrature]
rel_tol = 1e-12
max_subdivisions = 2
[output]
name = bad
";
    let dir = tempfile::tempdir().unwrap();
    let out = run_config(dir.path(), text, &[]);
    assert_eq!(out.status.code(), Some(3));
    let (h, rows) = table(&dir.path().join("out/bad.csv"));
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.last().unwrap() == "false"));
    assert!(column(&h, &rows, "F_x").iter().all(|x| x.is_finite()));
}

#[test]
fn si_output_matches_scaled_natural_output() {
    let omega0 = 1e15;
    let s = Scales::new(UnitSystem::Si, omega0);
    let natural = "\
mode = blackbody
[particle]
alpha0 = 1
omega0 = 1
damping = 0.1
[motion]
v = 0.2
[thermal]
T_A = 0.5
T_F = 0.3
[output]
name = bb
";
    let si = format!(
        "mode = blackbody\n[particle]\nalpha0 = {:e}\nomega0 = {omega0:e}\ndamping = {:e}\n[motion]\nv = {:e}\n[thermal]\nT_A = {:e}\nT_F = {:e}\n[output]\nunits = SI\nname = bb\n",
        s.polarizability,
        0.1 * omega0,
        0.2 * s.velocity,
        0.5 * s.temperature,
        0.3 * s.temperature,
    );
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run_config(a.path(), natural, &[]).status.success());
    assert!(run_config(b.path(), &si, &[]).status.success());
    let (h, n_rows) = table(&a.path().join("out/bb.csv"));
    let (_, s_rows) = table(&b.path().join("out/bb.csv"));
    let fx_n = column(&h, &n_rows, "F_x")[0];
    let fx_s = column(&h, &s_rows, "F_x")[0];
    let p_n = column(&h, &n_rows, "F_0")[0];
    let p_s = column(&h, &s_rows, "F_0")[0];
    assert!((fx_s / (fx_n * s.force) - 1.0).abs() < 1e-9, "{fx_s} {fx_n}");
    assert!((p_s / (p_n * s.power) - 1.0).abs() < 1e-9, "{p_s} {p_n}");
    let meta = fs::read_to_string(b.path().join("out/bb.json")).unwrap();
    assert!(meta.contains("\"unit_system\": \"SI\""));
}

#[test]
fn identities_subcommand() {
    let out = radfric(&["identities", "--seed", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("seed 11"));
    assert!(text.contains("gauge cancellation"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn identities_mode_writes_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config(dir.path(), "mode = identities\n[identities]\nseed = 3\n", &[]);
    assert!(out.status.success());
    let (h, rows) = table(&dir.path().join("out/identities.csv"));
    assert_eq!(h[0], "check");
    assert!(rows.iter().all(|r| r.last().unwrap() == "true"));
}
