use std::fs;
use std::process::{Command, Output};

use mie_scatter::scattering::AmplitudeMode;
use mie_scatter::verify::brute_force_amplitude;
use mie_scatter::model::PotentialParams;
use serde_json::Value;

fn miescat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miescat")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = miescat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    miescat(args).status.code().expect("exit code")
}

/// Header and parsed numeric rows of a CSV output.
fn csv(text: &str) -> (String, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn meta_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| l.starts_with('#')).collect()
}

#[test]
fn coulomb_phase_shift() {
    let (header, rows) = csv(&ok(&["phase-shift", "--a2", "1", "--l", "0", "--energy", "0.5"]));
    assert_eq!(header, "l,E,epsilon,A,delta_prime,delta");
    assert_eq!(rows.len(), 1);
    assert!((rows[0][5] - 0.301_640_3).abs() < 1e-7, "{:?}", rows[0]);
    assert_eq!(rows[0][3], -0.5);
}

#[test]
fn phase_shift_header_is_byte_exact() {
    let out = ok(&["phase-shift", "--energy", "0.5"]);
    assert!(out.contains("\nl,E,epsilon,A,delta_prime,delta\n"));
}

#[test]
fn free_particle_has_zero_phase_shifts() {
    let (_, rows) = csv(&ok(&["phase-shift", "--l", "0:4", "--energy", "0.1:3:5"]));
    assert_eq!(rows.len(), 25);
    for r in rows {
        assert_eq!(r[5], 0.0, "{r:?}");
    }
}

#[test]
fn rows_follow_grid_order() {
    let (_, rows) = csv(&ok(&["phase-shift", "--a2", "1", "--l", "2,0", "--energy", "2,0.3"]));
    let keys: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
    assert_eq!(keys, [(2.0, 2.0), (2.0, 0.3), (0.0, 2.0), (0.0, 0.3)]);
}

#[test]
fn empty_ranges_are_config_errors() {
    assert_eq!(code(&["bound", "--a2", "1", "--l", "3:1"]), 2);
    assert_eq!(code(&["phase-shift", "--energy", ""]), 2);
    assert_eq!(code(&["cross-section", "--energy", "1", "--lmax", "2", "--theta", "0.1:1:0"]), 2);
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(code(&["phase-shift"]), 2);
    assert_eq!(code(&["bound", "--preset", "coulomb"]), 2);
    assert_eq!(code(&["bound", "--preset", "coulomb", "--Z", "1", "--a2", "1"]), 2);
    assert_eq!(code(&["bound", "--Z", "1"]), 2);
    assert_eq!(code(&["phase-shift", "--energy", "1", "--format", "xml"]), 2);
    assert_eq!(code(&["wavefunction", "--kind", "bound", "--a2", "1", "--r", "1"]), 2);
    assert_eq!(code(&["bound", "--a2", "1", "--config", "/nonexistent/file"]), 2);
}

#[test]
fn domain_errors_exit_3_and_name_the_point() {
    let out = miescat(&["phase-shift", "--a2", "1", "--l", "0", "--energy", "0.5,-1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("l = 0, E = -1"), "{err}");

    let out = miescat(&["phase-shift", "--a1", "1", "--l", "0:1", "--energy", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("l = 0"));

    assert_eq!(code(&["bound", "--a2", "-1", "--nmax", "1"]), 3);
    assert_eq!(code(&["cross-section", "--a2", "1", "--energy", "0.5", "--lmax", "2", "--theta", "0"]), 3);
    assert_eq!(code(&["wavefunction", "--kind", "bound", "--a2", "1", "--n", "0", "--r", "1,-1"]), 3);
}

#[test]
fn hydrogen_bound_energies() {
    let text = ok(&["bound", "--preset", "coulomb", "--Z", "1", "--nmax", "1", "--lmax", "1"]);
    assert!(meta_lines(&text).contains(&"# measure: dr"));
    let (header, rows) = csv(&text);
    assert_eq!(header, "n,l,E,Nprime_scale");
    // n <= 1, l <= 1 is four levels; the lowest three are the n + l <= 1 shell
    let e: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    assert_eq!(&e[..3], &[-0.5, -0.125, -0.125]);
    assert!((e[3] + 1.0 / 18.0).abs() < 1e-15);
    assert_eq!((rows[1][0], rows[1][1]), (1.0, 0.0));
    assert_eq!((rows[2][0], rows[2][1]), (0.0, 1.0));
}

#[test]
fn inverse_square_term_splits_the_doublet() {
    let (_, rows) = csv(&ok(&["bound", "--a1", "0.01", "--a2", "1", "--nmax", "1", "--lmax", "1"]));
    let (e10, e01) = (rows[1][2], rows[2][2]);
    assert!(e10 < e01 && e01 - e10 > 1e-4, "{e10} {e01}");
    for w in rows.windows(2) {
        assert!(w[0][2] <= w[1][2]);
    }
}

#[test]
fn zero_potential_cross_section_vanishes() {
    let text = ok(&["cross-section", "--energy", "0.5", "--lmax", "6", "--theta", "0.1:3.1:7"]);
    let meta = meta_lines(&text).join("\n");
    assert!(meta.contains("# lmax: 6") && meta.contains("# mode: standard"));
    assert!(meta.contains("# truncation:"));
    let (header, rows) = csv(&text);
    assert_eq!(header, "theta,ReF,ImF,dcs");
    assert!(rows.iter().all(|r| r[3] == 0.0));
}

#[test]
fn paper_literal_s_wave_is_isotropic() {
    let (_, rows) = csv(&ok(&[
        "cross-section", "--a2", "1", "--energy", "2", "--lmax", "0", "--theta", "0.2,1,3",
        "--mode", "paper-literal",
    ]));
    // k² = 4
    for r in rows {
        assert!((r[3] - 1.0 / 16.0).abs() < 1e-16, "{r:?}");
    }
}

#[test]
fn cross_section_matches_term_by_term_sum() {
    let p = PotentialParams::new(0.1, 1.0, 0.0).unwrap();
    for (mode, name) in [(AmplitudeMode::Standard, "standard"), (AmplitudeMode::PaperLiteral, "paper-literal")] {
        let (_, rows) = csv(&ok(&[
            "cross-section", "--a1", "0.1", "--a2", "1", "--energy", "0.5", "--lmax", "12",
            "--theta", "0.3:3:5", "--mode", name,
        ]));
        for r in rows {
            let (f, scale) = brute_force_amplitude(&p, 0.5, r[0], 12, mode).unwrap();
            assert!((r[1] - f.re).abs() <= 1e-13 * scale && (r[2] - f.im).abs() <= 1e-13 * scale);
        }
    }
}

#[test]
fn degrees_convert_at_the_boundary() {
    let common = ["cross-section", "--a2", "1", "--energy", "0.5", "--lmax", "5"];
    let deg = ok(&[&common[..], &["--theta", "90", "--degrees"]].concat());
    let rad = ok(&[&common[..], &["--theta", &std::f64::consts::FRAC_PI_2.to_string()]].concat());
    let (_, d) = csv(&deg);
    let (_, r) = csv(&rad);
    assert_eq!(d[0][0], 90.0);
    assert!((d[0][3] - r[0][3]).abs() < 1e-14 * r[0][3]);
}

#[test]
fn bound_1s_wavefunction() {
    let r_grid = "0.05,0.5,1,2.5,7";
    let (header, rows) = csv(&ok(&["wavefunction", "--kind", "bound", "--a2", "1", "--n", "0", "--r", r_grid]));
    assert_eq!(header, "r,R");
    for row in rows {
        let exact = 2.0 * row[0] * (-row[0]).exp();
        assert!((row[1] - exact).abs() < 1e-14, "{row:?}");
    }
}

#[test]
fn scattering_wavefunction_is_real_and_echoes_the_grid() {
    let r_grid = "0.1,0.3,1.7,12.25,40";
    let (header, rows) = csv(&ok(&[
        "wavefunction", "--kind", "scattering", "--a1", "0.1", "--a2", "1", "--l", "1", "--energy", "0.5",
        "--r", r_grid,
    ]));
    assert_eq!(header, "r,ReR,ImR");
    let r: Vec<f64> = rows.iter().map(|x| x[0]).collect();
    let configured: Vec<f64> = r_grid.split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(r, configured);
    let max = rows.iter().map(|x| x[1].abs()).fold(0.0, f64::max);
    for x in &rows {
        assert!(x[2].abs() < 1e-9 * max, "{x:?}");
    }
}

#[test]
fn json_output() {
    let text = ok(&["phase-shift", "--a2", "1", "--l", "0,1", "--energy", "0.5", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["command"], "phase-shift");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["l", "E", "epsilon", "A", "delta_prime", "delta"]);
    assert!((rows[0]["delta"].as_f64().unwrap() - 0.301_640_320_467_533_2).abs() < 1e-15);
}

#[test]
fn output_is_deterministic() {
    let args = ["phase-shift", "--a1", "-0.5", "--a2", "2", "--l", "0:2", "--energy", "0.3:2:9"];
    assert_eq!(ok(&args), ok(&args));
    let json = [&args[..], &["--format", "json"]].concat();
    assert_eq!(ok(&json), ok(&json));
    assert!(!ok(&args).contains("timestamp"));
    assert!(ok(&[&args[..], &["--timestamp"]].concat()).contains("# timestamp: "));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.csv");
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["bound", "--a2", "1", "--nmax", "2", "--out", p]), "");
    assert_eq!(fs::read_to_string(&path).unwrap(), ok(&["bound", "--a2", "1", "--nmax", "2"]));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, "# hydrogen-like\npreset = coulomb\nZ = 2\nnmax = 0\nlmax = 0\n").unwrap();
    let p = path.to_str().unwrap();
    let (_, rows) = csv(&ok(&["bound", "--config", p]));
    assert_eq!(rows[0][2], -2.0);
    let (_, rows) = csv(&ok(&["bound", "--config", p, "--Z", "3"]));
    assert_eq!(rows[0][2], -4.5);

    fs::write(&path, "theta = 1\n").unwrap();
    assert_eq!(code(&["bound", "--config", p]), 2);
    fs::write(&path, "energy = 0.5\nformat = json\n").unwrap();
    let v: Value = serde_json::from_str(&ok(&["phase-shift", "--config", p])).unwrap();
    assert_eq!(v["rows"][0]["E"].as_f64(), Some(0.5));
}

#[test]
fn verify_single_suite() {
    let text = ok(&["verify", "--only", "specfun"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["suite"] == "specfun" && r["pass"] == true));
    assert_eq!(v["meta"]["failed"], 0);
}

#[test]
fn verify_full_suite_passes() {
    let out = miescat(&["verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# failed: 0"));
    let suites = ["specfun", "model", "scattering", "bound", "oracle"];
    for s in suites {
        assert!(text.lines().any(|l| l.starts_with(&format!("{s},"))), "{s}");
    }
}

#[test]
fn verify_catches_the_wrong_root() {
    let out = miescat(&["verify", "--only", "scattering", "--root", "irregular"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&Value> = v["rows"].as_array().unwrap().iter().filter(|r| r["pass"] == false).collect();
    assert!(failed.iter().any(|r| r["quantity_name"].as_str().unwrap().contains("arg Γ(ℓ+1")));
}
