use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn qpep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpep"))
        .args(args)
        .env_remove("QPEP_MAX_QUBITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn single_h2_roster_row() {
    let dir = tempfile::tempdir().unwrap();
    let roster = write_temp(&dir, "h2.txt", "hydrogen H2\n");
    let out = qpep(&["resources", "--roster", &roster]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "label,formula,basis,space,qubits,electrons,ansatz,naive,optimized,kupccgsd,depth");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..6], ["hydrogen", "H2", "STO-3G", "full", "4", "2"]);
}

#[test]
fn csv_and_json_reports_agree() {
    let csv = stdout(&qpep(&["resources", "--active-space"]));
    let json: Value = serde_json::from_str(&stdout(&qpep(&["resources", "--active-space", "--format", "json"]))).unwrap();
    assert_eq!(json["schema_version"], 1);
    let rows = json["rows"].as_array().unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let body: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), body.len());
    assert_eq!(rows.len(), 20);
    for (row, line) in rows.iter().zip(body) {
        for (key, cell) in header.iter().zip(line.split(',')) {
            let value = &row[*key];
            let rendered = value.as_str().map(str::to_string).unwrap_or_else(|| value.to_string());
            assert_eq!(rendered, cell, "column {key}");
        }
    }
    let qubits: Vec<u64> = rows.iter().map(|r| r["qubits"].as_u64().unwrap()).collect();
    assert_eq!(qubits.iter().min(), Some(&88));
    assert_eq!(qubits.iter().max(), Some(&276));
}

#[test]
fn unknown_element_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let roster = write_temp(&dir, "bad.txt", "water H2O\nodd H2Xq\n");
    let out = qpep(&["resources", "--roster", &roster]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn element_missing_from_basis_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let roster = write_temp(&dir, "kr.txt", "water H2O\nkrypton Kr\n");
    let out = qpep(&["resources", "--roster", &roster]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("row 2 (krypton)"), "{}", stderr(&out));
}

#[test]
fn vqe_on_h2_reaches_the_exact_energy() {
    let file = data("h2_sto3g_0.7414.fcidump");
    let out = qpep(&["vqe", file.to_str().unwrap(), "--fci"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["width"], 4);
    assert!(report["gap"].as_f64().unwrap().abs() <= 1.6e-3);
    assert!(report["converged"].as_bool().unwrap());
}

#[test]
fn tapering_narrows_the_register() {
    let file = data("h2_sto3g_0.7414.fcidump");
    let out = qpep(&["vqe", file.to_str().unwrap(), "--taper", "--fci", "--ansatz", "kupccgsd"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["width"].as_u64().unwrap() < 4);
    assert!(report["gap"].as_f64().unwrap().abs() <= 1.6e-3);
}

#[test]
fn vqe_output_is_deterministic() {
    let file = data("heh+_sto3g_0.772.fcidump");
    let args = ["vqe", file.to_str().unwrap(), "--optimizer", "spsa", "--max-iter", "300", "--seed", "7"];
    let (a, b) = (qpep(&args), qpep(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_fcidump_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.fcidump", "&FCI NORB=2,NELEC=2,\n&END\n0.5 1 1 1 1\n0.25 1 x 0 0\n");
    let out = qpep(&["vqe", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn width_cap_is_a_domain_error() {
    let file = data("lih_sto3g_1.595.fcidump");
    let out = qpep(&["vqe", file.to_str().unwrap(), "--max-qubits", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("--taper"), "{}", stderr(&out));

    let out = Command::new(env!("CARGO_BIN_EXE_qpep"))
        .args(["vqe", file.to_str().unwrap()])
        .env("QPEP_MAX_QUBITS", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn taper_prints_generators_and_operator() {
    let file = data("h2_sto3g_0.7414.fcidump");
    let out = qpep(&["taper", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("# original qubits: 4\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("# generator:")).count(), 3);
    let op: qpep::encoding::QubitOperator = text.parse().unwrap();
    assert_eq!(op.n_qubits(), 1);
}

#[test]
fn taper_rejects_a_bad_sector() {
    let file = data("h2_sto3g_0.7414.fcidump");
    let out = qpep(&["taper", file.to_str().unwrap(), "--sector", "1,2,1"]);
    assert_ne!(out.status.code(), Some(0));
}

fn scan_text(unit: &str, points: &[(f64, f64)]) -> String {
    let mut s = format!("# unit: {unit}\nangle_rad,energy\n");
    for (a, e) in points {
        s.push_str(&format!("{a},{e}\n"));
    }
    s
}

#[test]
fn threefold_torsion_is_recovered() {
    use std::f64::consts::PI;
    let points: Vec<(f64, f64)> = (0..24)
        .map(|i| {
            let w = -PI + 2.0 * PI * i as f64 / 24.0;
            (w, 0.5 * 2.0 * (1.0 + (3.0 * w).cos()))
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let scan = write_temp(&dir, "scan.csv", &scan_text("kcal/mol", &points));
    let out = qpep(&["fit-torsion", &scan, "--n-max", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,V_n,omega_bar");
    assert_eq!(lines[3], "3,2.0000000000,0.0000000000");
    assert!(stderr(&out).starts_with("rms_residual,"));

    let target = dir.path().join("fit.csv");
    let out = qpep(&["fit-torsion", &scan, "--n-max", "3", "--output", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(target).unwrap(), text);
}

#[test]
fn two_point_scan_cannot_fit_three_terms() {
    let dir = tempfile::tempdir().unwrap();
    let scan = write_temp(&dir, "tiny.csv", &scan_text("hartree", &[(0.0, -1.0), (1.0, -0.9)]));
    let out = qpep(&["fit-torsion", &scan, "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(qpep(&["resources", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(qpep(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qpep(&["--help"]).status.code(), Some(0));
}
