use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dgsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = dgsp(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    dgsp(args).status.code().expect("exit code")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_graph(dir: &TempDir, name: &str, gen: &[&str]) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["gen"];
    args.extend_from_slice(gen);
    fs::write(&path, ok(&args)).unwrap();
    path
}

#[test]
fn gen_cycle_edge_list() {
    let csv = ok(&["gen", "cycle", "--n", "4"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "src,dst,weight");
    assert_eq!(&lines[1..], ["0,1,1", "1,2,1", "2,3,1", "3,0,1"]);
}

#[test]
fn gen_perturbed_is_seeded() {
    let a = ok(&["--seed", "3", "gen", "perturbed-cycle", "--n", "15"]);
    let b = ok(&["--seed", "3", "gen", "perturbed-cycle", "--n", "15"]);
    let c = ok(&["--seed", "4", "gen", "perturbed-cycle", "--n", "15"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn analyze_reports_cycle_metrics() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "c.csv", &["cycle", "--n", "6"]);
    let spec = dir.path().join("spec.csv");
    let basis = dir.path().join("basis");
    let report: Value = serde_json::from_str(&ok(&[
        "analyze",
        p(&g),
        "--spectrum",
        p(&spec),
        "--dump-basis",
        p(&basis),
    ]))
    .unwrap();
    assert_eq!(report["n"], 6);
    assert!(report["dc_mode"].as_bool().unwrap());
    assert!((report["kappa"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(report["henrici"].as_f64().unwrap() < 1e-9);

    let lambdas = dgsp::io::read_spectrum(fs::File::open(&spec).unwrap()).unwrap();
    assert_eq!(lambdas.len(), 6);
    assert!(lambdas[0].norm() < 1e-12);
    let v = dgsp::io::read_matrix(fs::File::open(basis.join("V.csv")).unwrap()).unwrap();
    assert_eq!(v.shape(), (6, 6));
    assert!(basis.join("U.csv").exists());
}

#[test]
fn analyze_csv_format_prints_spectrum() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "c.csv", &["cycle", "--n", "4"]);
    let csv = ok(&["--format", "csv", "analyze", p(&g)]);
    assert!(csv.starts_with("k,re_lambda,im_lambda,abs_lambda"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn gft_round_trip_and_filter() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "g.csv", &["perturbed-cycle", "--n", "10"]);
    let x = dir.path().join("x.csv");
    let mut s = String::from("vertex,re,im\n");
    for i in 0..10 {
        s.push_str(&format!("{i},{},{}\n", (i as f64).sin(), 0.1 * i as f64));
    }
    fs::write(&x, &s).unwrap();

    let xhat = dir.path().join("xhat.csv");
    ok(&["--out", p(&xhat), "gft", p(&g), p(&x)]);
    let back = dir.path().join("back.csv");
    ok(&[
        "--out",
        p(&back),
        "gft",
        p(&g),
        p(&xhat),
        "--direction",
        "inverse",
    ]);
    let a = dgsp::io::read_signal(fs::File::open(&x).unwrap()).unwrap();
    let b = dgsp::io::read_signal(fs::File::open(&back).unwrap()).unwrap();
    assert!((a - b).norm() < 1e-8);

    let identity = dir.path().join("id.json");
    let response: Vec<[f64; 2]> = vec![[1.0, 0.0]; 10];
    fs::write(
        &identity,
        serde_json::json!({"kind": "diagonal", "response": response}).to_string(),
    )
    .unwrap();
    let y = dir.path().join("y.csv");
    ok(&["--out", p(&y), "filter", p(&g), p(&x), p(&identity)]);
    let a = dgsp::io::read_signal(fs::File::open(&x).unwrap()).unwrap();
    let y = dgsp::io::read_signal(fs::File::open(&y).unwrap()).unwrap();
    assert!((a - y).norm() < 1e-8);

    let lowpass = dir.path().join("lp.json");
    fs::write(&lowpass, r#"{"kind": "ideal", "omega": [0, 1, 2]}"#).unwrap();
    ok(&["filter", p(&g), p(&x), p(&lowpass)]);
}

#[test]
fn sample_plan_and_recovery() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "c.csv", &["cycle", "--n", "8"]);
    let plan: Value =
        serde_json::from_str(&ok(&["sample", p(&g), "--k", "2", "--m", "2"])).unwrap();
    assert_eq!(plan["sample_set"], serde_json::json!([0, 4]));
    assert!(plan["gamma"].as_f64().unwrap() > 0.0);
    assert!(plan["certificate"].as_f64().is_some());

    // constant signal is bandlimited to the DC mode
    let x = dir.path().join("x.csv");
    let mut s = String::from("vertex,re,im\n");
    for i in 0..8 {
        s.push_str(&format!("{i},2,0\n"));
    }
    fs::write(&x, &s).unwrap();
    let rec = dir.path().join("rec.csv");
    ok(&[
        "sample",
        p(&g),
        "--k",
        "1",
        "--vertices",
        "3",
        "--signal",
        p(&x),
        "--recovered",
        p(&rec),
    ]);
    let r = dgsp::io::read_signal(fs::File::open(&rec).unwrap()).unwrap();
    assert!(r
        .iter()
        .all(|z| (z.re - 2.0).abs() < 1e-10 && z.im.abs() < 1e-10));

    let random: Value = serde_json::from_str(&ok(&[
        "--seed",
        "5",
        "sample",
        p(&g),
        "--k",
        "2",
        "--m",
        "3",
        "--strategy",
        "random",
    ]))
    .unwrap();
    assert_eq!(random["sample_set"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "c.csv", &["cycle", "--n", "6"]);

    assert_eq!(code(&["gen", "cycle", "--n", "1"]), 1);
    assert_eq!(code(&["gen", "frobnicate"]), 2);

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "src,dst,weight\n0,1,abc\n").unwrap();
    assert_eq!(code(&["analyze", p(&bad)]), 3);

    let short = dir.path().join("short.csv");
    fs::write(&short, "vertex,re,im\n0,1,0\n1,1,0\n").unwrap();
    assert_eq!(code(&["gft", p(&g), p(&short)]), 4);

    // sampling fewer vertices than the band size: B has rank < K
    assert_eq!(
        code(&[
            "sample",
            p(&g),
            "--k",
            "3",
            "--vertices",
            "0,1",
            "--signal",
            p(&short)
        ]),
        5
    );

    // a directed path is a single Jordan block
    let path = dir.path().join("path.csv");
    fs::write(&path, "src,dst,weight\n0,1,1\n1,2,1\n2,3,1\n").unwrap();
    assert_eq!(code(&["analyze", p(&path)]), 6);

    assert_eq!(code(&["analyze", p(&dir.path().join("missing.csv"))]), 7);
}

#[test]
fn experiments_write_expected_files_deterministically() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        ok(&["--out", p(out), "experiment", "fig1"]);
        ok(&["--out", p(out), "experiment", "fig2", "--trials", "20"]);
    }
    for f in [
        "fig1_cycle_spectrum.csv",
        "fig1_perturbed_spectrum.csv",
        "fig1_metrics.json",
        "fig2_sweep.csv",
        "fig2_summary.csv",
        "fig2_bundle.json",
    ] {
        let x = fs::read(a.join(f)).unwrap();
        assert!(!x.is_empty(), "{f} empty");
        assert_eq!(x, fs::read(b.join(f)).unwrap(), "{f} differs between runs");
    }

    let rows = dgsp::io::read_sweep(fs::File::open(a.join("fig2_sweep.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 2 * 6 * 20);
    assert!(rows.iter().all(|r| r.err_l2 <= r.bound * (1.0 + 1e-9)));

    let bundle: Value =
        serde_json::from_slice(&fs::read(a.join("fig2_bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle["provenance"]["config"]["seed"], 7);
}

#[test]
fn experiment_config_file_and_overrides() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"n": 12, "k": 3, "trials": 5, "sigmas": [0.1, 0.2]}"#,
    )
    .unwrap();
    let summary = ok(&["--format", "csv", "experiment", "fig2", "--config", p(&cfg)]);
    assert_eq!(summary.lines().count(), 1 + 2 * 2);

    fs::write(&cfg, r#"{"n": 12, "bogus": 1}"#).unwrap();
    assert_eq!(code(&["experiment", "fig2", "--config", p(&cfg)]), 3);
    assert_eq!(code(&["experiment", "fig2", "--sigmas", "0.2,0.1"]), 1);
}
