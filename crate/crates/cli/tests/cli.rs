use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn vortexq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vortexq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| v.to_string().parse().unwrap())
}

#[test]
fn solve_example_gives_unit_flux_quantum() {
    let out = vortexq(&[
        "solve",
        "--tau",
        "25.1327",
        "--volume",
        "1",
        "--d",
        "1",
        "--resolution",
        "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    let flux = f(&v["result"]["flux"]);
    assert!((flux - 2.0 * PI).abs() <= 1e-6 * 2.0 * PI, "{flux}");
    // τ given to six digits: |φ|² integrates to τV − 4π, not 4π
    let l2 = f(&v["result"]["higgs_l2"]);
    assert!((l2 - (25.1327 - 4.0 * PI)).abs() <= 1e-6 * 25.1327, "{l2}");
    assert_eq!(v["config"]["resolution"], 128);
    assert_eq!(v["version"], vortexq::VERSION);
}

#[test]
fn dims_examples() {
    let out = vortexq(&["dims", "--g", "2", "--d", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["dim"], 3);

    let out = vortexq(&["dims", "--g", "2", "--d", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "domain_error");
    assert_eq!(v["error"]["kind"], "bradlow");
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn top_jump_and_bad_jump() {
    let v = json(&vortexq(&["dims", "--g", "3", "--d", "1", "--k", "2", "--h1", "1"]));
    assert_eq!(v["result"]["dim"], 3);
    assert_eq!(v["result"]["generic_dim"], 2);
    assert_eq!(v["result"]["jump_stratum"]["unique_top_jump"], true);
    let out = vortexq(&["dims", "--g", "3", "--d", "1", "--k", "2", "--h1", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "hypothesis");
}

#[test]
fn config_errors_exit_three_and_name_the_key() {
    for (args, key) in [
        (
            vec!["dims", "--g", "2", "--d", "2", "--k", "3", "--genus", "1"],
            "genus",
        ),
        (vec!["solve", "--tau", "30", "--resolution", "100"], "resolution"),
        (vec!["solve", "--tau", "-3"], "tau"),
        (vec!["solve", "--tau", "30", "--k", "3"], "k"),
        (vec!["solve", "--volume", "2"], "tau"),
        (vec!["dims", "--g", "2", "--d", "1"], "k"),
        (vec!["zeta", "--t", "1"], "t"),
        (vec!["zeta", "--modulus", "0.2"], "modulus"),
        (vec!["sweep", "--what", "dims", "--g_min", "3", "--g_max", "2"], "g_max"),
        (vec!["metric", "--k", "3", "--d", "2", "--points", "0.1,0.1"], "points"),
        (
            vec!["dims", "--g", "2", "--d", "2", "--k", "3", "--format", "xml"],
            "format",
        ),
    ] {
        let out = vortexq(&args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(&format!("[{key}]")), "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# dimension query\ng = 2\nd = 2   # two vortices\nk = 9\n").unwrap();
    let path = cfg.to_str().unwrap();
    let v = json(&vortexq(&["dims", "--config", path]));
    assert_eq!(v["result"]["dim"], 36);
    let v = json(&vortexq(&["dims", "--config", path, "--k", "3"]));
    assert_eq!(v["result"]["dim"], 3);
    assert_eq!(v["config"]["k"], 3);

    std::fs::write(&cfg, "g = 2\nd = 2\nk = 3\nlevel = 4\n").unwrap();
    let out = vortexq(&["dims", "--config", path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[level]"));

    let out = vortexq(&["dims", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[config]"));
}

#[test]
fn classes_reports_weil_failure_as_domain_answer() {
    let out = vortexq(&["classes", "--g", "1", "--d", "1", "--tau", "30"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "weil");
    // the Kähler class is still reported
    assert!(v["result"]["kahler_class"].is_string());

    let v = json(&vortexq(&["classes", "--g", "2", "--d", "1", "--k", "3"]));
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["kahler_class"], "θ + 2η");
    assert_eq!(v["result"]["c1_pairing"], "-2");
    assert_eq!(v["result"]["prequantum"]["holds"], true);
}

#[test]
fn metaplectic_and_obstruction_reports() {
    let v = json(&vortexq(&["metaplectic", "--g", "0", "--d", "3"]));
    assert_eq!(v["result"]["admits"], true);
    let v = json(&vortexq(&["metaplectic", "--g", "2", "--d", "2"]));
    assert_eq!(v["result"]["admits"], false);
    assert_eq!(v["result"]["verdicts_agree"], true);

    let v = json(&vortexq(&["obstruction", "--g", "2", "--k", "5", "--d", "3"]));
    assert_eq!(v["result"]["flat_possible"], false);
    assert_eq!(v["result"]["bundle"]["rank"], 10);
    let v = json(&vortexq(&["obstruction", "--g", "2", "--k", "4", "--d", "4"]));
    assert_eq!(v["result"]["obstruction"], "0");
    let out = vortexq(&["obstruction", "--g", "1", "--k", "4", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "hypothesis");
}

#[test]
fn zeta_report_and_csv_sweep() {
    let v = json(&vortexq(&["zeta", "--modulus", "0,1", "--t", "2"]));
    assert!((f(&v["result"]["zeta_zero"]) + 1.0).abs() < 1e-8);
    assert!(f(&v["result"]["method_spread"]) < 1e-8);
    assert_eq!(v["result"]["zeta_at"]["rows"].as_array().unwrap().len(), 1);

    let out = vortexq(&["sweep", "--what", "zeta", "--steps", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "re,im,status,zeta_prime_zero,log_det,method_spread");
    assert_eq!(data.len(), 4);
    assert!(text.starts_with(&format!("# vortexq {} sweep", vortexq::VERSION)));
}

#[test]
fn output_file_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dims.csv");
    let out = vortexq(&[
        "sweep",
        "--what",
        "dims",
        "--g_max",
        "1",
        "--d_max",
        "3",
        "--k_max",
        "4",
        "--format",
        "csv",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "g,d,k,h1,status,dim,generic_dim,jumped");
    assert_eq!(rows.len(), 1 + 2 * 3 * 4);
    assert!(rows.contains(&"1,2,4,0,ok,6,6,false"));
    assert!(rows.contains(&"0,3,3,0,bradlow,,,"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn solve_csv_has_one_row_per_cell() {
    let out = vortexq(&["solve", "--k", "2", "--resolution", "32", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "i,j,x,y,higgs_density,curvature_density");
    assert_eq!(rows.len(), 1 + 1024);
}

#[test]
fn metric_routes_agree_through_cli() {
    let v = json(&vortexq(&[
        "metric",
        "--k",
        "2",
        "--resolution",
        "32",
        "--points",
        "0.3,0.7",
    ]));
    assert_eq!(v["status"], "ok");
    assert!(f(&v["result"]["relative_distance"]) < 1e-2);
    let samples = v["result"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 2);
    assert_eq!(samples[0]["route"], "deformation");
}

#[test]
fn resolution_below_grid_minimum_is_a_config_error() {
    let out = vortexq(&["solve", "--k", "2", "--resolution", "16"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[resolution]"));
}
