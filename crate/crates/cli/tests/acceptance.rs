//! End-to-end acceptance suite. One PASS/FAIL line per criterion; exits
//! nonzero when any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use vortexq::geometry::{build_torus, Spectral, TorusSpec};
use vortexq::hilbert::{hilbert_dim, max_h1};
use vortexq::modulimetric::{omega_deformation, omega_fiberint, volume_d1, MetricOptions};
use vortexq::obstruct::{chern_root_oracle, proj_flat_test};
use vortexq::symcoh::{exact_level, kahler_class_at, metaplectic_check, pair_d1, prequantum_class_check_at};
use vortexq::vortexpde::{solve_vortex, DivisorSpec, QuantizationSpec};
use vortexq::zetadet::{certified_lattice_sum, zeta_prime_zero, zeta_value};

type Verdict = Result<String, String>;

fn check(cond: bool, msg: String) -> Verdict {
    if cond {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn square(n: usize) -> TorusSpec {
    build_torus(Complex64::new(0.0, 1.0), 1.0, n).unwrap()
}

fn vortexq(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_vortexq"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn vortex_identities() -> Verdict {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let t = square(128);
    let q = QuantizationSpec::new(1, 1, 8.0 * PI, 1.0).unwrap();
    let div = DivisorSpec::simple(&t, &[Complex64::new(0.3, 0.4)]).unwrap();
    let start = Instant::now();
    let sol = pool
        .install(|| solve_vortex(&t, &q, &div, 1e-10))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let l2 = (sol.higgs_l2 - 4.0 * PI).abs() / (4.0 * PI);
    let flux = (sol.flux - 2.0 * PI).abs() / (2.0 * PI);
    check(
        l2 <= 1e-6 && flux <= 1e-6 && elapsed <= Duration::from_secs(10),
        format!(
            "rel err |φ|² {l2:.2e}, flux {flux:.2e}, {:.2} s on one thread",
            elapsed.as_secs_f64()
        ),
    )
}

fn bradlow_gate() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for tau in [4.0 * PI, 4.0 * PI - 0.01] {
        let tau_s = format!("{tau:.17e}");
        let (code, stdout) = vortexq(&[
            "solve",
            "--tau",
            &tau_s,
            "--volume",
            "1",
            "--d",
            "1",
            "--resolution",
            "32",
        ]);
        let v: Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
        let pass = code == Some(2) && v["status"] == "domain_error" && v["error"]["kind"] == "bradlow";
        ok &= pass;
        notes.push(format!("τ = {tau:.6}: exit {code:?}, kind {}", v["error"]["kind"]));
    }
    check(ok, notes.join("; "))
}

fn moduli_volume() -> Verdict {
    let t = square(64);
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for tau in [6.0 * PI, 8.0 * PI] {
        let q = QuantizationSpec::new(1, 1, tau, 1.0).unwrap();
        let (vol, _) = volume_d1(&t, &q, 8, &MetricOptions::default()).map_err(|e| e.to_string())?;
        let class = kahler_class_at(1, 1, &exact_level(&q)).map_err(|e| e.to_string())?;
        let oracle = 2.0 * PI * pair_d1(&class).map_err(|e| e.to_string())?.to_f64().unwrap();
        let rel = (vol - oracle).abs() / oracle;
        let target_rel = (oracle - tau / 2.0).abs() / (tau / 2.0);
        ok &= rel <= 1e-2 && target_rel <= 1e-12;
        notes.push(format!(
            "τ = {:.0}π: vol {vol:.6} vs {oracle:.6} (rel {rel:.1e})",
            tau / PI
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed <= Duration::from_secs(600);
    notes.push(format!("{:.1} s", elapsed.as_secs_f64()));
    check(ok, notes.join("; "))
}

fn random_divisor(rng: &mut StdRng, t: &TorusSpec, d: usize) -> DivisorSpec {
    loop {
        let pts: Vec<Complex64> = (0..d)
            .map(|_| t.to_physical(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect();
        let separated = pts
            .iter()
            .enumerate()
            .all(|(i, &p)| pts[..i].iter().all(|&q| t.distance(p, q) > 0.15));
        if separated {
            return DivisorSpec::simple(t, &pts).unwrap();
        }
    }
}

fn route_equivalence() -> Verdict {
    let t = square(64);
    let sp = Spectral::new(&t);
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let opts = MetricOptions::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (d, tau, n) in [(1u32, 8.0 * PI, 5), (2, 12.0 * PI, 3)] {
        let q = QuantizationSpec::new(1, d, tau, 1.0).unwrap();
        for _ in 0..n {
            let div = random_divisor(&mut rng, &t, d as usize);
            let a = omega_deformation(&sp, &q, &div, &opts).map_err(|e| e.to_string())?;
            let b = omega_fiberint(&sp, &q, &div, &opts).map_err(|e| e.to_string())?;
            worst = worst.max(a.relative_distance(&b));
            count += 1;
        }
    }
    check(
        worst <= 1e-2,
        format!("{count} points, worst relative distance {worst:.2e}"),
    )
}

fn dimension_suite() -> Verdict {
    // Pascal's triangle as the independent reference
    let mut pascal = vec![vec![BigUint::from(1u32)]];
    for n in 1..=12usize {
        let prev = &pascal[n - 1];
        let row: Vec<BigUint> = (0..=n)
            .map(|k| {
                let left = if k > 0 {
                    prev[k - 1].clone()
                } else {
                    BigUint::from(0u32)
                };
                let right = prev.get(k).cloned().unwrap_or_default();
                left + right
            })
            .collect();
        pascal.push(row);
    }
    let mut cases = 0;
    for g in [0u64, 1, 2, 5] {
        for k in 2..=12u64 {
            for d in 1..k {
                let r = hilbert_dim(g, d, k, 0).map_err(|e| e.to_string())?;
                if r.dim != pascal[k as usize][d as usize] || r.jumped {
                    return Err(format!(
                        "g = {g}, d = {d}, k = {k}: {} vs {}",
                        r.dim, pascal[k as usize][d as usize]
                    ));
                }
                cases += 1;
            }
        }
    }
    let top = hilbert_dim(3, 1, 2, 1).map_err(|e| e.to_string())?;
    let ok = top.dim == BigUint::from(3u32)
        && top.generic_dim == BigUint::from(2u32)
        && max_h1(3, 2) == 1
        && hilbert_dim(3, 1, 2, 2).is_err();
    check(
        ok,
        format!(
            "{cases} generic cases exact; top jump (3, 2, 1): {} vs generic {}",
            top.dim, top.generic_dim
        ),
    )
}

fn metaplectic_suite() -> Verdict {
    let mut admitting = Vec::new();
    for g in 0..=8u32 {
        for d in 1..=8u32 {
            let m = metaplectic_check(g, d);
            if !m.consistent() {
                return Err(format!("verdicts disagree at g = {g}, d = {d}"));
            }
            if m.admits() != (d == 1 || (g == 0 && d % 2 == 1)) {
                return Err(format!("unexpected verdict at g = {g}, d = {d}"));
            }
            if m.admits() {
                admitting.push((g, d));
            }
        }
    }
    check(
        admitting.len() == 12,
        format!("81 pairs consistent, {} admitting", admitting.len()),
    )
}

fn obstruction_suite() -> Verdict {
    let mut cases = 0;
    for g in 2..=4u64 {
        for k in g..=12 {
            for d in g..=k {
                let r = proj_flat_test(g, k, d).map_err(|e| e.to_string())?;
                if r.flat_possible != (k == d) || !r.matches_closed_form {
                    return Err(format!("g = {g}, k = {k}, d = {d}: obstruction {}", r.obstruction));
                }
                cases += 1;
            }
        }
    }
    let mut oracle = 0;
    for r in 1..=6 {
        for d in 1..=r {
            if !chern_root_oracle(r, d).equal() {
                return Err(format!("Chern-root oracle differs at r = {r}, d = {d}"));
            }
            oracle += 1;
        }
    }
    check(
        true,
        format!("{cases} triples, vanishing iff k = d; {oracle} oracle comparisons"),
    )
}

fn prequantum_suite() -> Verdict {
    let mut cases = 0;
    for g in 0..=20u32 {
        for k in 2..=40i64 {
            for d in 1..k as u32 {
                let r = prequantum_class_check_at(g, d, k).map_err(|e| format!("g = {g}, d = {d}, k = {k}: {e}"))?;
                if r.lhs != r.rhs {
                    return Err(format!("g = {g}, d = {d}, k = {k}: {} vs {}", r.lhs, r.rhs));
                }
                cases += 1;
            }
        }
    }
    check(true, format!("{cases} (g, d, k) triples exact"))
}

fn zeta_suite() -> Verdict {
    let moduli = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(0.5, 3f64.sqrt() / 2.0),
    ];
    let mut zero_err: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut modular: f64 = 0.0;
    let mut lattice: f64 = 0.0;
    let mut bound: f64 = 0.0;
    for w in moduli {
        let t = build_torus(w, 1.0, 32).unwrap();
        let r = zeta_prime_zero(&t).map_err(|e| e.to_string())?;
        zero_err = zero_err
            .max((r.mellin.zeta_zero + 1.0).abs())
            .max((r.cutoff.zeta_zero + 1.0).abs());
        spread = spread.max((r.mellin.zeta_prime_zero - r.cutoff.zeta_prime_zero).abs());
        let s = zeta_prime_zero(&build_torus(-1.0 / w, 1.0, 32).unwrap()).map_err(|e| e.to_string())?;
        modular = modular.max((r.zeta_prime_zero - s.zeta_prime_zero).abs());

        // shells doubled until the certified tail is below 1e-10
        let mut shells = 6000;
        let mut c = certified_lattice_sum(&t, 2.0, shells);
        while c.tail_bound > 1e-10 && shells < 48_000 {
            shells *= 2;
            c = certified_lattice_sum(&t, 2.0, shells);
        }
        let z = zeta_value(&t, 2.0).map_err(|e| e.to_string())?;
        // the partial sum is a lower bound, the tail bound an upper margin
        let miss = if z < c.value {
            c.value - z
        } else {
            (z - c.value - c.tail_bound).max(0.0)
        };
        lattice = lattice.max(miss.max(c.tail_bound));
        bound = bound.max(c.tail_bound);
    }
    check(
        zero_err <= 1e-8 && spread <= 1e-8 && lattice <= 1e-10 && modular <= 1e-8,
        format!(
            "|ζ(0)+1| {zero_err:.1e}, route spread {spread:.1e}, ζ(2) vs certified sum {lattice:.1e} (tail {bound:.1e}), modular {modular:.1e}"
        ),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("solve.cfg");
    std::fs::write(&cfg, "k = 2\nvolume = 1\nd = 1\nresolution = 32\npoints = 0.3,0.4\n").unwrap();
    let cfg = cfg.to_str().unwrap().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve", "--config", &cfg],
        vec!["solve", "--config", &cfg, "--format", "csv"],
        vec!["metric", "--k", "3", "--d", "2", "--resolution", "32"],
        vec!["classes", "--g", "3", "--d", "2", "--k", "7"],
        vec![
            "zeta",
            "--modulus",
            "0.3,1.1",
            "--volume",
            "2",
            "--spectrum_cutoff",
            "200",
        ],
        vec![
            "sweep",
            "--what",
            "obstruction",
            "--g_min",
            "2",
            "--g_max",
            "3",
            "--format",
            "csv",
        ],
        vec!["dims", "--g", "2", "--d", "2", "--k", "2"],
    ];
    let mut identical = 0;
    for (i, args) in runs.iter().enumerate() {
        let mut bytes = Vec::new();
        // same output path both times: it is part of the embedded config
        let path = dir.path().join(format!("r{i}"));
        for _ in 0..2 {
            let mut full = args.clone();
            let p = path.to_str().unwrap().to_string();
            full.extend(["--output", &p]);
            let (code, _) = vortexq(&full);
            if !matches!(code, Some(0) | Some(2)) {
                return Err(format!("{args:?} exited {code:?}"));
            }
            bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if bytes[0] != bytes[1] || bytes[0].is_empty() {
            return Err(format!("{args:?} differs between runs"));
        }
        identical += 1;
    }
    // stdout and file output carry the same bytes
    let (_, stdout) = vortexq(&[
        "solve",
        "--config",
        &cfg,
        "--output",
        dir.path().join("x").to_str().unwrap(),
    ]);
    let (_, direct) = vortexq(&["solve", "--config", &cfg]);
    let file = std::fs::read(dir.path().join("x")).unwrap();
    let same_config = {
        let mut a: Value = serde_json::from_slice(&file).unwrap();
        a["config"].as_object_mut().unwrap().remove("output");
        let b: Value = serde_json::from_slice(&direct).unwrap();
        a == b
    };
    check(
        identical == runs.len() && stdout.is_empty() && same_config,
        format!("{identical} configurations byte-identical across repeated runs"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("vortex identities", vortex_identities),
        ("Bradlow gate", bradlow_gate),
        ("moduli volume", moduli_volume),
        ("route equivalence", route_equivalence),
        ("dimension suite", dimension_suite),
        ("metaplectic suite", metaplectic_suite),
        ("obstruction suite", obstruction_suite),
        ("prequantum class identity", prequantum_suite),
        ("zeta suite", zeta_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.1} s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
