//! One function per subcommand: resolved configuration in, outcome out.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::Value as Json;

use vortexq::geometry::{build_torus, Spectral, TorusSpec};
use vortexq::hilbert::{hilbert_dim, jump_stratum, HilbertError};
use vortexq::modulimetric::{
    chart_directions, omega_deformation, omega_fiberint, volume_d1, MetricOptions, ModuliError,
};
use vortexq::obstruct::{proj_flat_test, ObstructError, ObstructionReport};
use vortexq::symcoh::{
    c1_tangent, exact_level, kahler_class, kahler_class_at, ke_check, metaplectic_check, pair_d1,
    prequantum_class_check, prequantum_class_check_at, weil_check, MetaplecticReport, SymcohError,
};
use vortexq::vortexpde::{solve_vortex_with, DivisorSpec, QuantizationSpec, SolveOptions, VortexError};
use vortexq::zetadet::{dual_lattice_eigenvalues, zeta_prime_zero_with, RouteValues, ZetaError, ZetaOptions};

use crate::config::{Resolved, Subcommand};
use crate::report::{complex, floats, int, num, rational, Obj, Outcome, Status, Table};

/// A failed step, already classified.
struct Stop(Status, &'static str, String);

type Step<T> = Result<T, Stop>;

fn internal(e: impl std::fmt::Display) -> Stop {
    Stop(Status::Internal, "internal", e.to_string())
}

fn vortex_stop(e: VortexError) -> Stop {
    match e {
        VortexError::BradlowViolation { .. } => Stop(Status::Domain, "bradlow", e.to_string()),
        VortexError::NewtonDivergence { .. } => Stop(Status::Internal, "newton_divergence", e.to_string()),
        other => internal(other),
    }
}

fn moduli_stop(e: ModuliError) -> Stop {
    match e {
        ModuliError::Vortex(v) => vortex_stop(v),
        other => internal(other),
    }
}

fn symcoh_stop(e: SymcohError) -> Stop {
    match e {
        SymcohError::BradlowViolation { .. } => Stop(Status::Domain, "bradlow", e.to_string()),
        SymcohError::NotPrequantizable { .. } => Stop(Status::Domain, "weil", e.to_string()),
        other => internal(other),
    }
}

fn hilbert_stop(e: HilbertError) -> Stop {
    match e {
        HilbertError::BradlowViolation { .. } => Stop(Status::Domain, "bradlow", e.to_string()),
        HilbertError::InvalidJump { .. } => Stop(Status::Domain, "hypothesis", e.to_string()),
        other => internal(other),
    }
}

fn obstruct_stop(e: ObstructError) -> Stop {
    Stop(Status::Domain, "hypothesis", e.to_string())
}

fn zeta_stop(e: ZetaError) -> Stop {
    match e {
        ZetaError::MethodDisagreement { .. } => Stop(Status::Internal, "method_disagreement", e.to_string()),
        other => internal(other),
    }
}

/// Run with partial results kept in `base` when a step stops.
fn finish(base: Obj, body: impl FnOnce(&mut Obj) -> Step<Option<Table>>) -> Outcome {
    let mut result = base;
    match body(&mut result) {
        Ok(table) => Outcome::ok(result, table),
        Err(Stop(status, kind, message)) => Outcome::failed(status, kind, message, result),
    }
}

pub fn dispatch(r: &Resolved) -> Outcome {
    match r.subcommand {
        Subcommand::Solve => solve(r),
        Subcommand::Metric => metric(r),
        Subcommand::Volume => volume(r),
        Subcommand::Classes => classes(r),
        Subcommand::Dims => dims(r),
        Subcommand::Metaplectic => metaplectic(r),
        Subcommand::Obstruction => obstruction(r),
        Subcommand::Zeta => zeta(r),
        Subcommand::Sweep => sweep(r),
    }
}

fn torus(r: &Resolved) -> Step<TorusSpec> {
    build_torus(r.complex("modulus"), r.float("volume"), r.int("resolution") as usize).map_err(internal)
}

fn quantization(r: &Resolved, degree: u32) -> Step<QuantizationSpec> {
    QuantizationSpec::new(1, degree, r.float("tau"), r.float("volume")).map_err(vortex_stop)
}

fn quantization_obj(q: &QuantizationSpec) -> Obj {
    Obj::new()
        .put("genus", q.genus)
        .put("degree", q.degree)
        .put("tau", num(q.tau))
        .put("volume", num(q.volume))
        .put("level", num(q.level()))
        .put("bradlow_excess", num(q.bradlow_excess()))
}

/// Given points in lattice coordinates, or `d` points spread along the
/// diagonal.
fn divisor(r: &Resolved, spec: &TorusSpec, d: u32) -> Step<DivisorSpec> {
    let lattice: Vec<(f64, f64)> = match r.points("points") {
        Some(p) => p.to_vec(),
        None => (0..d)
            .map(|j| {
                let x = (j as f64 + 0.5) / d as f64;
                (x, (x + 0.25).fract())
            })
            .collect(),
    };
    let pts: Vec<Complex64> = lattice.iter().map(|&(x, y)| spec.to_physical(x, y)).collect();
    DivisorSpec::simple(spec, &pts).map_err(vortex_stop)
}

fn divisor_json(div: &DivisorSpec) -> Json {
    Json::Array(
        div.iter()
            .map(|(p, m)| Obj::new().put("point", complex(p)).put("multiplicity", m).into())
            .collect(),
    )
}

fn rel(x: f64, target: f64) -> f64 {
    (x - target).abs() / target.abs()
}

fn solve(r: &Resolved) -> Outcome {
    let d = r.int("d") as u32;
    let q = match quantization(r, d) {
        Ok(q) => q,
        Err(Stop(s, k, m)) => return Outcome::failed(s, k, m, Obj::new()),
    };
    finish(quantization_obj(&q), |out| {
        q.check_bradlow().map_err(vortex_stop)?;
        let spec = torus(r)?;
        let div = divisor(r, &spec, d)?;
        out.set("divisor", divisor_json(&div));
        let opts = SolveOptions {
            tol: r.float("tolerance"),
            max_iter: r.int("max_iter") as usize,
            initial: None,
        };
        let sol = solve_vortex_with(&Spectral::new(&spec), &q, &div, &opts).map_err(vortex_stop)?;
        let flux_target = 2.0 * PI * d as f64;
        let l2_target = q.bradlow_excess();
        out.set("iterations", sol.iterations());
        out.set("residual_norm", num(sol.residual_norm));
        out.set("residual_history", floats(&sol.residual_history));
        out.set("flux", num(sol.flux));
        out.set("flux_target", num(flux_target));
        out.set("flux_relative_error", num(rel(sol.flux, flux_target)));
        out.set("higgs_l2", num(sol.higgs_l2));
        out.set("higgs_l2_target", num(l2_target));
        out.set("higgs_l2_relative_error", num(rel(sol.higgs_l2, l2_target)));
        out.set("higgs_min", num(sol.higgs_density.min()));
        out.set("higgs_max", num(sol.higgs_density.max()));

        let n = spec.resolution();
        let mut table = Table::new(&["i", "j", "x", "y", "higgs_density", "curvature_density"]);
        for (idx, z) in spec.grid_points().into_iter().enumerate() {
            table.push(vec![
                Json::from(idx % n),
                Json::from(idx / n),
                num(z.re),
                num(z.im),
                num(sol.higgs_density.values()[idx]),
                num(sol.curvature_density.values()[idx]),
            ]);
        }
        Ok(Some(table))
    })
}

fn metric_options(r: &Resolved) -> MetricOptions {
    MetricOptions {
        step: r.opt_float("step"),
        tol: r.float("tolerance"),
        richardson: r.flag("richardson"),
    }
}

fn metric(r: &Resolved) -> Outcome {
    let d = r.int("d") as u32;
    let q = match quantization(r, d) {
        Ok(q) => q,
        Err(Stop(s, k, m)) => return Outcome::failed(s, k, m, Obj::new()),
    };
    finish(quantization_obj(&q), |out| {
        q.check_bradlow().map_err(vortex_stop)?;
        let spec = torus(r)?;
        let spectral = Spectral::new(&spec);
        let div = divisor(r, &spec, d)?;
        let opts = metric_options(r);
        out.set("divisor", divisor_json(&div));
        out.set("step", num(opts.resolved_step(&spec)));
        let dirs = chart_directions(&div).map_err(moduli_stop)?;
        out.set(
            "directions",
            Json::Array(
                dirs.iter()
                    .map(|c| Obj::new().put("point", c.point).put("direction", complex(c.e)).into())
                    .collect(),
            ),
        );
        let route = r.text("route").unwrap_or("both");
        let mut samples = Vec::new();
        if route != "fiberint" {
            samples.push(omega_deformation(&spectral, &q, &div, &opts).map_err(moduli_stop)?);
        }
        if route != "deformation" {
            samples.push(omega_fiberint(&spectral, &q, &div, &opts).map_err(moduli_stop)?);
        }
        let mut table = Table::new(&["route", "a", "b", "omega"]);
        let mut js = Vec::new();
        for s in &samples {
            js.push(Json::from(
                Obj::new()
                    .put("route", s.route.tag())
                    .put("omega", s.omega.iter().map(|row| floats(row)).collect::<Vec<_>>())
                    .put("scale", num(s.scale())),
            ));
            for (a, row) in s.omega.iter().enumerate() {
                for (b, &w) in row.iter().enumerate() {
                    table.push(vec![Json::from(s.route.tag()), Json::from(a), Json::from(b), num(w)]);
                }
            }
        }
        out.set("samples", js);
        if let [a, b] = samples.as_slice() {
            out.set("relative_distance", num(a.relative_distance(b)));
        }
        Ok(Some(table))
    })
}

fn volume(r: &Resolved) -> Outcome {
    let q = match quantization(r, 1) {
        Ok(q) => q,
        Err(Stop(s, k, m)) => return Outcome::failed(s, k, m, Obj::new()),
    };
    finish(quantization_obj(&q), |out| {
        q.check_bradlow().map_err(vortex_stop)?;
        let spec = torus(r)?;
        let m = r.int("grid") as usize;
        let (vol, density) = volume_d1(&spec, &q, m, &metric_options(r)).map_err(moduli_stop)?;
        let target = q.tau * q.volume / 2.0;
        // 2π ⟨[ω], [Σ]⟩ from the exact class, when the level is recognized
        let level = exact_level(&q);
        let class_pairing = kahler_class_at(1, 1, &level)
            .and_then(|c| pair_d1(&c))
            .map_err(symcoh_stop)?;
        out.set("volume", num(vol));
        out.set("target", num(target));
        out.set("relative_error", num(rel(vol, target)));
        out.set("exact_level", rational(&level));
        out.set("class_pairing", rational(&class_pairing));
        out.set(
            "class_volume",
            num(2.0 * PI * class_pairing.to_f64().unwrap_or(f64::NAN)),
        );
        let mut table = Table::new(&["x", "y", "omega_density"]);
        for (p, w) in density {
            table.push(vec![num(p.re), num(p.im), num(w)]);
        }
        Ok(Some(table))
    })
}

fn classes(r: &Resolved) -> Outcome {
    let (g, d) = (r.int("g") as u32, r.int("d") as u32);
    let q = match QuantizationSpec::new(g, d, r.float("tau"), r.float("volume")) {
        Ok(q) => q,
        Err(e) => return Outcome::failed(Status::Internal, "internal", e.to_string(), Obj::new()),
    };
    let mut out = quantization_obj(&q);
    let level = exact_level(&q);
    out.set("exact_level", rational(&level));
    out.set("c1_tangent", c1_tangent(g, d).to_string());
    if d == 1 {
        if let Ok(p) = pair_d1(&c1_tangent(g, d)) {
            out.set("c1_pairing", rational(&p));
        }
    }
    let mut violations: Vec<Stop> = Vec::new();
    if let Err(e) = q.check_bradlow() {
        violations.push(vortex_stop(e));
    }
    match kahler_class(&q) {
        Ok(c) => {
            out.set("kahler_class", c.to_string());
            if let Some(t) = c.theta_multiplicity() {
                out.set("kahler_theta_multiplicity", rational(&t));
            }
            out.set("kahler_eta_coefficient", rational(&c.eta_coeff));
            if d == 1 {
                if let Ok(p) = pair_d1(&c) {
                    out.set("kahler_pairing", rational(&p));
                }
            }
        }
        Err(e) => violations.push(symcoh_stop(e)),
    }
    match weil_check(g, q.tau, q.volume) {
        Ok(w) => {
            out.set(
                "weil",
                Obj::new()
                    .put("level", int(&w.level))
                    .put("flat_ambiguity_dim", w.flat_ambiguity_dim),
            );
            if q.bradlow_excess() > 0.0 {
                match prequantum_class_check(&q) {
                    Ok(p) => out.set(
                        "prequantum",
                        Obj::new()
                            .put("canonical", p.canonical.to_string())
                            .put("deg_m", int(&p.deg_m))
                            .put("lhs", p.lhs.to_string())
                            .put("rhs", p.rhs.to_string())
                            .put("holds", p.lhs == p.rhs),
                    ),
                    Err(e) => violations.push(symcoh_stop(e)),
                }
            }
        }
        Err(e) => violations.push(symcoh_stop(e)),
    }
    let ke = ke_check(&q);
    out.set(
        "kahler_einstein",
        Obj::new()
            .put("tau_volume", num(ke.tau_volume))
            .put("target", num(ke.target))
            .put("identity_holds", ke.identity_holds)
            .put("genus_condition", ke.genus_condition)
            .put("compatible", ke.compatible),
    );
    out.set(
        "violations",
        violations
            .iter()
            .map(|Stop(_, k, m)| Json::from(Obj::new().put("kind", *k).put("message", m.as_str())))
            .collect::<Vec<_>>(),
    );
    let worst = violations
        .iter()
        .find(|s| s.0 == Status::Internal)
        .or_else(|| violations.first());
    match worst {
        None => Outcome::ok(out, None),
        Some(Stop(s, k, m)) => Outcome::failed(*s, k, m.clone(), out),
    }
}

fn dims_row_obj(g: u64, d: u64, k: u64, h1: u64) -> Obj {
    Obj::new()
        .put("genus", g)
        .put("degree", d)
        .put("level", k)
        .put("h1", h1)
}

fn dims(r: &Resolved) -> Outcome {
    let (g, d, k, h1) = (r.int("g"), r.int("d"), r.int("k"), r.int("h1"));
    finish(dims_row_obj(g, d, k, h1), |out| {
        let s = jump_stratum(g, k);
        out.set(
            "jump_stratum",
            Obj::new()
                .put("jumps_possible", s.jumps_possible)
                .put("unique_top_jump", s.unique_top_jump)
                .put("max_h1", s.max_h1),
        );
        let rep = hilbert_dim(g, d, k, h1).map_err(hilbert_stop)?;
        out.set("h0", rep.h0);
        out.set("dim", int(&rep.dim));
        out.set("generic_dim", int(&rep.generic_dim));
        out.set("jumped", rep.jumped);
        let b = &rep.bundles;
        out.set(
            "bundles",
            Obj::new()
                .put("deg_q", b.deg_q)
                .put("deg_spin", b.deg_spin)
                .put("deg_m", b.deg_m)
                .put("deg_qk", b.deg_qk)
                .put("consistent", b.is_consistent()),
        );
        Ok(None)
    })
}

fn metaplectic_obj(m: &MetaplecticReport) -> Obj {
    let c = &m.certificate;
    let mut cert = Obj::new()
        .put("c1", c.c1.to_string())
        .put("eta_even", c.eta_even)
        .put("theta_part_even", c.theta_part_even)
        .put("w2_vanishes", c.w2_vanishes);
    if let Some(p) = &c.point_class_multiple {
        cert.set("point_class_multiple", rational(p));
    }
    let l = &m.legendre;
    Obj::new()
        .put("genus", m.genus)
        .put("degree", m.degree)
        .put("admits", m.admits())
        .put("closed_form", m.closed_form)
        .put("certificate", cert)
        .put(
            "legendre",
            Obj::new()
                .put("valuation_legendre", l.valuation_legendre)
                .put("valuation_direct", l.valuation_direct)
                .put("two_pow_g_divides_factorial", l.two_pow_g_divides_factorial),
        )
        .put("theta_routes_agree", m.theta_routes_agree)
        .put("verdicts_agree", m.verdicts_agree)
}

fn metaplectic(r: &Resolved) -> Outcome {
    let m = metaplectic_check(r.int("g") as u32, r.int("d") as u32);
    let out = metaplectic_obj(&m);
    if m.consistent() {
        Outcome::ok(out, None)
    } else {
        Outcome::failed(
            Status::Internal,
            "certificate_mismatch",
            "closed form and certificates disagree",
            out,
        )
    }
}

fn obstruction_obj(o: &ObstructionReport) -> Obj {
    Obj::new()
        .put(
            "bundle",
            Obj::new()
                .put("rank", int(&o.bundle.rank))
                .put("c1", rational(&o.bundle.c1_theta))
                .put("c2", rational(&o.bundle.c2_theta2)),
        )
        .put("lhs", rational(&o.lhs))
        .put("rhs", rational(&o.rhs))
        .put("obstruction", rational(&o.obstruction))
        .put("flat_possible", o.flat_possible)
        .put("closed_lhs", rational(&o.closed_lhs))
        .put("closed_rhs", rational(&o.closed_rhs))
        .put("matches_closed_form", o.matches_closed_form)
}

fn obstruction(r: &Resolved) -> Outcome {
    let (g, k, d) = (r.int("g"), r.int("k"), r.int("d"));
    let base = Obj::new().put("genus", g).put("level", k).put("degree", d);
    finish(base, |out| {
        let o = proj_flat_test(g, k, d).map_err(obstruct_stop)?;
        out.0.extend(obstruction_obj(&o).0);
        if !o.matches_closed_form {
            return Err(Stop(
                Status::Internal,
                "closed_form_mismatch",
                "binomial closed form disagrees".into(),
            ));
        }
        Ok(None)
    })
}

fn route_obj(v: &RouteValues) -> Obj {
    Obj::new()
        .put("zeta_zero", num(v.zeta_zero))
        .put("zeta_prime_zero", num(v.zeta_prime_zero))
        .put("error_estimate", num(v.error_estimate))
}

fn zeta(r: &Resolved) -> Outcome {
    let w = r.complex("modulus");
    let base = Obj::new()
        .put("modulus", complex(w))
        .put("area", num(r.float("volume")));
    finish(base, |out| {
        let spec = torus(r)?;
        let opts = ZetaOptions {
            eval_points: r.floats("t").to_vec(),
        };
        let z = zeta_prime_zero_with(&spec, &opts).map_err(zeta_stop)?;
        out.set("normalization", z.normalization);
        out.set("zeta_zero", num(z.zeta_zero));
        out.set("zeta_prime_zero", num(z.zeta_prime_zero));
        out.set("log_det", num(-z.zeta_prime_zero));
        out.set("zeta_prime_zero_half_laplacian", num(z.zeta_prime_zero_scaled(0.5)));
        out.set("quillen_factor", num(z.quillen_factor));
        out.set("method_spread", num(z.method_spread));
        out.set("mellin", route_obj(&z.mellin));
        out.set("cutoff", route_obj(&z.cutoff));
        let mut table = Table::new(&["t", "zeta"]);
        for &(t, v) in &z.zeta_at {
            table.push(vec![num(t), num(v)]);
        }
        out.set("zeta_at", table.to_json());
        if let Some(cut) = r.opt_float("spectrum_cutoff") {
            let s = dual_lattice_eigenvalues(&spec, cut);
            out.set(
                "spectrum",
                Obj::new()
                    .put(
                        "levels",
                        s.levels
                            .iter()
                            .map(|l| {
                                Json::from(
                                    Obj::new()
                                        .put("eigenvalue", num(l.eigenvalue))
                                        .put("multiplicity", l.multiplicity),
                                )
                            })
                            .collect::<Vec<_>>(),
                    )
                    .put("modes_checked", s.modes_checked)
                    .put("max_grid_defect", num(s.max_grid_defect)),
            );
        }
        Ok(Some(table))
    })
}

fn status_cell(s: &Stop) -> Json {
    Json::from(s.1)
}

fn sweep(r: &Resolved) -> Outcome {
    let what = r.text("what").unwrap_or_default().to_string();
    let (g0, g1) = (r.int("g_min"), r.int("g_max"));
    let (d0, d1) = (r.int("d_min"), r.int("d_max"));
    let (k0, k1) = (r.int("k_min"), r.int("k_max"));
    let mut failures = 0usize;
    let mut internal_failure: Option<String> = None;
    let table = match what.as_str() {
        "dims" => {
            let h1 = r.int("h1");
            let mut t = Table::new(&["g", "d", "k", "h1", "status", "dim", "generic_dim", "jumped"]);
            for g in g0..=g1 {
                for d in d0..=d1 {
                    for k in k0..=k1 {
                        let head = vec![Json::from(g), Json::from(d), Json::from(k), Json::from(h1)];
                        let tail = match hilbert_dim(g, d, k, h1).map_err(hilbert_stop) {
                            Ok(rep) => vec![
                                Json::from("ok"),
                                int(&rep.dim),
                                int(&rep.generic_dim),
                                Json::from(rep.jumped),
                            ],
                            Err(s) => {
                                failures += 1;
                                vec![status_cell(&s), Json::Null, Json::Null, Json::Null]
                            }
                        };
                        t.push([head, tail].concat());
                    }
                }
            }
            t
        }
        "metaplectic" => {
            let mut t = Table::new(&["g", "d", "closed_form", "w2_vanishes", "verdicts_agree", "admits"]);
            for g in g0..=g1 {
                for d in d0..=d1 {
                    let m = metaplectic_check(g as u32, d as u32);
                    if !m.consistent() {
                        internal_failure.get_or_insert(format!("certificates disagree at g = {g}, d = {d}"));
                    }
                    t.push(vec![
                        Json::from(g),
                        Json::from(d),
                        Json::from(m.closed_form),
                        Json::from(m.certificate.w2_vanishes),
                        Json::from(m.verdicts_agree),
                        Json::from(m.admits()),
                    ]);
                }
            }
            t
        }
        "obstruction" => {
            let mut t = Table::new(&[
                "g",
                "k",
                "d",
                "status",
                "rank",
                "lhs",
                "rhs",
                "obstruction",
                "flat_possible",
                "matches_closed_form",
            ]);
            for g in g0..=g1 {
                for k in k0..=k1 {
                    for d in d0..=d1 {
                        let head = vec![Json::from(g), Json::from(k), Json::from(d)];
                        let tail = match proj_flat_test(g, k, d).map_err(obstruct_stop) {
                            Ok(o) => {
                                if !o.matches_closed_form {
                                    internal_failure
                                        .get_or_insert(format!("closed form mismatch at g = {g}, k = {k}, d = {d}"));
                                }
                                vec![
                                    Json::from("ok"),
                                    int(&o.bundle.rank),
                                    rational(&o.lhs),
                                    rational(&o.rhs),
                                    rational(&o.obstruction),
                                    Json::from(o.flat_possible),
                                    Json::from(o.matches_closed_form),
                                ]
                            }
                            Err(s) => {
                                failures += 1;
                                let mut v = vec![status_cell(&s)];
                                v.extend(std::iter::repeat(Json::Null).take(6));
                                v
                            }
                        };
                        t.push([head, tail].concat());
                    }
                }
            }
            t
        }
        "prequantum" => {
            let mut t = Table::new(&["g", "d", "k", "status", "deg_m", "lhs", "rhs", "holds"]);
            for g in g0..=g1 {
                for d in d0..=d1 {
                    for k in k0..=k1 {
                        let head = vec![Json::from(g), Json::from(d), Json::from(k)];
                        let res = if k <= d {
                            Err(Stop(Status::Domain, "bradlow", format!("k = {k} must exceed d = {d}")))
                        } else {
                            prequantum_class_check_at(g as u32, d as u32, k as i64).map_err(symcoh_stop)
                        };
                        let tail = match res {
                            Ok(p) => vec![
                                Json::from("ok"),
                                int(&p.deg_m),
                                Json::from(p.lhs.to_string()),
                                Json::from(p.rhs.to_string()),
                                Json::from(p.lhs == p.rhs),
                            ],
                            Err(s) => {
                                if s.0 == Status::Internal {
                                    internal_failure.get_or_insert(s.2.clone());
                                }
                                failures += 1;
                                vec![status_cell(&s), Json::Null, Json::Null, Json::Null, Json::Null]
                            }
                        };
                        t.push([head, tail].concat());
                    }
                }
            }
            t
        }
        _ => {
            let steps = r.int("steps");
            let (lo, hi) = (r.float("im_min"), r.float("im_max"));
            let re = r.float("modulus_re");
            let mut t = Table::new(&["re", "im", "status", "zeta_prime_zero", "log_det", "method_spread"]);
            for i in 0..steps {
                let im = if steps == 1 {
                    lo
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                };
                let res = build_torus(Complex64::new(re, im), r.float("volume"), 32)
                    .map_err(internal)
                    .and_then(|spec| zeta_prime_zero_with(&spec, &ZetaOptions::default()).map_err(zeta_stop));
                let tail = match res {
                    Ok(z) => vec![
                        Json::from("ok"),
                        num(z.zeta_prime_zero),
                        num(-z.zeta_prime_zero),
                        num(z.method_spread),
                    ],
                    Err(s) => {
                        internal_failure.get_or_insert(s.2.clone());
                        failures += 1;
                        vec![status_cell(&s), Json::Null, Json::Null, Json::Null]
                    }
                };
                t.push([vec![num(re), num(im)], tail].concat());
            }
            t
        }
    };
    let out = Obj::new()
        .put("what", what.as_str())
        .put("row_count", table.rows.len())
        .put("rows_with_errors", failures)
        .put("table", table.to_json());
    match internal_failure {
        None => Outcome::ok(out, Some(table)),
        Some(msg) => {
            let mut o = Outcome::failed(Status::Internal, "internal", msg, out);
            o.table = Some(table);
            o
        }
    }
}
