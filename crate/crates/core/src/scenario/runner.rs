//! Executes scenarios and writes per-suite reports.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::schema::{Expectation, LinearSamples, ObjectBody, Scenario, SuiteDef};
use crate::convexfn::{conjugate_vkc, ConvexFunction, FieldGrid, Lattice};
use crate::error::{check_dim, Error, Result};
use crate::extended::Extended;
use crate::fitzpatrick::{
    fitzpatrick_value, gap_value, graph_probes, p_value, phi_value, sandwich_test, singleton_criterion,
    singleton_test, ProbePair, Verdict,
};
use crate::monotonicity::{is_cyclically_monotone, is_n_monotone_with, theorem_a_suite, EnumerationCaps};
use crate::operators::{circle_points, linear_graph, sample_subdifferential, DualPair, LinearOperator, OperatorGraph};
use crate::vector::Vector;

/// Logged in every report that reasons from a sampled graph.
pub const GRAPH_PROXY_NOTE: &str =
    "finite sampled graph used as a proxy for a maximal monotone operator; F is a lower bound for the true F";

/// A scenario object turned into computable pieces.
pub struct Resolved {
    pub f: Option<ConvexFunction>,
    pub f_star: Option<ConvexFunction>,
    pub graph: OperatorGraph,
    pub linear: Option<LinearOperator>,
}

pub fn resolve_object(s: &Scenario, id: &str) -> Result<Resolved> {
    let obj = s.object(id)?;
    let ctx = |e: Error| Error::invalid(format!("object `{id}`: {e}"));
    match &obj.body {
        ObjectBody::Vkc { spec, graph_lattice } => {
            let f = ConvexFunction::Vkc(Box::new(spec.clone()));
            let lat = s.lattice(graph_lattice)?;
            let graph = sample_subdifferential(&f, &lat, s.tol).map_err(ctx)?.with_label(id);
            Ok(Resolved {
                f_star: Some(conjugate_vkc(spec)),
                f: Some(f),
                graph,
                linear: None,
            })
        }
        ObjectBody::Linear { matrix, samples } => {
            let pts = match samples {
                LinearSamples::Points(p) => p.clone(),
                LinearSamples::Circle(k) => {
                    if matrix.dim() != 2 {
                        return Err(ctx(Error::invalid("circle samples need a 2x2 matrix")));
                    }
                    circle_points(*k)
                }
            };
            let graph = linear_graph(matrix, &pts).map_err(ctx)?.with_label(id);
            Ok(Resolved {
                f: None,
                f_star: None,
                graph,
                linear: Some(matrix.clone()),
            })
        }
        ObjectBody::Grid {
            axes,
            values,
            conjugate,
            graph,
        } => {
            let field = FieldGrid::new(Lattice::new(axes.clone())?, values.clone()).map_err(ctx)?;
            let dual = FieldGrid::new(Lattice::new(conjugate.axes.clone())?, conjugate.values.clone())
                .map_err(|e| ctx(Error::invalid(format!("conjugate: {e}"))))?;
            check_dim(field.dim(), dual.dim()).map_err(ctx)?;
            let lat = field.lattice().clone();
            let f = ConvexFunction::GridSampled(field);
            let graph = match graph {
                Some(g) => {
                    check_dim(f.dim(), g.dim()).map_err(ctx)?;
                    g.clone()
                }
                None => sample_subdifferential(&f, &lat, s.tol).map_err(ctx)?,
            }
            .with_label(id);
            Ok(Resolved {
                f: Some(f),
                f_star: Some(ConvexFunction::GridSampled(dual)),
                graph,
                linear: None,
            })
        }
        ObjectBody::Graph { graph } => Ok(Resolved {
            f: None,
            f_star: None,
            graph: graph.clone(),
            linear: None,
        }),
    }
}

/// Output of one suite: a JSON report and an optional CSV field.
#[derive(Clone, Debug)]
pub struct SuiteOutput {
    pub kind: &'static str,
    pub object: String,
    pub passed: bool,
    pub report: Value,
    pub csv: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub index: usize,
    pub kind: &'static str,
    pub object: String,
    pub passed: bool,
    pub report: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub name: String,
    pub hash: String,
    pub tol: f64,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteSummary>,
    #[serde(skip)]
    pub dir: PathBuf,
}

/// SHA-256 of the canonical JSON of the effective scenario.
pub fn scenario_hash(s: &Scenario) -> String {
    let canonical = serde_json::to_string(s).expect("scenario serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Runs every suite in order and writes `<out>/<name>-<hash12>/`.
///
/// Input problems (dangling references, dimension clashes, enumeration caps) are
/// errors; suite failures are reported through `passed`.
pub fn run_scenario(s: &Scenario, out: &Path) -> Result<RunSummary> {
    s.validate()?;
    let hash = scenario_hash(s);
    let dir = out.join(format!("{}-{}", s.name, &hash[..12]));
    let outputs = s
        .suites
        .iter()
        .enumerate()
        .map(|(i, suite)| run_suite(s, i, suite).map_err(|e| Error::invalid(format!("suites[{i}] ({}): {e}", suite.kind()))))
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("scenario.json"), s.to_json_pretty() + "\n")?;
    let mut suites = Vec::new();
    for (i, o) in outputs.into_iter().enumerate() {
        let stem = format!("{:02}-{}", i, o.kind);
        let report = format!("{stem}.json");
        fs::write(dir.join(&report), serde_json::to_string_pretty(&o.report)? + "\n")?;
        let field = match o.csv {
            Some(csv) => {
                let name = format!("{stem}.csv");
                fs::write(dir.join(&name), csv)?;
                Some(name)
            }
            None => None,
        };
        suites.push(SuiteSummary {
            index: i,
            kind: o.kind,
            object: o.object,
            passed: o.passed,
            report,
            field,
        });
    }
    let summary = RunSummary {
        name: s.name.clone(),
        hash,
        tol: s.tol,
        seed: s.seed,
        passed: suites.iter().all(|x| x.passed),
        suites,
        dir: dir.clone(),
    };
    fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(summary)
}

fn split_node(l: &Lattice, i: usize, d: usize) -> (Vector, Vector) {
    l.point(i).split_at(d)
}

fn need_fn<'a>(r: &'a Resolved, what: &str) -> Result<(&'a ConvexFunction, &'a ConvexFunction)> {
    match (&r.f, &r.f_star) {
        (Some(f), Some(fs)) => Ok((f, fs)),
        _ => Err(Error::invalid(format!("{what} needs an object with a function and its conjugate"))),
    }
}

fn csv_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let row: Vec<String> = cells.into_iter().collect();
    let _ = writeln!(out, "{}", row.join(","));
}

fn header(d: usize, extra: &[&str]) -> Vec<String> {
    (0..d)
        .map(|i| format!("x{i}"))
        .chain((0..d).map(|i| format!("xstar{i}")))
        .chain(extra.iter().map(|s| s.to_string()))
        .collect()
}

fn coords(x: &Vector, xs: &Vector) -> Vec<String> {
    x.coords().iter().chain(xs.coords()).map(|c| c.to_string()).collect()
}

pub fn run_suite(s: &Scenario, index: usize, suite: &SuiteDef) -> Result<SuiteOutput> {
    let r = resolve_object(s, suite.object())?;
    let g = &r.graph;
    let d = g.dim();
    let tol = s.tol;
    let (passed, report, csv) = match suite {
        SuiteDef::FieldDump { lattice, .. } => {
            let l = s.lattice(lattice)?;
            check_dim(2 * d, l.dim())?;
            let with_phi = r.f.is_some();
            let mut csv = String::new();
            let extra: &[&str] = if with_phi { &["F", "P", "Phi", "gap"] } else { &["F", "P"] };
            csv_row(&mut csv, header(d, extra));
            let (mut violations, mut finite_p, mut in_dom) = (0usize, 0usize, 0usize);
            let mut max_gap: f64 = 0.0;
            for i in 0..l.len() {
                let (x, xs) = split_node(&l, i, d);
                let fv = fitzpatrick_value(g, &x, &xs)?;
                let pv = p_value(g, &x, &xs, tol)?;
                let mut row = coords(&x, &xs);
                row.push(fv.to_string());
                row.push(pv.to_string());
                if pv.is_finite() {
                    finite_p += 1;
                }
                let slack = tol * (1.0 + fv.abs());
                if let Extended::Finite(p) = pv {
                    if fv > p + slack {
                        violations += 1;
                    }
                }
                if let (Some(f), Some(fst)) = (&r.f, &r.f_star) {
                    let phi = phi_value(f, fst, &x, &xs, tol)?;
                    let gap = phi - fv;
                    if let Extended::Finite(ph) = phi {
                        in_dom += 1;
                        max_gap = max_gap.max(ph - fv);
                        let scale = tol * (1.0 + ph.abs());
                        if fv > ph + scale || pv.finite().is_some_and(|p| ph > p + scale) {
                            violations += 1;
                        }
                    }
                    row.push(phi.to_string());
                    row.push(gap.to_string());
                }
                csv_row(&mut csv, row);
            }
            let report = json!({
                "cells": l.len(),
                "finite_p_cells": finite_p,
                "phi_domain_cells": in_dom,
                "max_gap": max_gap,
                "chain_violations": violations,
            });
            (violations == 0, report, Some(csv))
        }
        SuiteDef::Singleton {
            lattice,
            probes,
            random_probes,
            graph_probes: use_graph,
            expect,
            ..
        } => {
            let mut trusted: Vec<ProbePair> = probes.clone();
            for (a, b) in probes {
                check_dim(d, a.dim())?;
                check_dim(d, b.dim())?;
            }
            if *use_graph {
                trusted.extend(graph_probes(g));
            }
            let mut untrusted: Vec<ProbePair> = Vec::new();
            if *random_probes > 0 {
                let l = s.lattice(lattice.as_deref().expect("validated"))?;
                check_dim(2 * d, l.dim())?;
                let mut rng = ChaCha8Rng::seed_from_u64(s.seed.wrapping_add(index as u64));
                let draw = |rng: &mut ChaCha8Rng| -> Result<(DualPair, bool)> {
                    let (x, xs) = split_node(&l, rng.gen_range(0..l.len()), d);
                    probe_point(&r, x, xs, tol)
                };
                for _ in 0..*random_probes {
                    let (a, ta) = draw(&mut rng)?;
                    let (b, tb) = draw(&mut rng)?;
                    if ta && tb {
                        trusted.push((a, b));
                    } else {
                        untrusted.push((a, b));
                    }
                }
            }
            if trusted.is_empty() {
                return Err(Error::invalid("no trusted probes; enable graph probes or give explicit ones"));
            }
            let v = singleton_test(g, &trusted, tol)?;
            let info = if untrusted.is_empty() {
                Value::Null
            } else {
                serde_json::to_value(singleton_test(g, &untrusted, tol)?.min_residual)?
            };
            let want = match expect {
                Expectation::Pass => Verdict::ConsistentWithSingleton,
                Expectation::Fail => Verdict::Refuted,
            };
            let report = json!({
                "verdict": v.verdict,
                "min_residual": v.min_residual,
                "witnesses": [v.witness_pair],
                "trusted_probes": v.probes,
                "untrusted_probes": untrusted.len(),
                "untrusted_min_residual": info,
                "expect": expect,
            });
            (v.verdict == want, report, None)
        }
        SuiteDef::Gap {
            lattice,
            expect_zero,
            route_tol,
            zero_tol,
            ..
        } => {
            let (f, fs) = need_fn(&r, "gap")?;
            let l = s.lattice(lattice)?;
            check_dim(2 * d, l.dim())?;
            let mut csv = String::new();
            csv_row(&mut csv, header(d, &["Phi", "F", "gap", "direct"]));
            let (mut in_dom, mut worst_route, mut worst_gap, mut min_gap) = (0usize, 0.0f64, 0.0f64, f64::INFINITY);
            for i in 0..l.len() {
                let (w, v) = split_node(&l, i, d);
                let rep = gap_value(f, fs, g, &w, &v, tol)?;
                let mut row = coords(&w, &v);
                row.extend([rep.phi.to_string(), rep.fitzpatrick.to_string(), rep.gap.to_string(), rep.direct.to_string()]);
                csv_row(&mut csv, row);
                if rep.in_domain {
                    in_dom += 1;
                    worst_route = worst_route.max(rep.route_difference());
                    let gv = rep.gap.finite().expect("finite in domain");
                    worst_gap = worst_gap.max(gv.abs());
                    min_gap = min_gap.min(gv);
                }
            }
            let ok = in_dom > 0 && worst_route <= *route_tol && (!expect_zero || worst_gap <= *zero_tol) && min_gap >= -route_tol;
            let report = json!({
                "points": l.len(),
                "in_domain": in_dom,
                "max_route_difference": worst_route,
                "max_abs_gap": worst_gap,
                "min_gap": if in_dom > 0 { json!(min_gap) } else { Value::Null },
                "expect_zero": expect_zero,
            });
            (ok, report, Some(csv))
        }
        SuiteDef::Sandwich {
            w, vstar, primal, dual, ..
        } => {
            let rep = sandwich_test(g, w, vstar, &s.lattice(primal)?, &s.lattice(dual)?, tol)?;
            (rep.passed, serde_json::to_value(&rep)?, None)
        }
        SuiteDef::Monotonicity {
            checks,
            cyclic,
            max_n,
            max_tuples,
            ..
        } => {
            let mut caps = EnumerationCaps::default();
            if let Some(n) = max_n {
                caps.max_n = *n;
            }
            if let Some(t) = max_tuples {
                caps.max_tuples = *t;
            }
            let mut ok = true;
            let mut results = Vec::new();
            for c in checks {
                let v = is_n_monotone_with(g, c.n, tol, caps)?;
                ok &= v.monotone == c.expect;
                results.push(json!({"n": c.n, "expect": c.expect, "monotone": v.monotone, "witness": v.witness}));
            }
            let cyc = cyclic.map(|want| {
                let v = is_cyclically_monotone(g, tol);
                ok &= v.monotone == want;
                json!({"expect": want, "monotone": v.monotone, "witness": v.witness})
            });
            let report = json!({"pairs": g.len(), "checks": results, "cyclic": cyc, "caps": caps});
            (ok, report, None)
        }
        SuiteDef::TheoremA {
            vstar, lattice, expect, ..
        } => {
            let rep = theorem_a_suite(g, vstar, &s.lattice(lattice)?, tol)?;
            let ok = rep.passed == (*expect == Expectation::Pass);
            let mut v = serde_json::to_value(&rep)?;
            v["expect"] = json!(expect);
            (ok, v, None)
        }
        SuiteDef::TheoremB {
            eps,
            probe_lattice,
            expect,
            ..
        } => {
            let (f, fs) = need_fn(&r, "theorem-b")?;
            let l = s.lattice(probe_lattice)?;
            check_dim(2 * d, l.dim())?;
            let probes: Vec<DualPair> = (0..l.len())
                .map(|i| {
                    let (x, xstar) = split_node(&l, i, d);
                    DualPair { x, xstar }
                })
                .collect();
            let rep = singleton_criterion(f, fs, g, &probes, eps, tol)?;
            let ok = rep.passed == (*expect == Expectation::Pass);
            let mut v = serde_json::to_value(&rep)?;
            v["expect"] = json!(expect);
            (ok, v, None)
        }
    };
    let mut report = report;
    if let Value::Object(map) = &mut report {
        let mut head = serde_json::Map::new();
        head.insert("kind".into(), json!(suite.kind()));
        head.insert("object".into(), json!(suite.object()));
        head.insert("passed".into(), json!(passed));
        head.insert("graph_pairs".into(), json!(g.len()));
        head.insert("assumption".into(), json!(GRAPH_PROXY_NOTE));
        head.append(map);
        report = Value::Object(head);
    }
    Ok(SuiteOutput {
        kind: suite.kind(),
        object: suite.object().to_string(),
        passed,
        report,
        csv,
    })
}

/// A random probe point and whether the sampled `F` there is known to be exact.
///
/// With an attached `f`, `F ≤ Φ_f` always, so `F ≥ Φ_f − tol` pins `F`. For a linear
/// operator the point is moved onto its graph, `(x, Mx)`, where the true `F` is
/// `⟨x, Mx⟩`. Bare graphs never trust random points.
fn probe_point(r: &Resolved, x: Vector, xs: Vector, tol: f64) -> Result<(DualPair, bool)> {
    if let Some(m) = &r.linear {
        let mx = m.apply(&x)?;
        let fv = fitzpatrick_value(&r.graph, &x, &mx)?;
        let ok = fv >= x.dot(&mx) - tol;
        return Ok((DualPair { x, xstar: mx }, ok));
    }
    if let (Some(f), Some(fs)) = (&r.f, &r.f_star) {
        let fv = fitzpatrick_value(&r.graph, &x, &xs)?;
        let ok = match phi_value(f, fs, &x, &xs, tol)? {
            Extended::Finite(phi) => fv >= phi - tol,
            Extended::PosInf => false,
        };
        return Ok((DualPair { x, xstar: xs }, ok));
    }
    Ok((DualPair { x, xstar: xs }, false))
}
