//! Subcommand bodies. Each returns the process exit code or a [`CliError`].

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use mannheim_core::expr::reparametrize_by_arclength;
use mannheim_core::lab::{run_suite, LabError, TheoremReport, SUITE_VERSION};
use mannheim_core::offset::{build_offset, mannheim_condition_check, offset_frame, solve_theta, OffsetError, OffsetPairing, OffsetSpec};
use mannheim_core::ruled::{classify_surface, frenet_frame, striction_data, unit_director};
use mannheim_core::{RuledSurface, ScalarFn, SurfaceError, SurfaceType};

use crate::export::{frame_rows, write_rows, Format, OffsetRow};
use crate::surface_file::{SurfaceFile, SurfaceSource};
use crate::{exit, CliError};

pub fn load(path: &Path) -> Result<SurfaceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    SurfaceFile::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn surface_error(e: SurfaceError) -> CliError {
    match e {
        SurfaceError::Eval(_) | SurfaceError::OrderTooHigh(_) | SurfaceError::InvalidSeed(_) | SurfaceError::BadStep(_) => {
            CliError::input(e.to_string())
        }
        other => CliError::geometry(other.to_string()),
    }
}

fn offset_error(e: OffsetError) -> CliError {
    match e {
        OffsetError::Surface(s) => surface_error(s),
        other => CliError::geometry(other.to_string()),
    }
}

fn build(file: &SurfaceFile) -> Result<std::sync::Arc<dyn RuledSurface>, CliError> {
    file.build().map_err(surface_error)
}

/// Short human-readable number: exact zeros for noise, otherwise 10 significant digits.
pub fn fmt_short(v: f64) -> String {
    if v.abs() < 1e-12 {
        return "0".into();
    }
    let s = format!("{:.*e}", 9, v);
    let (mant, exp) = s.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let mant = mant.trim_end_matches('0').trim_end_matches('.');
    if (-4..10).contains(&exp) {
        let plain = format!("{:.*}", (9 - exp).max(0) as usize, v);
        if plain.contains('.') {
            plain.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            plain
        }
    } else {
        format!("{mant}e{exp}")
    }
}

/// Groups consecutive flagged grid points into `[first, last]` intervals.
pub fn intervals(points: &[(f64, bool)]) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    let mut open = false;
    for &(s, bad) in points {
        if bad {
            if open {
                out.last_mut().unwrap()[1] = s;
            } else {
                out.push([s, s]);
            }
        }
        open = bad;
    }
    out
}

fn fmt_intervals(iv: &[[f64; 2]]) -> String {
    let parts: Vec<String> = iv.iter().map(|[a, b]| format!("[{},{}]", fmt_short(*a), fmt_short(*b))).collect();
    format!("[{}]", parts.join(","))
}

pub fn classify(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let surf = build(&load(path)?)?;
    let kind = match classify_surface(surf.as_ref()) {
        SurfaceType::Degenerate(reason) => {
            writeln!(out, "type=degenerate reason=\"{reason}\"").map_err(CliError::io)?;
            return Ok(exit::GEOMETRY);
        }
        t => t.frame_type().unwrap(),
    };
    let developable = striction_data(surf.as_ref()).map_err(surface_error)?.developable;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in surf.grid() {
        let k = frenet_frame(surf.as_ref(), s).map_err(surface_error)?.kappa;
        lo = lo.min(k);
        hi = hi.max(k);
    }
    writeln!(
        out,
        "type={} eps1={:+} eps2={:+} developable={developable} kappa=[{},{}]",
        kind.label(),
        kind.eps1(),
        kind.eps2(),
        fmt_short(lo),
        fmt_short(hi)
    )
    .map_err(CliError::io)?;
    Ok(exit::OK)
}

fn sink(output: Option<&Path>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), CliError> {
    match output {
        None => f(stdout).map_err(CliError::io),
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
        }
    }
}

pub fn frame(path: &Path, grid: Option<usize>, format: Format, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    if grid == Some(0) {
        return Err(CliError::usage("--grid must be at least 1"));
    }
    let file = load(path)?;
    let surf = build(&file)?;
    if let SurfaceType::Degenerate(reason) = classify_surface(surf.as_ref()) {
        return Err(CliError::geometry(format!("surface is degenerate: {reason}")));
    }
    let rows = frame_rows(surf.as_ref(), &file.domain.grid(grid.unwrap_or(file.samples))).map_err(surface_error)?;
    sink(output, out, |w| write_rows(&rows, format, w))?;
    Ok(exit::OK)
}

pub struct OffsetArgs<'a> {
    pub r: &'a str,
    pub theta: &'a str,
    pub pairing: OffsetPairing,
    pub output: Option<&'a Path>,
}

pub fn offset(path: &Path, args: &OffsetArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = ScalarFn::parse(args.r).map_err(|e| CliError::input(format!("--R: {e}")))?;
    let theta = ScalarFn::parse(args.theta).map_err(|e| CliError::input(format!("--theta: {e}")))?;
    let base = build(&load(path)?)?;
    let spec = OffsetSpec::new(base.clone(), r, theta, args.pairing);
    let grid = base.grid();

    // pointwise evaluation first so every bad stretch is reported, not just the first
    let mut rows = Vec::with_capacity(grid.len());
    let mut flags = Vec::with_capacity(grid.len());
    let mut first_err = None;
    for &s in &grid {
        let ok = spec.r.eval(s).and_then(|_| spec.theta.eval(s)).map_err(OffsetError::from);
        let ok = ok.and_then(|_| frenet_frame(base.as_ref(), s).map_err(OffsetError::from));
        if let Err(e) = &ok {
            first_err.get_or_insert_with(|| e.to_string());
        }
        flags.push((s, ok.is_err()));
    }
    let bad = intervals(&flags);
    if !bad.is_empty() {
        return Err(CliError::geometry(format!(
            "offset undefined on s-intervals {} ({})",
            fmt_intervals(&bad),
            first_err.unwrap_or_default()
        )));
    }
    let off = build_offset(&spec).map_err(offset_error)?;
    for &s in &grid {
        let c = off.base_derivs(s, 0).map_err(surface_error)?[0];
        let q = unit_director(&off, s, 0).map_err(surface_error)?[0];
        rows.push(OffsetRow { s, c1: c.x1, c2: c.x2, c3: c.x3, q1: q.x1, q2: q.x2, q3: q.x3 });
    }

    let mut frame_ok = true;
    let mut no_theta = Vec::with_capacity(grid.len());
    for &s in &grid {
        let f = frenet_frame(base.as_ref(), s).map_err(surface_error)?;
        let star = offset_frame(&f, spec.theta.eval(s).map_err(|e| CliError::input(e.to_string()))?, args.pairing).map_err(offset_error)?;
        frame_ok &= (star.h - f.a).euclid_norm() <= 1e-9;
        let r = spec.r.eval(s).map_err(|e| CliError::input(e.to_string()))?;
        no_theta.push((s, matches!(solve_theta(args.pairing, r, f.kappa, f.ds1_ds), Err(OffsetError::NoRealSolution { .. }))));
    }
    let intrinsic = mannheim_condition_check(base.as_ref(), &off, 1e-6).map_err(offset_error)?;
    let kind = classify_surface(&off);
    let max_drall = striction_data(&off).map_err(surface_error)?.max_abs_drall();

    if let Some(p) = args.output {
        let format = if p.extension().is_some_and(|e| e == "json") { Format::Json } else { Format::Csv };
        sink(Some(p), out, |w| write_rows(&rows, format, w))?;
    }
    let io = CliError::io;
    writeln!(
        out,
        "pairing={} base={} offset={} mannheim={frame_ok} central_normal_is_a={intrinsic} max_drall={:e} samples={}",
        args.pairing.label(),
        args.pairing.base_type(),
        kind.label(),
        max_drall,
        grid.len()
    )
    .map_err(io)?;
    let no_theta = intervals(&no_theta);
    if !no_theta.is_empty() {
        writeln!(out, "no_real_theta={}", fmt_intervals(&no_theta)).map_err(io)?;
    }
    Ok(exit::OK)
}

#[derive(Serialize)]
struct ReportCase<'a> {
    id: &'a str,
    verdict: mannheim_core::lab::Verdict,
    max_residual: Option<f64>,
    argmax_s: Option<f64>,
    excluded_intervals: &'a [[f64; 2]],
    params: &'a std::collections::BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct Report<'a> {
    suite_version: &'a str,
    seed: u64,
    cases: Vec<ReportCase<'a>>,
}

fn report_json(reports: &[TheoremReport], seed: u64) -> serde_json::Result<String> {
    let finite = |v: f64| v.is_finite().then_some(v);
    let cases = reports
        .iter()
        .map(|r| ReportCase {
            id: &r.id,
            verdict: r.verdict,
            max_residual: finite(r.max_residual),
            argmax_s: r.argmax_s.and_then(finite),
            excluded_intervals: &r.excluded_intervals,
            params: &r.params,
        })
        .collect();
    serde_json::to_string_pretty(&Report { suite_version: SUITE_VERSION, seed, cases })
}

pub fn theorems(filter: &[String], report: Option<&Path>, seed: u64, out: &mut dyn Write) -> Result<i32, CliError> {
    let filter = (!filter.is_empty()).then_some(filter);
    let reports = run_suite(filter, seed).map_err(|e| match e {
        LabError::UnknownId(_) => CliError::usage(e.to_string()),
    })?;
    let io = CliError::io;
    for r in &reports {
        writeln!(
            out,
            "{:<10} {:<4} max_residual={:e} tolerance={:e}",
            r.id,
            if r.passed() { "pass" } else { "FAIL" },
            r.max_residual,
            r.tolerance
        )
        .map_err(io)?;
        if let Some(e) = &r.error {
            writeln!(out, "    error: {e}").map_err(io)?;
        }
        for c in r.checks.iter().filter(|c| !c.passed) {
            writeln!(out, "    failed: {} value={:e} bound={:e}", c.name, c.value, c.bound).map_err(io)?;
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed}/{} cases passed (seed {seed})", reports.len()).map_err(io)?;
    if let Some(p) = report {
        let json = report_json(&reports, seed).map_err(|e| CliError::input(e.to_string()))?;
        std::fs::write(p, json + "\n").map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
    }
    Ok(if passed == reports.len() { exit::OK } else { exit::THEOREM })
}

#[derive(Serialize)]
struct ArcRow {
    arc: f64,
    s: f64,
}

pub fn reparam(path: &Path, n: usize, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    if n < 2 {
        return Err(CliError::usage("--points must be at least 2"));
    }
    let file = load(path)?;
    let SurfaceSource::Analytic { k, .. } = &file.source else {
        return Err(CliError::input("synthesized surfaces already have a unit-speed base curve"));
    };
    let table = reparametrize_by_arclength(k, file.domain, n).map_err(|e| CliError::geometry(e.to_string()))?;
    let rows: Vec<ArcRow> = table.into_iter().map(|(arc, s)| ArcRow { arc, s }).collect();
    sink(output, out, |w| write_rows(&rows, Format::Csv, w))?;
    Ok(exit::OK)
}
