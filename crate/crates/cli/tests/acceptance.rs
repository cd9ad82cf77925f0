//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mannheim_cli::export::{frame_rows, read_rows, write_rows, Format, FrameRow};
use mannheim_cli::surface_file::SurfaceFile;
use mannheim_core::expr::Domain;
use mannheim_core::lab::algebra::{algebra_residuals, lemma_violations};
use mannheim_core::lab::expressions::{derivative_agreement, round_trip};
use mannheim_core::lab::{run_case, TheoremCase, DEFAULT_SEED};
use mannheim_core::offset::{
    build_offset, characterization_residual, striction_offset_residual, theta_evolution_residual, OffsetPairing,
    OffsetSpec,
};
use mannheim_core::ruled::library::{helicoid, m1_minus_cone, tangent_developable};
use mannheim_core::ruled::{drall, frame_ode_residual, frenet_frame, integrate_frame, striction_data, IntegratedSurface};
use mannheim_core::{FrameType, LVec3, RuledSurface, ScalarFn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn max_over(grid: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    grid.iter().map(|&s| f(s).abs()).fold(0.0, f64::max)
}

fn dom(lo: f64, hi: f64) -> Domain {
    Domain::new(lo, hi).unwrap()
}

fn synth(kind: FrameType, kappa: &str, lo: f64, hi: f64, samples: usize) -> IntegratedSurface {
    integrate_frame(kind, ScalarFn::parse(kappa).unwrap(), ScalarFn::constant(1.0), kind.standard_seed(), LVec3::ZERO, dom(lo, hi), 1e-3)
        .unwrap()
        .with_samples(samples)
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn algebra() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let a = algebra_residuals(&mut rng, 10_000);
    let l = lemma_violations(&mut rng, 10_000);
    let el = t.elapsed();
    let worst = a.cross_orthogonality.max(a.antisymmetry).max(a.alternation);
    ensure(
        worst <= 1e-12 && l.total() == 0 && el < Duration::from_secs(1),
        format!("worst identity residual {worst:.1e}, lemma violations {}, {el:.2?}", l.total()),
    )
}

fn frames() -> Outcome {
    let t = Instant::now();
    let heli = helicoid(dom(-1.0, 1.0)).with_samples(512);
    let alpha = 1.0f64;
    let cone = m1_minus_cone(alpha, dom(0.0, 6.0)).with_samples(512);
    let ode = |s: &dyn RuledSurface, x| frame_ode_residual(s, x).unwrap().max();
    let r_h = max_over(&heli.grid(), |s| ode(&heli, s));
    let r_c = max_over(&cone.grid(), |s| ode(&cone, s));
    let k_h = max_over(&heli.grid(), |s| frenet_frame(&heli, s).unwrap().kappa);
    let k_c = max_over(&cone.grid(), |s| frenet_frame(&cone, s).unwrap().kappa - 1.0 / alpha.tanh());
    let el = t.elapsed();
    ensure(
        r_h <= 1e-7 && r_c <= 1e-7 && k_h <= 1e-8 && k_c <= 1e-8 && el < Duration::from_secs(1),
        format!("frame residuals {r_h:.1e} / {r_c:.1e}, kappa errors {k_h:.1e} / {k_c:.1e}, {el:.2?}"),
    )
}

fn developability() -> Outcome {
    let tangent = tangent_developable(dom(-1.0, 1.0)).with_samples(512);
    let heli = helicoid(dom(-1.0, 1.0)).with_samples(512);
    let d_t = max_over(&tangent.grid(), |s| drall(&tangent, s).unwrap());
    let d_h = max_over(&heli.grid(), |s| drall(&heli, s).unwrap() + 1.0);
    ensure(d_t <= 1e-10 && d_h <= 1e-10, format!("tangent developable max |drall| {d_t:.1e}, helicoid max |drall + 1| {d_h:.1e}"))
}

fn striction() -> Outcome {
    let base: Arc<dyn RuledSurface> = Arc::new(synth(FrameType::M1Minus, "-cosh(3 - s)/sinh(3 - s)", 0.0, 2.0, 512));
    let theta = ScalarFn::parse("3 - s").unwrap();
    let spec = OffsetSpec::new(base.clone(), ScalarFn::constant(1.0), theta, OffsetPairing::M1mToM1p);
    let r1 = max_over(&base.grid(), |s| striction_offset_residual(&spec, s).unwrap());
    let heli: Arc<dyn RuledSurface> = Arc::new(helicoid(dom(-1.0, 1.0)).with_samples(512));
    let spec = OffsetSpec::new(heli.clone(), ScalarFn::parse("-s").unwrap(), ScalarFn::constant(0.0), OffsetPairing::M1mToM1m);
    let r2 = max_over(&heli.grid(), |s| striction_offset_residual(&spec, s).unwrap());
    ensure(r1 <= 1e-8 && r2 <= 1e-10, format!("constant R on developable base {r1:.1e}, R = -s on helicoid {r2:.1e}"))
}

/// Characterization, offset drall and angle evolution on each segment.
fn end_to_end(segments: &[(f64, f64)], kind: FrameType, kappa: &str, pairing: OffsetPairing, limit: Duration) -> Outcome {
    let t = Instant::now();
    let (mut eq, mut dr, mut ev) = (0.0f64, 0.0f64, 0.0f64);
    for &(lo, hi) in segments {
        let n = ((512.0 * (hi - lo) / 2.0).round() as usize).max(8);
        let base: Arc<dyn RuledSurface> = Arc::new(synth(kind, kappa, lo, hi, n));
        let spec = OffsetSpec::new(base.clone(), ScalarFn::constant(1.0), ScalarFn::parse("3 - s").unwrap(), pairing);
        let grid = base.grid();
        eq = eq.max(max_over(&grid, |s| characterization_residual(base.as_ref(), 1.0, s, kind).unwrap()));
        ev = ev.max(max_over(&grid, |s| theta_evolution_residual(&spec, s).unwrap()));
        let off = build_offset(&spec).map_err(|e| e.to_string())?;
        dr = dr.max(striction_data(&off).map_err(|e| e.to_string())?.max_abs_drall());
    }
    let el = t.elapsed();
    ensure(
        eq <= 1e-8 && dr <= 1e-5 && ev <= 1e-8 && el < limit,
        format!("characterization {eq:.1e}, offset drall {dr:.1e}, angle evolution {ev:.1e}, {el:.2?}"),
    )
}

fn timelike_pair() -> Outcome {
    end_to_end(&[(0.0, 2.0)], FrameType::M1Minus, "-cosh(3 - s)/sinh(3 - s)", OffsetPairing::M1mToM1p, Duration::from_secs(10))
}

fn spacelike_pair() -> Outcome {
    let pole = 3.0 - std::f64::consts::FRAC_PI_2;
    end_to_end(&[(0.0, pole - 0.05), (pole + 0.05, 2.0)], FrameType::M1Plus, "tan(3 - s)", OffsetPairing::M1pToM2p, Duration::from_secs(10))
}

fn lab_cases(ids: &[&str]) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for id in ids {
        let r = run_case(&TheoremCase::new(id, DEFAULT_SEED).unwrap());
        ok &= r.passed();
        details.push(format!("{id} {:.1e}", r.max_residual));
        for c in r.checks.iter().filter(|c| !c.passed) {
            details.push(format!("failed `{}` {:.1e}", c.name, c.value));
        }
        if let Some(e) = r.error {
            details.push(format!("error {e}"));
        }
    }
    ensure(ok, details.join(", "))
}

fn parser() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let d = derivative_agreement(&mut rng, 1000);
    let r = round_trip(&mut rng, 1000);
    ensure(
        d.first <= 1e-6 && d.second <= 1e-6 && r.parse_failures == 0 && r.unstable_prints == 0 && r.max_rel_diff <= 1e-12,
        format!(
            "{} trees: f' {:.1e}, f'' {:.1e} relative; round trip {} failures, max diff {:.1e}",
            d.samples, d.first, d.second, r.parse_failures + r.unstable_prints, r.max_rel_diff
        ),
    )
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mannheim");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report = dir.path().join("report.json");
    let out = Command::new(bin).arg("theorems").arg("--report").arg(&report).env_remove("MANNHEIM_SEED").output().map_err(|e| e.to_string())?;
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let cases = json["cases"].as_array().cloned().unwrap_or_default();
    let passing = cases.iter().filter(|c| c["verdict"] == "pass").count();

    let mut exact = true;
    let mut mismatches = Vec::new();
    for name in ["helicoid", "cone", "coth_base"] {
        let path = root().join("surfaces").join(format!("{name}.surf"));
        let file = SurfaceFile::parse(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let surf = file.build().map_err(|e| e.to_string())?;
        let expected = frame_rows(surf.as_ref(), &file.domain.grid(64)).map_err(|e| e.to_string())?;
        for (flag, format) in [("csv", Format::Csv), ("json", Format::Json)] {
            let o = Command::new(bin).args(["frame", "--grid", "64", "--out", flag]).arg(&path).output().map_err(|e| e.to_string())?;
            let rows: Vec<FrameRow> = read_rows(format, o.stdout.as_slice()).map_err(|e| e.to_string())?;
            let mut again = Vec::new();
            write_rows(&rows, format, &mut again).map_err(|e| e.to_string())?;
            let same = o.status.success()
                && rows.len() == expected.len()
                && rows.iter().zip(&expected).all(|(a, b)| a.to_bits() == b.to_bits())
                && again == o.stdout;
            if !same {
                mismatches.push(format!("{name}.{flag}"));
            }
            exact &= same;
        }
    }
    ensure(
        out.status.code() == Some(0) && cases.len() == 13 && passing == 13 && exact,
        format!("theorems exit {:?}, {passing}/{} cases pass, exports bit-exact: {exact}{}", out.status.code(), cases.len(), if mismatches.is_empty() { String::new() } else { format!(" (mismatched: {})", mismatches.join(", ")) }),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("algebra kernel", algebra),
        ("frame correctness", frames),
        ("developability by drall", developability),
        ("offset base curve is the striction curve", striction),
        ("timelike developable pair end to end", timelike_pair),
        ("spacelike-ruled developable pair end to end", spacelike_pair),
        ("trajectory corollaries", || lab_cases(&["cor-5.3", "cor-5.4", "cor-6.3", "cor-6.4"])),
        ("angle equivalence sweep", || lab_cases(&["thm-5.1", "thm-6.1"])),
        ("parser and differentiator", parser),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += outcome.is_err() as usize;
        println!("criterion {:>2} {tag}: {name} ({detail})", i + 1);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
