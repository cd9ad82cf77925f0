//! Implementations of the registered cases.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::{algebra_residuals, lemma_violations};
use super::{CheckResult, TheoremCase};
use crate::expr::{parse_curve, Domain, ScalarFn};
use crate::lorentz::{mixed_product, LVec3};
use crate::offset::{
    build_offset, characterization_residual, developability_residual, mannheim_condition_check, offset_surface,
    solve_theta, striction_offset_residual, theta_evolution_residual, trajectory_dralls, trajectory_report,
    trajectory_surfaces, OffsetError, OffsetPairing, OffsetSpec,
};
use crate::ruled::library::{helicoid, m1_minus_cone, m1_plus_cone, tangent_developable};
use crate::ruled::{
    classify_surface, darboux_residual, drall, frame_ode_residual, frenet_frame, integrate_frame, striction_data,
    unit_director, FrameType, IntegratedSurface, RuledSurface, RuledSurfaceDef, SurfaceType,
};

type CaseResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

pub(super) struct Outcome {
    pub checks: Vec<CheckResult>,
    pub excluded: Vec<[f64; 2]>,
}

impl Outcome {
    fn new(checks: Vec<CheckResult>) -> Outcome {
        Outcome { checks, excluded: Vec::new() }
    }
}

pub(super) fn defaults(id: &str) -> (&'static str, Vec<(&'static str, f64)>) {
    let developable_pair = vec![("R", 1.0), ("theta0", 3.0), ("lo", 0.0), ("hi", 2.0), ("grid", 512.0), ("step", 1e-3)];
    let spacelike_pair =
        vec![("R", 1.0), ("theta0", 3.0), ("lo", 0.0), ("hi", 2.0), ("grid", 512.0), ("step", 1e-3), ("trim", 0.05)];
    match id {
        "lemma-2.1" => ("seeded random vectors", vec![("samples", 10_000.0)]),
        "thm-3.1" => ("tangent developable and helicoid on [-1, 1]", vec![("grid", 512.0)]),
        "frame-5-7" => (
            "helicoid, timelike/spacelike cones, synthesized M2+ surface",
            vec![("grid", 512.0), ("alpha", 1.0), ("beta", 0.6)],
        ),
        "thm-4.1" => (
            "synthesized developable M1- base, helicoid",
            vec![("R", 1.5), ("theta0", 3.0), ("grid", 512.0), ("dR", 0.4)],
        ),
        "thm-5.1" => ("M1- cone, tangent developable", vec![("alpha", 0.8), ("R_i", 1.0), ("R_ii", 0.5)]),
        "eq-25" => ("synthesized M1- and M1+ bases, variable-speed helicoid", vec![("R", 1.0), ("theta0", 3.0), ("grid", 256.0)]),
        "thm-5.2" => ("integrate_frame M1-, kappa = -coth(theta0 - s)/R", developable_pair),
        "cor-5.3" => ("integrate_frame M1-, kappa = -coth(theta0 - s)/R", vec![("R", 1.0), ("theta0", 3.0), ("grid", 128.0)]),
        "cor-5.4" => (
            "M1- cone, integrate_frame M1- base",
            vec![("alpha", 0.8), ("R_b", 0.5), ("R_c", 1.0), ("R", 1.0), ("theta0", 3.0), ("grid", 128.0)],
        ),
        "thm-6.1" => ("M1+ cone, integrate_frame M1+ base", vec![("beta", 0.6), ("R", 1.0), ("theta0", 3.0), ("grid", 256.0), ("trim", 0.05)]),
        "thm-6.2" => ("integrate_frame M1+, kappa = tan(theta0 - s)/R", spacelike_pair),
        "cor-6.3" => ("integrate_frame M1+, kappa = tan(theta0 - s)/R", vec![("R", 1.0), ("theta0", 3.0), ("grid", 128.0), ("trim", 0.05)]),
        "cor-6.4" => (
            "M1+ cone, integrate_frame M1+ base",
            vec![("beta", 0.6), ("R", 1.0), ("theta0", 3.0), ("grid", 128.0), ("trim", 0.05)],
        ),
        _ => unreachable!("unregistered id {id}"),
    }
}

pub(super) fn run(case: &TheoremCase) -> Result<Outcome, String> {
    let out = match case.id.as_str() {
        "lemma-2.1" => lemma(case),
        "thm-3.1" => thm_3_1(case),
        "frame-5-7" => frame_equations(case),
        "thm-4.1" => thm_4_1(case),
        "thm-5.1" => thm_5_1(case),
        "eq-25" => eq_25(case),
        "thm-5.2" => thm_5_2(case),
        "cor-5.3" => cor_5_3(case),
        "cor-5.4" => cor_5_4(case),
        "thm-6.1" => thm_6_1(case),
        "thm-6.2" => thm_6_2(case),
        "cor-6.3" => cor_6_3(case),
        "cor-6.4" => cor_6_4(case),
        other => return Err(format!("unregistered id {other}")),
    };
    out.map_err(|e| e.to_string())
}

fn dom(lo: f64, hi: f64) -> CaseResult<Domain> {
    Ok(Domain::new(lo, hi)?)
}

fn values(grid: &[f64], f: impl Fn(f64) -> CaseResult<f64>) -> CaseResult<Vec<(f64, f64)>> {
    grid.iter().map(|&s| Ok((s, f(s)?))).collect()
}

fn grid_check(name: &str, grid: &[f64], bound: f64, f: impl Fn(f64) -> CaseResult<f64>) -> CaseResult<CheckResult> {
    Ok(CheckResult::over_grid(name, &values(grid, f)?, bound))
}

/// `max |f|` over the grid must reach `bound`.
fn grid_at_least(name: &str, grid: &[f64], bound: f64, f: impl Fn(f64) -> CaseResult<f64>) -> CaseResult<CheckResult> {
    let v = values(grid, f)?;
    let m = v.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    Ok(CheckResult::at_least(name, m, bound))
}

fn sf(text: &str) -> CaseResult<ScalarFn> {
    Ok(ScalarFn::parse(text)?)
}

fn synth(kind: FrameType, kappa: &str, d: Domain, samples: usize, step: f64) -> CaseResult<IntegratedSurface> {
    let s = integrate_frame(kind, sf(kappa)?, ScalarFn::constant(1.0), kind.standard_seed(), LVec3::ZERO, d, step)?;
    Ok(s.with_samples(samples))
}

/// Splits `[lo, hi]` at the given poles, trimming `trim` on each side.
fn segments(lo: f64, hi: f64, poles: &[f64], trim: f64) -> (Vec<(f64, f64)>, Vec<[f64; 2]>) {
    let mut segs = Vec::new();
    let mut excluded = Vec::new();
    let mut start = lo;
    for &p in poles.iter().filter(|p| **p > lo - trim && **p < hi + trim) {
        if p - trim > start {
            segs.push((start, p - trim));
        }
        excluded.push([(p - trim).max(lo), (p + trim).min(hi)]);
        start = p + trim;
    }
    if start < hi {
        segs.push((start, hi));
    }
    (segs, excluded)
}

/// Poles of `tan(theta0 - s)` near `[lo, hi]`.
fn tan_poles(theta0: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut poles: Vec<f64> = (-20..=20).map(|k| theta0 - FRAC_PI_2 - k as f64 * PI).filter(|p| *p > lo - 1.0 && *p < hi + 1.0).collect();
    poles.sort_by(f64::total_cmp);
    poles
}

/// A developable base with prescribed curvature profile paired with its offset.
struct Pair {
    base: Arc<IntegratedSurface>,
    spec: OffsetSpec,
    r: f64,
}

impl Pair {
    fn grid(&self) -> Vec<f64> {
        self.base.grid()
    }
}

/// Bases on each pole-free segment of `[lo, hi]`.
fn pairs(
    kind: FrameType,
    kappa: &dyn Fn(f64, f64) -> String,
    pairing: OffsetPairing,
    case: &TheoremCase,
    poles: &[f64],
) -> CaseResult<(Vec<Pair>, Vec<[f64; 2]>)> {
    let r = case.param("R");
    let theta0 = case.param("theta0");
    let (lo, hi) = (case.params.get("lo").copied().unwrap_or(0.0), case.params.get("hi").copied().unwrap_or(2.0));
    let trim = case.params.get("trim").copied().unwrap_or(0.05);
    let step = case.params.get("step").copied().unwrap_or(1e-3);
    let grid = case.param("grid");
    let (segs, excluded) = segments(lo, hi, poles, trim);
    let mut out = Vec::new();
    for (a, b) in segs {
        let n = ((grid * (b - a) / (hi - lo)).round() as usize).max(8);
        let base = Arc::new(synth(kind, &kappa(theta0, r), dom(a, b)?, n, step)?);
        let spec = OffsetSpec::new(base.clone(), ScalarFn::constant(r), sf(&format!("({theta0}) - s"))?, pairing);
        out.push(Pair { base, spec, r });
    }
    Ok((out, excluded))
}

fn coth_kappa(theta0: f64, r: f64) -> String {
    format!("-cosh(({theta0}) - s)/sinh(({theta0}) - s)/({r})")
}

fn tanh_kappa(theta0: f64, r: f64) -> String {
    format!("-tanh(({theta0}) - s)/({r})")
}

fn tan_kappa(theta0: f64, r: f64) -> String {
    format!("tan(({theta0}) - s)/({r})")
}

fn coth_pair(case: &TheoremCase, pairing: OffsetPairing) -> CaseResult<Pair> {
    let kappa = if pairing == OffsetPairing::M1mToM1p { coth_kappa } else { tanh_kappa };
    let theta0 = case.param("theta0");
    let (mut v, _) = pairs(FrameType::M1Minus, &kappa, pairing, case, &[theta0])?;
    v.pop().ok_or_else(|| "empty domain".into())
}

fn tan_pairs(case: &TheoremCase) -> CaseResult<(Vec<Pair>, Vec<[f64; 2]>)> {
    let theta0 = case.param("theta0");
    let (lo, hi) = (case.params.get("lo").copied().unwrap_or(0.0), case.params.get("hi").copied().unwrap_or(2.0));
    pairs(FrameType::M1Plus, &tan_kappa, OffsetPairing::M1pToM2p, case, &tan_poles(theta0, lo, hi))
}

/// Concatenates per-segment grid checks into one.
fn merged(name: &str, bound: f64, pairs: &[Pair], f: impl Fn(&Pair, f64) -> CaseResult<f64>) -> CaseResult<CheckResult> {
    let mut all = Vec::new();
    for p in pairs {
        all.extend(values(&p.grid(), |s| f(p, s))?);
    }
    Ok(CheckResult::over_grid(name, &all, bound))
}

fn bisect(f: impl Fn(f64) -> CaseResult<f64>, mut lo: f64, mut hi: f64) -> CaseResult<f64> {
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo * fhi > 0.0 {
        return Err(format!("no sign change on [{lo}, {hi}]").into());
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * mid.abs().max(1.0) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Offset of `base` whose angle takes the value `theta` at `s0` and obeys `θ' = -σ`.
fn sweep_spec(base: &Arc<RuledSurfaceDef>, r: f64, theta: f64, s0: f64, pairing: OffsetPairing) -> CaseResult<OffsetSpec> {
    let sigma = frenet_frame(base.as_ref(), s0)?.ds1_ds;
    let theta_fn = crate::offset::affine(theta + sigma * s0, -sigma);
    Ok(OffsetSpec::new(base.clone(), ScalarFn::constant(r), theta_fn, pairing))
}

fn lemma(case: &TheoremCase) -> CaseResult<Outcome> {
    let n = case.param("samples") as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(case.seed);
    let alg = algebra_residuals(&mut rng, n);
    let lem = lemma_violations(&mut rng, n);
    Ok(Outcome::new(vec![
        CheckResult::at_most("cross product orthogonal to both factors", alg.cross_orthogonality, 1e-12),
        CheckResult::at_most("cross product antisymmetry", alg.antisymmetry, 1e-12),
        CheckResult::at_most("mixed product alternation", alg.alternation, 1e-12),
        CheckResult::at_most("inner product symmetry and bilinearity", alg.bilinearity, 1e-12),
        CheckResult::at_most("(i) orthogonal timelike pairs", lem.timelike_pairs as f64, 0.0),
        CheckResult::at_most("(ii) null pairs: orthogonal iff dependent, mismatches", lem.null_pairs as f64, 0.0),
        CheckResult::at_most("(iii) timelike vector orthogonal to null vector", lem.mixed_pairs as f64, 0.0),
    ]))
}

fn thm_3_1(case: &TheoremCase) -> CaseResult<Outcome> {
    let n = case.param("grid") as usize;
    let d = dom(-1.0, 1.0)?;
    let tangent = tangent_developable(d).with_samples(n);
    let heli = helicoid(d).with_samples(n);
    let grid = d.grid(n);
    let mixed = |surf: &RuledSurfaceDef, s: f64| -> CaseResult<f64> {
        let k1 = surf.base_derivs(s, 1)?[1];
        let q = unit_director(surf, s, 1)?;
        Ok(mixed_product(k1, q[0], q[1]))
    };
    let agree = |surf: &RuledSurfaceDef| -> CaseResult<f64> {
        let flag = striction_data(surf)?.developable;
        let collinear = values(&grid, |s| mixed(surf, s))?.iter().all(|v| v.1.abs() <= 1e-8);
        Ok(if flag == collinear { 0.0 } else { 1.0 })
    };
    Ok(Outcome::new(vec![
        grid_check("tangent developable |drall|", &grid, 1e-10, |s| Ok(drall(&tangent, s)?))?,
        grid_check("helicoid |drall + 1|", &grid, 1e-10, |s| Ok(drall(&heli, s)? + 1.0))?,
        CheckResult::at_most("tangent developable: drall test agrees with tangent-plane collinearity", agree(&tangent)?, 0.0),
        CheckResult::at_most("helicoid: drall test agrees with tangent-plane collinearity", agree(&heli)?, 0.0),
        CheckResult::at_least("helicoid: tangent planes turn along rulings", {
            let v = values(&grid, |s| mixed(&heli, s))?;
            v.iter().map(|p| p.1.abs()).fold(f64::INFINITY, f64::min)
        }, 0.5),
    ]))
}

fn frame_equations(case: &TheoremCase) -> CaseResult<Outcome> {
    let n = case.param("grid") as usize;
    let (alpha, beta) = (case.param("alpha"), case.param("beta"));
    let heli = helicoid(dom(-1.0, 1.0)?).with_samples(n);
    let cone = m1_minus_cone(alpha, dom(0.0, 6.0)?).with_samples(n);
    let pcone = m1_plus_cone(beta, dom(0.0, 6.0)?).with_samples(n);
    let m2 = integrate_frame(
        FrameType::M2Plus,
        sf("0.5 + 0.2*sin(s)")?,
        sf("1 + 0.1*s")?,
        FrameType::M2Plus.standard_seed(),
        LVec3::ZERO,
        dom(0.0, 2.0)?,
        1e-3,
    )?
    .with_samples(n);
    let ode = |surf: &dyn RuledSurface, s: f64| -> CaseResult<f64> { Ok(frame_ode_residual(surf, s)?.max()) };
    let kappa = |surf: &dyn RuledSurface, s: f64| -> CaseResult<f64> { Ok(frenet_frame(surf, s)?.kappa) };
    let defect = |surf: &dyn RuledSurface, s: f64| -> CaseResult<f64> { Ok(frenet_frame(surf, s)?.defect()) };
    let gh = heli.grid();
    let gc = cone.grid();
    let gp = pcone.grid();
    let gm = m2.grid();
    let k_in = ScalarFn::parse("0.5 + 0.2*sin(s)")?;
    Ok(Outcome::new(vec![
        grid_check("helicoid frame equations", &gh, 1e-7, |s| ode(&heli, s))?,
        grid_check("helicoid Darboux form", &gh, 1e-7, |s| Ok(darboux_residual(&heli, s)?))?,
        grid_check("helicoid kappa = 0", &gh, 1e-8, |s| kappa(&heli, s))?,
        grid_check("helicoid frame pseudo-orthonormality and cross relations", &gh, 1e-8, |s| defect(&heli, s))?,
        grid_check("M1- cone frame equations", &gc, 1e-7, |s| ode(&cone, s))?,
        grid_check("M1- cone Darboux form", &gc, 1e-7, |s| Ok(darboux_residual(&cone, s)?))?,
        grid_check("M1- cone kappa = coth(alpha)", &gc, 1e-8, |s| Ok(kappa(&cone, s)? - 1.0 / alpha.tanh()))?,
        grid_check("M1- cone ds1/ds = sinh(alpha)", &gc, 1e-8, |s| Ok(frenet_frame(&cone, s)?.ds1_ds - alpha.sinh()))?,
        grid_check("M1- cone frame defect", &gc, 1e-8, |s| defect(&cone, s))?,
        grid_check("M1+ cone frame equations", &gp, 1e-7, |s| ode(&pcone, s))?,
        grid_check("M1+ cone kappa = tanh(beta)", &gp, 1e-8, |s| Ok(kappa(&pcone, s)? - beta.tanh()))?,
        grid_check("M1+ cone frame defect", &gp, 1e-8, |s| defect(&pcone, s))?,
        grid_check("synthesized M2+ frame equations", &gm, 1e-6, |s| ode(&m2, s))?,
        grid_check("synthesized M2+ Darboux form", &gm, 1e-6, |s| Ok(darboux_residual(&m2, s)?))?,
        grid_check("synthesized M2+ measured kappa = prescribed kappa", &gm, 1e-6, |s| Ok(kappa(&m2, s)? - k_in.eval(s)?))?,
        grid_check("synthesized M2+ frame defect", &gm, 1e-8, |s| defect(&m2, s))?,
    ]))
}

fn thm_4_1(case: &TheoremCase) -> CaseResult<Outcome> {
    let (r, theta0, n, dr) = (case.param("R"), case.param("theta0"), case.param("grid") as usize, case.param("dR"));
    let base: Arc<dyn RuledSurface> =
        Arc::new(synth(FrameType::M1Minus, &coth_kappa(theta0, r), dom(0.0, 2.0)?, n, 1e-3)?);
    let grid = base.grid();
    let theta = sf(&format!("({theta0}) - s"))?;
    let constant = OffsetSpec::new(base.clone(), ScalarFn::constant(r), theta.clone(), OffsetPairing::M1mToM1p);
    let varying = OffsetSpec::new(base.clone(), crate::offset::affine(r, dr), theta, OffsetPairing::M1mToM1p);
    let off = build_offset(&constant)?;
    let heli: Arc<dyn RuledSurface> = Arc::new(helicoid(dom(-1.0, 1.0)?).with_samples(n));
    let hgrid = heli.grid();
    let cancel = OffsetSpec::new(heli.clone(), sf("-s")?, ScalarFn::constant(0.0), OffsetPairing::M1mToM1m);
    let fixed = OffsetSpec::new(heli, ScalarFn::constant(r), ScalarFn::constant(0.0), OffsetPairing::M1mToM1m);
    let coarse = base.domain().interior_grid(64, 0.0);
    Ok(Outcome::new(vec![
        grid_check("developable base, constant R: striction residual", &grid, 1e-8, |s| Ok(striction_offset_residual(&constant, s)?))?,
        grid_check("developable base, constant R: c + R a is the striction curve of the offset", &coarse, 1e-8, |s| {
            let k1 = off.base_derivs(s, 1)?[1];
            let q1 = unit_director(&off, s, 1)?[1];
            Ok(q1.dot(&k1) / (q1.euclid_norm() * k1.euclid_norm()))
        })?,
        grid_check("developable base, varying R: residual equals dR/ds", &grid, 1e-8, |s| Ok(striction_offset_residual(&varying, s)? - dr))?,
        grid_check("helicoid, R = -s: striction residual", &hgrid, 1e-10, |s| Ok(striction_offset_residual(&cancel, s)?))?,
        grid_check("helicoid, constant R: residual equals -drall", &hgrid, 1e-10, |s| Ok(striction_offset_residual(&fixed, s)? - 1.0))?,
    ]))
}

fn thm_5_1(case: &TheoremCase) -> CaseResult<Outcome> {
    let alpha = case.param("alpha");
    let base = Arc::new(m1_minus_cone(alpha, dom(0.0, 2.0)?).with_samples(16));
    let mut checks = Vec::new();
    for (pairing, r, label) in [(OffsetPairing::M1mToM1p, case.param("R_i"), "(i)"), (OffsetPairing::M1mToM1m, case.param("R_ii"), "(ii)")] {
        let mut worst: Vec<(f64, f64)> = Vec::new();
        for s0 in [0.5, 1.0, 1.5] {
            let f = frenet_frame(base.as_ref(), s0)?;
            let formula = solve_theta(pairing, r, f.kappa, f.ds1_ds)?;
            let numeric = bisect(
                |th| Ok(drall(&offset_surface(&sweep_spec(&base, r, th, s0, pairing)?), s0)?),
                formula - 0.3,
                formula + 0.3,
            )?;
            worst.push((s0, numeric - formula));
        }
        checks.push(CheckResult::over_grid(&format!("{label} theta root of the developability condition vs offset drall root"), &worst, 1e-8));
    }
    // κ = 0: the M1+ offset can never be developable
    let flat = Arc::new(tangent_developable(dom(-1.0, 1.0)?).with_samples(16));
    let f = frenet_frame(flat.as_ref(), 0.0)?;
    let no_root = matches!(solve_theta(OffsetPairing::M1mToM1p, 1.0, f.kappa, f.ds1_ds), Err(OffsetError::NoRealSolution { .. }));
    checks.push(CheckResult::at_most("(i) kappa = 0: no real theta", if no_root { 0.0 } else { 1.0 }, 0.0));
    let mut min_sin = f64::INFINITY;
    for i in 0..=60 {
        let th = -3.0 + 0.1 * i as f64;
        let spec = OffsetSpec::new(flat.clone(), ScalarFn::constant(1.0), crate::offset::affine(th, -f.ds1_ds), OffsetPairing::M1mToM1p);
        let off = offset_surface(&spec);
        let dc = off.base_derivs(0.0, 1)?[1];
        let q = unit_director(&off, 0.0, 0)?[0];
        min_sin = min_sin.min(dc.euclid_sin_angle(&q));
    }
    checks.push(CheckResult::at_least("(i) kappa = 0: striction tangent never along q* over the theta sweep", min_sin, 1e-3));
    Ok(Outcome::new(checks))
}

fn eq_25(case: &TheoremCase) -> CaseResult<Outcome> {
    let (r, theta0) = (case.param("R"), case.param("theta0"));
    let n = case.param("grid") as usize;
    let minus = coth_pair(&TheoremCase { params: [("grid".to_string(), n as f64), ("R".into(), r), ("theta0".into(), theta0)].into(), ..case.clone() }, OffsetPairing::M1mToM1p)?;
    let grid = minus.grid();
    let stalled = OffsetSpec { theta: ScalarFn::constant(theta0), ..minus.spec.clone() };
    let k = parse_curve("(0, 0, s)")?;
    let q = parse_curve("(cosh(s + s^3/3), sinh(s + s^3/3), 0)")?;
    let speedy: Arc<dyn RuledSurface> = Arc::new(RuledSurfaceDef::new(k, q, dom(-1.0, 1.0)?).with_samples(n));
    let arc = OffsetSpec::new(speedy.clone(), ScalarFn::constant(r), sf("-(s + s^3/3)")?, OffsetPairing::M1mToM1m);
    let sgrid = speedy.grid();

    let slow = OffsetSpec { theta: sf(&format!("({theta0}) - 0.5*s"))?, ..minus.spec.clone() };
    let normal_gap = |spec: &OffsetSpec| -> CaseResult<Vec<(f64, f64)>> {
        let off = offset_surface(spec);
        values(&spec.base.domain().interior_grid(32, 0.0), |s| {
            Ok(frenet_frame(&off, s)?.h.euclid_sin_angle(&frenet_frame(spec.base.as_ref(), s)?.a))
        })
    };
    let tcase = TheoremCase { params: [("grid".to_string(), n as f64), ("R".into(), r), ("theta0".into(), theta0), ("lo".into(), 0.0), ("hi".into(), 1.3)].into(), ..case.clone() };
    let (plus, _) = tan_pairs(&tcase)?;
    let plus = &plus[0];
    let plus_slow = OffsetSpec { theta: sf(&format!("({theta0}) - 0.5*s"))?, ..plus.spec.clone() };
    let max_gap = |v: Vec<(f64, f64)>| v.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(Outcome::new(vec![
        grid_check("M1- base, theta = theta0 - s: dtheta/ds + ds1/ds", &grid, 1e-8, |s| Ok(theta_evolution_residual(&minus.spec, s)?))?,
        grid_check("constant theta: residual equals ds1/ds = 1", &grid, 1e-12, |s| Ok(theta_evolution_residual(&stalled, s)? - 1.0))?,
        grid_check("variable-speed base, theta = -arclength of the director image", &sgrid, 1e-8, |s| Ok(theta_evolution_residual(&arc, s)?))?,
        CheckResult::over_grid("M1- base, theta' = -ds1/ds: h* parallel to a", &normal_gap(&minus.spec)?, 1e-8),
        CheckResult::at_least("M1- base, theta' = -ds1/ds / 2: h* leaves a", max_gap(normal_gap(&slow)?), 1e-3),
        grid_check("M1+ base, theta = theta0 - s: dtheta/ds + ds1/ds", &plus.grid(), 1e-8, |s| Ok(theta_evolution_residual(&plus.spec, s)?))?,
        CheckResult::over_grid("M1+ base, theta' = -ds1/ds: h* parallel to a", &normal_gap(&plus.spec)?, 1e-8),
        CheckResult::at_least("M1+ base, theta' = -ds1/ds / 2: h* leaves a", max_gap(normal_gap(&plus_slow)?), 1e-3),
    ]))
}

/// Checks shared by both developable pairings on a synthesized base.
fn pair_checks(label: &str, pairs: &[Pair], variant: FrameType, target: SurfaceType) -> CaseResult<Vec<CheckResult>> {
    let mut checks = vec![merged(&format!("{label}: characterization residual"), 1e-8, pairs, |p, s| {
        Ok(characterization_residual(p.base.as_ref(), p.r, s, variant)?)
    })?];
    let mut dralls = Vec::new();
    let mut types = 0.0;
    let mut mannheim = 0.0;
    for p in pairs {
        let off = build_offset(&p.spec)?;
        let sd = striction_data(&off)?;
        dralls.extend(sd.points.iter().map(|q| (q.s, q.drall)));
        if classify_surface(&off) != target {
            types += 1.0;
        }
        if !mannheim_condition_check(p.base.as_ref(), &off, 1e-6)? {
            mannheim += 1.0;
        }
    }
    checks.push(CheckResult::over_grid(&format!("{label}: offset drall"), &dralls, 1e-5));
    checks.push(merged(&format!("{label}: dtheta/ds + ds1/ds"), 1e-8, pairs, |p, s| Ok(theta_evolution_residual(&p.spec, s)?))?);
    checks.push(merged(&format!("{label}: developability condition"), 1e-6, pairs, |p, s| {
        let f = frenet_frame(p.base.as_ref(), s)?;
        Ok(developability_residual(p.spec.pairing, p.spec.theta.eval(s)?, p.r, f.kappa, f.ds1_ds))
    })?);
    checks.push(CheckResult::at_most(&format!("{label}: offset type is {}", target.label()), types, 0.0));
    checks.push(CheckResult::at_most(&format!("{label}: central normal of offset = asymptotic normal of base"), mannheim, 0.0));
    Ok(checks)
}

fn thm_5_2(case: &TheoremCase) -> CaseResult<Outcome> {
    let plus = coth_pair(case, OffsetPairing::M1mToM1p)?;
    let minus = coth_pair(case, OffsetPairing::M1mToM1m)?;
    let mut checks = pair_checks("M1+ offset", std::slice::from_ref(&plus), FrameType::M1Minus, SurfaceType::M1Plus)?;
    checks.extend(pair_checks("M1- offset", std::slice::from_ref(&minus), FrameType::M1Minus, SurfaceType::M1Minus)?);
    // a perturbed profile violates the characterization and the θ evolution
    let (r, theta0) = (case.param("R"), case.param("theta0"));
    let bent = synth(FrameType::M1Minus, &format!("1.2*({})", coth_kappa(theta0, r)), plus.base.domain(), 64, 1e-3)?;
    let grid = bent.domain().interior_grid(64, 0.01);
    checks.push(grid_at_least("perturbed profile: characterization residual", &grid, 1e-3, |s| {
        Ok(characterization_residual(&bent, r, s, FrameType::M1Minus)?)
    })?);
    let theta_at = |s: f64| -> CaseResult<f64> {
        let f = frenet_frame(&bent, s)?;
        Ok(solve_theta(OffsetPairing::M1mToM1p, r, f.kappa, f.ds1_ds)?)
    };
    checks.push(grid_at_least("perturbed profile: pointwise developable theta violates dtheta/ds = -ds1/ds", &grid, 1e-3, |s| {
        let e = 1e-5;
        Ok((theta_at(s + e)? - theta_at(s - e)?) / (2.0 * e) + frenet_frame(&bent, s)?.ds1_ds)
    })?);
    Ok(Outcome::new(checks))
}

fn thm_6_2(case: &TheoremCase) -> CaseResult<Outcome> {
    let (pairs, excluded) = tan_pairs(case)?;
    let mut checks = pair_checks("M2+ offset", &pairs, FrameType::M1Plus, SurfaceType::M2Plus)?;
    let (r, theta0) = (case.param("R"), case.param("theta0"));
    let d = pairs[0].base.domain();
    let bent = synth(FrameType::M1Plus, &format!("1.2*({})", tan_kappa(theta0, r)), d, 64, 1e-3)?;
    checks.push(grid_at_least("perturbed profile: characterization residual", &d.interior_grid(64, 0.01), 1e-3, |s| {
        Ok(characterization_residual(&bent, r, s, FrameType::M1Plus)?)
    })?);
    Ok(Outcome { checks, excluded })
}

fn trajectory_checks(label: &str, pairs: &[Pair]) -> CaseResult<Vec<CheckResult>> {
    let (mut b, mut m) = (Vec::new(), Vec::new());
    for p in pairs {
        let grid = p.grid();
        let rep = trajectory_report(&p.spec, &grid, 1e-8)?;
        let (hs, as_) = trajectory_surfaces(&p.spec);
        for &s in &grid {
            let f = frenet_frame(p.base.as_ref(), s)?;
            b.push((s, frenet_frame(&hs, s)?.h.euclid_sin_angle(&f.h)));
            m.push((s, frenet_frame(&as_, s)?.h.euclid_sin_angle(&f.a)));
        }
        debug_assert!(rep.bertrand_sin == b.iter().map(|x| x.1).fold(0.0, f64::max) || pairs.len() > 1);
    }
    Ok(vec![
        CheckResult::over_grid(&format!("{label}: central normal of the h* trajectory parallel to h"), &b, 1e-8),
        CheckResult::over_grid(&format!("{label}: central normal of the a* trajectory parallel to a"), &m, 1e-8),
    ])
}

fn cor_5_3(case: &TheoremCase) -> CaseResult<Outcome> {
    let mut checks = trajectory_checks("M1+ offset", &[coth_pair(case, OffsetPairing::M1mToM1p)?])?;
    checks.extend(trajectory_checks("M1- offset", &[coth_pair(case, OffsetPairing::M1mToM1m)?])?);
    Ok(Outcome::new(checks))
}

fn cor_6_3(case: &TheoremCase) -> CaseResult<Outcome> {
    let (pairs, excluded) = tan_pairs(case)?;
    Ok(Outcome { checks: trajectory_checks("M2+ offset", &pairs)?, excluded })
}

/// Closed-form `p_{h*}` against the drall of the explicitly built `φ_{h*}`.
fn p_h_check(label: &str, pairs: &[Pair]) -> CaseResult<Vec<CheckResult>> {
    let mut diff = Vec::new();
    let mut smallest = f64::INFINITY;
    for p in pairs {
        let (hs, _) = trajectory_surfaces(&p.spec);
        for s in p.grid() {
            let e = trajectory_dralls(&p.spec, s)?;
            diff.push((s, drall(&hs, s)? - e.p_h_star));
            smallest = smallest.min(e.p_h_star.abs());
        }
    }
    Ok(vec![
        CheckResult::over_grid(&format!("{label}: closed-form p_h* vs drall of the h* trajectory"), &diff, 1e-5),
        CheckResult::at_least(&format!("{label}: h* trajectory is not developable (min |p_h*|)"), smallest, 1e-3),
    ])
}

/// θ root of the closed-form zero condition of `p_{a*}` against the root of
/// the numeric drall of `φ_{a*}` at fixed `s0`.
fn p_a_roots(
    label: &str,
    base: &Arc<RuledSurfaceDef>,
    r: f64,
    pairing: OffsetPairing,
    formula: impl Fn(f64) -> f64,
) -> CaseResult<CheckResult> {
    let mut diffs = Vec::new();
    for s0 in [0.5, 1.0, 1.5] {
        let th = formula(s0);
        if !th.is_finite() {
            return Err(format!("{label}: no closed-form root at s = {s0}").into());
        }
        let numeric = bisect(
            |t| {
                let spec = sweep_spec(base, r, t, s0, pairing)?;
                Ok(drall(&trajectory_surfaces(&spec).1, s0)?)
            },
            th - 0.3,
            th + 0.3,
        )?;
        diffs.push((s0, numeric - th));
    }
    Ok(CheckResult::over_grid(label, &diffs, 1e-8))
}

fn kappa_pole(kind: FrameType, pairing: OffsetPairing) -> CaseResult<CheckResult> {
    let flat = synth(kind, "0", dom(0.0, 1.0)?, 16, 1e-3)?;
    let spec = OffsetSpec::new(Arc::new(flat), ScalarFn::constant(1.0), sf("1 - s")?, pairing);
    let hit = matches!(trajectory_dralls(&spec, 0.5), Err(OffsetError::DivisionByZero(_)));
    Ok(CheckResult::at_most("kappa = 0: p_h* reported as a pole", if hit { 0.0 } else { 1.0 }, 0.0))
}

fn cor_5_4(case: &TheoremCase) -> CaseResult<Outcome> {
    let mut checks = p_h_check("M1+ offset", &[coth_pair(case, OffsetPairing::M1mToM1p)?])?;
    checks.extend(p_h_check("M1- offset", &[coth_pair(case, OffsetPairing::M1mToM1m)?])?);
    checks.push(kappa_pole(FrameType::M1Minus, OffsetPairing::M1mToM1m)?);
    let alpha = case.param("alpha");
    let cone = Arc::new(m1_minus_cone(alpha, dom(0.0, 2.0)?).with_samples(16));
    let sk = frenet_frame(cone.as_ref(), 0.5)?;
    let sk = sk.ds1_ds * sk.kappa;
    let (rb, rc) = (case.param("R_b"), case.param("R_c"));
    // sinh θ + R σκ cosh θ = 0 and cosh θ + R σκ sinh θ = 0
    checks.push(p_a_roots("(b) M1+ offset: zero set of p_a*", &cone, rb, OffsetPairing::M1mToM1p, |_| (-rb * sk).atanh())?);
    checks.push(p_a_roots("(c) M1- offset: zero set of p_a*", &cone, rc, OffsetPairing::M1mToM1m, |_| (-1.0 / (rc * sk)).atanh())?);
    Ok(Outcome::new(checks))
}

fn cor_6_4(case: &TheoremCase) -> CaseResult<Outcome> {
    let (pairs, excluded) = tan_pairs(case)?;
    let mut checks = p_h_check("M2+ offset", &pairs)?;
    checks.push(kappa_pole(FrameType::M1Plus, OffsetPairing::M1pToM2p)?);
    let beta = case.param("beta");
    let cone = Arc::new(m1_plus_cone(beta, dom(0.0, 2.0)?).with_samples(16));
    let f = frenet_frame(cone.as_ref(), 0.5)?;
    let x = case.param("R") * f.ds1_ds * f.kappa;
    // cos θ + R σκ sin θ = 0
    checks.push(p_a_roots("M2+ offset: zero set of p_a*", &cone, case.param("R"), OffsetPairing::M1pToM2p, |_| (-1.0 / x).atan())?);
    Ok(Outcome { checks, excluded })
}

fn thm_6_1(case: &TheoremCase) -> CaseResult<Outcome> {
    let (beta, r) = (case.param("beta"), case.param("R"));
    let cone = Arc::new(m1_plus_cone(beta, dom(0.0, 2.0)?).with_samples(16));
    let mut roots = Vec::new();
    for s0 in [0.5, 1.0, 1.5] {
        let f = frenet_frame(cone.as_ref(), s0)?;
        let formula = solve_theta(OffsetPairing::M1pToM2p, r, f.kappa, f.ds1_ds)?;
        let numeric = bisect(
            |th| Ok(drall(&offset_surface(&sweep_spec(&cone, r, th, s0, OffsetPairing::M1pToM2p)?), s0)?),
            formula - 0.3,
            formula + 0.3,
        )?;
        roots.push((s0, numeric - formula));
    }
    let (pairs, excluded) = tan_pairs(case)?;
    let mut checks = vec![CheckResult::over_grid("theta root of the developability condition vs offset drall root", &roots, 1e-8)];
    checks.push(merged("developable pair: developability condition", 1e-6, &pairs, |p, s| {
        let f = frenet_frame(p.base.as_ref(), s)?;
        Ok(developability_residual(p.spec.pairing, p.spec.theta.eval(s)?, p.r, f.kappa, f.ds1_ds))
    })?);
    let mut dralls = Vec::new();
    for p in &pairs {
        let off = build_offset(&p.spec)?;
        dralls.extend(striction_data(&off)?.points.iter().map(|q| (q.s, q.drall)));
    }
    checks.push(CheckResult::over_grid("developable pair: offset drall", &dralls, 1e-5));
    Ok(Outcome { checks, excluded })
}
