use super::library::*;
use super::*;
use crate::expr::{parse_curve, ScalarFn};

fn dom(lo: f64, hi: f64) -> Domain {
    Domain::new(lo, hi).unwrap()
}

fn close(a: LVec3, b: LVec3, tol: f64) -> bool {
    (a - b).euclid_norm() <= tol
}

fn surface(k: &str, q: &str) -> RuledSurfaceDef {
    RuledSurfaceDef::new(parse_curve(k).unwrap(), parse_curve(q).unwrap(), dom(-1.0, 1.0)).with_samples(64)
}

#[test]
fn helicoid_points_and_normal() {
    let s = helicoid(dom(-1.0, 1.0));
    assert!(close(eval_surface(&s, 0.0, 1.0).unwrap(), LVec3::new(1.0, 0.0, 0.0), 1e-15));
    assert!(close(eval_surface(&s, 0.0, 2.0).unwrap(), LVec3::new(2.0, 0.0, 0.0), 1e-15));
    assert!(close(eval_surface(&s, 0.5, 0.0).unwrap(), LVec3::new(0.0, 0.0, 0.5), 1e-15));
    let n = surface_normal(&s, 0.0, 0.0).unwrap();
    assert!(close(n.m, LVec3::new(0.0, -1.0, 0.0), 1e-15));
    assert_eq!(n.character, SurfaceCharacter::Timelike);
    assert!(eval_surface(&s, 2.0, 0.0).is_err());
}

#[test]
fn normal_tends_to_asymptotic_normal() {
    for surf in [helicoid(dom(-1.0, 1.0)), m1_minus_cone(1.0, dom(-1.0, 1.0))] {
        for s in [-0.5, 0.3] {
            let m = surface_normal(&surf, s, 1e6).unwrap().m;
            let a = frenet_frame(&surf, s).unwrap().a;
            assert!(close(m, a, 1e-5) || close(m, -a, 1e-5), "{m} vs {a}");
        }
    }
}

#[test]
fn cylinder_is_singular_and_cylindrical() {
    let s = surface("(0, 0, s)", "(1, 0, 0)");
    assert!(matches!(striction_curve(&s, 0.0), Err(SurfaceError::Cylindrical(_))));
    assert!(matches!(drall(&s, 0.0), Err(SurfaceError::Cylindrical(_))));
    let t = surface("(0, s, 0)", "(0, 1, 0)");
    assert!(matches!(surface_normal(&t, 0.0, 0.0), Err(SurfaceError::Singular(..))));
    assert!(matches!(classify_surface(&s), SurfaceType::Degenerate(_)));
}

#[test]
fn striction_and_drall_examples() {
    let h = helicoid(dom(-1.0, 1.0));
    let t = tangent_developable(dom(-1.0, 1.0));
    for s in [-0.9, 0.0, 0.4] {
        assert!(close(striction_curve(&h, s).unwrap(), LVec3::new(0.0, 0.0, s), 1e-14));
        assert!(close(striction_curve(&t, s).unwrap(), LVec3::new(s.sinh(), s.cosh(), 0.0), 1e-14));
        assert!((drall(&h, s).unwrap() + 1.0).abs() < 1e-14);
        assert!(drall(&t, s).unwrap().abs() < 1e-14);
    }
    let flipped = surface("(0, 0, s)", "(-cosh(s), -sinh(s), 0)");
    assert!((drall(&flipped, 0.3).unwrap() + 1.0).abs() < 1e-14);
    assert!(!striction_data(&h).unwrap().developable);
    assert!(striction_data(&t).unwrap().developable);
}

#[test]
fn striction_tangent_is_orthogonal_to_director_speed() {
    let s = surface("(s^2, sin(s), s)", "(cosh(s), sinh(s), 0.3*s)");
    for t in [-0.5, 0.1, 0.7] {
        let q = unit_director(&s, t, 1).unwrap();
        let dc = striction_tangent(&s, t).unwrap();
        assert!(q[1].dot(&dc).abs() < 1e-8);
        // finite-difference oracle for the tangent
        let e = 1e-5;
        let fd = (striction_curve(&s, t + e).unwrap() - striction_curve(&s, t - e).unwrap()) / (2.0 * e);
        assert!(close(dc, fd, 1e-8));
    }
}

#[test]
fn classification_examples() {
    assert_eq!(classify_surface(&helicoid(dom(-1.0, 1.0))), SurfaceType::M1Minus);
    assert_eq!(classify_surface(&m1_minus_cone(1.0, dom(0.0, 6.0))), SurfaceType::M1Minus);
    assert_eq!(classify_surface(&m1_plus_cone(0.5, dom(0.0, 6.0))), SurfaceType::M1Plus);
    // A spacelike director whose derivative is timelike always has a timelike
    // central normal, which is the M2+ configuration.
    assert_eq!(classify_surface(&surface("(0, 0, s)", "(sinh(s), cosh(s), 0)")), SurfaceType::M2Plus);
    // causal character of q changes at s = 0
    assert!(matches!(classify_surface(&surface("(0, 0, s)", "(1, 2*s, 0.5)")), SurfaceType::Degenerate(_)));
}

#[test]
fn helicoid_frame() {
    let surf = helicoid(dom(-1.0, 1.0));
    for s in [-0.7, 0.0, 0.9] {
        let f = frenet_frame(&surf, s).unwrap();
        assert_eq!(f.kind, FrameType::M1Minus);
        assert!(close(f.h, LVec3::new(s.sinh(), s.cosh(), 0.0), 1e-14));
        assert!(close(f.a, LVec3::new(0.0, 0.0, 1.0), 1e-14));
        assert!((f.ds1_ds - 1.0).abs() < 1e-14);
        assert!(f.kappa.abs() < 1e-14);
        assert!(f.defect() < 1e-12);
    }
}

#[test]
fn cone_curvatures() {
    let alpha: f64 = 1.0;
    let c = m1_minus_cone(alpha, dom(0.0, 6.0));
    let beta: f64 = 0.6;
    let p = m1_plus_cone(beta, dom(0.0, 6.0));
    for s in [0.5, 2.0, 4.5] {
        let f = frenet_frame(&c, s).unwrap();
        assert!((f.ds1_ds - alpha.sinh()).abs() < 1e-13);
        assert!((f.kappa - 1.0 / alpha.tanh()).abs() < 1e-12);
        let a = LVec3::new(-alpha.sinh(), -alpha.cosh() * s.cos(), -alpha.cosh() * s.sin());
        assert!(close(f.a, a, 1e-12));
        let g = frenet_frame(&p, s).unwrap();
        assert!((g.ds1_ds - beta.cosh()).abs() < 1e-13);
        assert!((g.kappa - beta.tanh()).abs() < 1e-12);
        assert!(g.defect() < 1e-12);
        let j = curvature_jet(&p, s).unwrap();
        assert!((j.kappa - beta.tanh()).abs() < 1e-12 && j.dkappa.abs() < 1e-12 && j.d2sigma.abs() < 1e-12);
    }
}

#[test]
fn kappa_matches_difference_of_asymptotic_normal() {
    let surf = surface("(s, s^2, 0.2*s^3)", "(2 + 0.3*sin(s), cos(s), sin(s))");
    for s in [-0.4, 0.2, 0.6] {
        let f = frenet_frame(&surf, s).unwrap();
        let e = 1e-5;
        let da = (frenet_frame(&surf, s + e).unwrap().a - frenet_frame(&surf, s - e).unwrap().a) / (2.0 * e);
        let kappa = f.kind.kappa_sign() * (da / f.ds1_ds).dot(&f.h);
        assert!((kappa - f.kappa).abs() < 1e-7);
        let j = curvature_jet(&surf, s).unwrap();
        let dk = (curvature_jet(&surf, s + e).unwrap().kappa - curvature_jet(&surf, s - e).unwrap().kappa) / (2.0 * e);
        assert!((j.kappa - f.kappa).abs() < 1e-12);
        assert!((j.dkappa - dk).abs() < 1e-7, "{} vs {dk}", j.dkappa);
        let ds = (curvature_jet(&surf, s + e).unwrap().dsigma - curvature_jet(&surf, s - e).unwrap().dsigma) / (2.0 * e);
        assert!((j.d2sigma - ds).abs() < 1e-7);
    }
}

#[test]
fn cross_relations_on_grid() {
    let surfs = [
        helicoid(dom(-1.0, 1.0)),
        m1_minus_cone(0.8, dom(0.0, 6.0)),
        m1_plus_cone(0.4, dom(0.0, 6.0)),
        surface("(0, 0, s)", "(sinh(s), cosh(s), 0)"),
    ];
    for surf in &surfs {
        for s in surf.domain().grid(64) {
            let f = frenet_frame(surf, s).unwrap();
            assert!(f.defect() < 1e-10, "{} at {s}: {}", f.kind, f.defect());
        }
    }
}

#[test]
fn frame_equations_hold() {
    let surfs = [
        helicoid(dom(-1.0, 1.0)),
        m1_minus_cone(0.8, dom(0.0, 6.0)),
        m1_plus_cone(0.4, dom(0.0, 6.0)),
        surface("(0, 0, s)", "(sinh(s), cosh(s), 0)"),
        surface("(s, s^2, 0.2*s^3)", "(2 + 0.3*sin(s), cos(s), sin(s))"),
    ];
    for surf in &surfs {
        for s in surf.domain().interior_grid(16, 0.01) {
            let r = frame_ode_residual(surf, s).unwrap();
            assert!(r.max() < 1e-7, "{r:?}");
            assert!(darboux_residual(surf, s).unwrap() < 1e-7);
        }
    }
}

#[test]
fn scaling_the_director_changes_nothing() {
    let a = surface("(s, s^2, 0.2*s^3)", "(2 + 0.3*sin(s), cos(s), sin(s))");
    let b = surface("(s, s^2, 0.2*s^3)", "(4 + 0.6*sin(s), 2*cos(s), 2*sin(s))");
    for s in [-0.5, 0.5] {
        assert!(close(striction_curve(&a, s).unwrap(), striction_curve(&b, s).unwrap(), 1e-10));
        assert!((drall(&a, s).unwrap() - drall(&b, s).unwrap()).abs() < 1e-10);
        let (fa, fb) = (frenet_frame(&a, s).unwrap(), frenet_frame(&b, s).unwrap());
        assert!(close(fa.h, fb.h, 1e-10) && close(fa.a, fb.a, 1e-10));
        assert!((fa.kappa - fb.kappa).abs() < 1e-10);
    }
}

fn synth(kind: FrameType, kappa: &str, speed: &str, d: Domain) -> IntegratedSurface {
    integrate_frame(
        kind,
        ScalarFn::parse(kappa).unwrap(),
        ScalarFn::parse(speed).unwrap(),
        kind.standard_seed(),
        LVec3::ZERO,
        d,
        1e-3,
    )
    .unwrap()
    .with_samples(128)
}

#[test]
fn flat_integration_recovers_helicoid_frame() {
    let s = synth(FrameType::M1Minus, "0", "1", dom(0.0, 2.0));
    let st = s.interpolate(1.0).unwrap();
    let one: f64 = 1.0;
    assert!(close(st.q, LVec3::new(one.cosh(), one.sinh(), 0.0), 1e-8));
    assert!(close(st.h, LVec3::new(one.sinh(), one.cosh(), 0.0), 1e-8));
    assert!(close(st.a, LVec3::new(0.0, 0.0, 1.0), 1e-8));
    assert!(close(st.c, LVec3::new(one.sinh(), one.cosh() - 1.0, 0.0), 1e-8));
    let cubic = s.interpolate_cubic(1.0005).unwrap();
    assert!(close(cubic.q, s.interpolate(1.0005).unwrap().q, 1e-10));
}

#[test]
fn synthesized_surfaces_round_trip() {
    let cases = [
        (FrameType::M1Minus, "-cosh(3 - s)/sinh(3 - s)", "1", dom(0.0, 2.0)),
        (FrameType::M1Plus, "tan(3 - s)", "1", dom(0.0, 1.3)),
        (FrameType::M2Plus, "0.5 + 0.2*sin(s)", "1 + 0.1*s", dom(0.0, 2.0)),
        (FrameType::M1Minus, "s", "exp(0.2*s)", dom(-1.0, 1.0)),
    ];
    for (kind, kappa, speed, d) in cases {
        let surf = synth(kind, kappa, speed, d);
        assert_eq!(classify_surface(&surf), SurfaceType::from(kind));
        let sd = striction_data(&surf).unwrap();
        assert!(sd.max_abs_drall() <= 1e-8, "{kind}: {}", sd.max_abs_drall());
        let k = ScalarFn::parse(kappa).unwrap();
        for s in d.interior_grid(32, 0.01) {
            let f = frenet_frame(&surf, s).unwrap();
            assert!(f.defect() < 1e-8);
            assert!((f.kappa - k.eval(s).unwrap()).abs() < 1e-6, "{kind} at {s}");
            assert!(frame_ode_residual(&surf, s).unwrap().max() < 1e-6);
            assert!(unit_speed_defect(&surf, s).unwrap() < 1e-8);
        }
    }
}

#[test]
fn integration_rejects_bad_input() {
    let k = ScalarFn::parse("0").unwrap();
    let one = ScalarFn::parse("1").unwrap();
    let mut bad = FrameType::M1Minus.standard_seed();
    bad.h = bad.h * 1.1;
    let d = dom(0.0, 1.0);
    let run = |seed, speed: &ScalarFn, step| integrate_frame(FrameType::M1Minus, k.clone(), speed.clone(), seed, LVec3::ZERO, d, step);
    assert!(matches!(run(bad, &one, 1e-3), Err(SurfaceError::InvalidSeed(_))));
    assert!(matches!(run(FrameType::M1Minus.standard_seed(), &one, 0.0), Err(SurfaceError::BadStep(_))));
    let neg = ScalarFn::parse("0.5 - s").unwrap();
    assert!(matches!(run(FrameType::M1Minus.standard_seed(), &neg, 1e-3), Err(SurfaceError::NonPositiveSpeed { .. })));
}
