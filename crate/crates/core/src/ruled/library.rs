//! Closed-form test surfaces.

use crate::expr::{parse_curve, Domain};

use super::RuledSurfaceDef;

fn build(k: &str, q: &str, domain: Domain) -> RuledSurfaceDef {
    let k = parse_curve(k).expect("library base curve parses");
    let q = parse_curve(q).expect("library director parses");
    RuledSurfaceDef::new(k, q, domain)
}

/// `k = (0, 0, s)`, `q = (cosh s, sinh s, 0)`: M1-, drall -1, `κ = 0`.
pub fn helicoid(domain: Domain) -> RuledSurfaceDef {
    build("(0, 0, s)", "(cosh(s), sinh(s), 0)", domain)
}

/// `k = (sinh s, cosh s, 0)`, `q = k'`: developable M1-, `κ = 0`.
pub fn tangent_developable(domain: Domain) -> RuledSurfaceDef {
    build("(sinh(s), cosh(s), 0)", "(cosh(s), sinh(s), 0)", domain)
}

/// Tangent developable whose director sweeps a timelike circular cone of
/// hyperbolic angle `alpha`: M1-, `ds1/ds = sinh α`, `κ = coth α`.
pub fn m1_minus_cone(alpha: f64, domain: Domain) -> RuledSurfaceDef {
    let (ch, sh) = (alpha.cosh(), alpha.sinh());
    build(
        &format!("(s*{ch:e}, {sh:e}*sin(s), -{sh:e}*cos(s))"),
        &format!("({ch:e}, {sh:e}*cos(s), {sh:e}*sin(s))"),
        domain,
    )
}

/// Tangent developable with spacelike director on a spacelike cone:
/// M1+, `ds1/ds = cosh β`, `κ = tanh β`.
pub fn m1_plus_cone(beta: f64, domain: Domain) -> RuledSurfaceDef {
    let (ch, sh) = (beta.cosh(), beta.sinh());
    build(
        &format!("(s*{sh:e}, {ch:e}*sin(s), -{ch:e}*cos(s))"),
        &format!("({sh:e}, {ch:e}*cos(s), {ch:e}*sin(s))"),
        domain,
    )
}
