//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use mannheim_core::expr::Domain;
use mannheim_core::offset::{OffsetPairing, OffsetSpec};
use mannheim_core::ruled::library::m1_minus_cone;
use mannheim_core::ruled::{integrate_frame, IntegratedSurface};
use mannheim_core::{FrameType, LVec3, RuledSurfaceDef, ScalarFn};

pub const COTH_PROFILE: &str = "-cosh(3 - s)/sinh(3 - s)";

pub fn cone() -> RuledSurfaceDef {
    m1_minus_cone(1.0, Domain::new(0.0, 6.0).unwrap())
}

pub fn coth_base(samples: usize) -> IntegratedSurface {
    integrate_frame(
        FrameType::M1Minus,
        ScalarFn::parse(COTH_PROFILE).unwrap(),
        ScalarFn::constant(1.0),
        FrameType::M1Minus.standard_seed(),
        LVec3::ZERO,
        Domain::new(0.0, 2.0).unwrap(),
        1e-3,
    )
    .unwrap()
    .with_samples(samples)
}

pub fn developable_pair(samples: usize) -> OffsetSpec {
    OffsetSpec::new(
        Arc::new(coth_base(samples)),
        ScalarFn::constant(1.0),
        ScalarFn::parse("3 - s").unwrap(),
        OffsetPairing::M1mToM1p,
    )
}
