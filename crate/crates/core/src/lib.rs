//! Lorentzian geometry of ruled surfaces in Minkowski 3-space and their
//! Mannheim offsets.

pub mod expr;
pub mod jet;
pub mod lab;
pub mod lorentz;
pub mod offset;
pub mod ruled;

pub use expr::{parse_curve, parse_expr, CurveDef, Domain, EvalError, Expr, ParseError, ScalarFn};
pub use lorentz::{CausalClass, LVec3};
pub use ruled::{FrameSample, FrameType, RuledSurface, RuledSurfaceDef, SurfaceError, SurfaceType};
