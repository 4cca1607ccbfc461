//! The graded ring `K[E, g, h]` of quasi-modular forms with `K`-coefficients.

mod basis;
mod depth;
mod grading;
mod poly;
mod rankin;

pub use basis::{modular_basis, qm_basis};
pub use depth::{associated_polynomial, depth_coefficient_transform, DepthPoly};
pub use grading::{grading, isobaric_decompose, Grading, GradingSignature};
pub(crate) use poly::Accum;
pub use poly::{Mono, QmPoly};
pub use rankin::{d1, rankin_bracket, serre_derivative};
