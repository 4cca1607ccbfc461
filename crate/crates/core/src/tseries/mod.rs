//! Truncated `t`-expansions: the Carlitz action, lattice-sum expansions of
//! `E`, `g`, `h`, the divided derivatives on series, and evaluation of ring
//! elements.

mod carlitz;
mod evaluate;
mod expansions;
mod hyperderiv;
mod series;

pub use carlitz::{carlitz_of, CarlitzPoly};
pub use evaluate::Evaluator;
pub use expansions::{expand_e, expand_g, expand_h, monic_of_degree, t_sub};
pub use hyperderiv::{hyper_derive, AlphaTable};
pub use series::TSeries;

use crate::algebra::FieldConfig;
use crate::qmring::QmPoly;

/// One-shot evaluation of `f` to order `order`.
pub fn evaluate(f: &QmPoly, field: FieldConfig, order: usize) -> TSeries {
    Evaluator::new(field, order).eval(f)
}
