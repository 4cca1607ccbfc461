//! Exact arithmetic for the ring `K[E, g, h]` of Drinfeld quasi-modular forms
//! over `K = F_q(T)`, its divided derivatives `D_n`, and truncated
//! `t`-expansions used to cross-check them.

pub mod algebra;
pub mod config;
pub mod error;
pub mod expr;
pub mod hyperd;
pub mod qmring;
pub mod tseries;
pub mod verify;

pub use algebra::{binom_mod_p, bracket, d_coeff, FieldConfig, FqElem, PolyT, RatT};
pub use error::{Error, Result};
pub use hyperd::{DerivationEngine, Generator};
pub use qmring::{DepthPoly, Grading, GradingSignature, Mono, QmPoly};
pub use tseries::TSeries;
