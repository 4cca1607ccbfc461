//! Finite fields, `F_q[T]`, `F_q(T)`, binomials mod `p` and exact linear algebra.

mod binom;
mod brackets;
mod field;
pub mod linalg;
mod poly;
mod rat;

pub use binom::{binom_mod_p, multinomial_mod_p};
pub use brackets::{bracket, d_coeff};
pub use field::{is_prime, prime_power, FieldConfig, FqElem, MAX_Q};
pub use poly::PolyT;
pub use rat::RatT;
