//! Ideal membership and stability, congruences, and the checking suites.

pub mod golden;
mod ideals;
mod props;
pub mod suites;

pub use ideals::{check_hyperstable, member, GeneratorCheck, IdealId, Membership, StabilityReport};
pub use props::{
    divide_by_h_power, h_power_quotient, munu_congruence, random_isobaric, random_rat, rankin_stability_probe,
    weight_divisibility_check,
};
