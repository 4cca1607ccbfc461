use std::fmt;

use serde::Serialize;

use crate::algebra::RatT;
use crate::error::Result;
use crate::hyperd::{DerivationEngine, Generator};
use crate::qmring::{Mono, QmPoly};

/// The ideals of `K[E, g, h]` with a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealId {
    /// `(E, h)`
    P0,
    /// `(g, h)`
    Pinf,
    /// `(h, E^{q-1} - d g)`, `d ≠ 0`
    Pd(RatT),
    /// `(h)`
    PrincipalH,
    /// `(E, g - c, h)`
    MaxC(RatT),
    /// The principal ideal of a single generator, e.g. `(g)`.
    Principal(Generator),
}

impl fmt::Display for IdealId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealId::P0 => write!(f, "(E, h)"),
            IdealId::Pinf => write!(f, "(g, h)"),
            IdealId::Pd(d) => write!(f, "(h, E^q-1 - ({d}) g)"),
            IdealId::PrincipalH => write!(f, "(h)"),
            IdealId::MaxC(c) => write!(f, "(E, g - ({c}), h)"),
            IdealId::Principal(g) => write!(f, "({g})"),
        }
    }
}

impl IdealId {
    pub fn generators(&self, field: crate::algebra::FieldConfig) -> Vec<QmPoly> {
        let (e, g, h) = (QmPoly::e(field), QmPoly::g(field), QmPoly::h(field));
        match self {
            IdealId::P0 => vec![e, h],
            IdealId::Pinf => vec![g, h],
            IdealId::Pd(d) => vec![h, &e.pow(field.q() as u64 - 1) - &g.scale(d)],
            IdealId::PrincipalH => vec![h],
            IdealId::MaxC(c) => vec![e, &g - &QmPoly::constant(c.clone()), h],
            IdealId::Principal(x) => vec![QmPoly::monomial(field, x.mono())],
        }
    }
}

/// Result of a membership test. `residue` is the image of the tested
/// element under the map whose kernel is the ideal; zero iff member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub residue: QmPoly,
}

/// Membership by substitution: each ideal is the kernel of an explicit
/// ring map (`Pd`: reduce mod `h`, then `g ↦ E^{q-1}/d`).
pub fn member(id: &IdealId, f: &QmPoly) -> Membership {
    let field = f.field();
    let q = field.q();
    let residue = match id {
        IdealId::PrincipalH => f.filter(|m| m.h == 0),
        IdealId::P0 => f.filter(|m| m.e == 0 && m.h == 0),
        IdealId::Pinf => f.filter(|m| m.g == 0 && m.h == 0),
        IdealId::Principal(x) => {
            let xm = x.mono();
            f.filter(|m| (xm.e > 0 && m.e == 0) || (xm.g > 0 && m.g == 0) || (xm.h > 0 && m.h == 0))
        }
        IdealId::MaxC(c) => {
            let value = f
                .terms()
                .filter(|(m, _)| m.e == 0 && m.h == 0)
                .fold(RatT::zero(field), |acc, (m, v)| &acc + &(v * &c.pow(m.g as i64).expect("nonnegative power")));
            QmPoly::constant(value)
        }
        IdealId::Pd(d) => {
            let inv = d.inv().expect("P_d needs d ≠ 0");
            f.map_monomials(|m| {
                (m.h == 0).then(|| (Mono::new(m.e + (q - 1) * m.g, 0, 0), inv.pow(m.g as i64).expect("nonnegative power")))
            })
        }
    };
    Membership { member: residue.is_zero(), residue }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub generator: String,
    pub pass: bool,
    /// First `n` with `D_n G` outside the ideal.
    pub failed_at: Option<u64>,
    pub witness: Option<String>,
}

/// Whether `D_n G` stays in the ideal for every generator `G` and
/// `1 <= n <= n_max`. By the Leibniz rule this certifies `D_n(I) ⊂ I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub ideal: String,
    pub n_max: u64,
    pub generators: Vec<GeneratorCheck>,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.generators.iter().all(|g| g.pass)
    }

    /// The smallest failing order over all generators.
    pub fn first_failure(&self) -> Option<(u64, &str)> {
        self.generators.iter().filter_map(|g| Some((g.failed_at?, g.witness.as_deref()?))).min_by_key(|(n, _)| *n)
    }
}

pub fn check_hyperstable(engine: &mut DerivationEngine, id: &IdealId, n_max: u64) -> Result<StabilityReport> {
    let field = engine.field();
    let mut generators = Vec::new();
    for gen in id.generators(field) {
        let mut check = GeneratorCheck { generator: gen.to_string(), pass: true, failed_at: None, witness: None };
        for n in 1..=n_max {
            let d = engine.derive(&gen, n)?;
            let m = member(id, &d);
            if !m.member {
                check = GeneratorCheck { pass: false, failed_at: Some(n), witness: Some(m.residue.to_string()), ..check };
                break;
            }
        }
        generators.push(check);
    }
    Ok(StabilityReport { ideal: id.to_string(), n_max, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldConfig;
    use crate::expr::parse_qm;

    #[test]
    fn membership_basics() {
        let f = FieldConfig::for_q(5).unwrap();
        let d = RatT::t(f);
        let gen = &QmPoly::e(f).pow(4) - &QmPoly::g(f).scale(&d);
        assert!(member(&IdealId::Pd(d.clone()), &gen).member);
        assert!(!member(&IdealId::P0, &QmPoly::g(f)).member);
        assert!(member(&IdealId::P0, &parse_qm(f, "E g^3 + T h").unwrap()).member);
        assert!(member(&IdealId::MaxC(d.clone()), &parse_qm(f, "g^2 - T^2 + E").unwrap()).member);
        assert!(!member(&IdealId::MaxC(d), &QmPoly::g(f)).member);
        let w = member(&IdealId::Principal(Generator::G), &parse_qm(f, "-(E g + h)").unwrap());
        assert_eq!(w.residue, -&QmPoly::h(f));
    }
}
