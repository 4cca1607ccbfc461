use super::grading::{grading, Grading};
use super::poly::{Mono, QmPoly};
use crate::algebra::RatT;
use crate::error::{Error, Result};

/// The first divided derivative, from `D_1 E = E^2`, `D_1 g = -(E g + h)`,
/// `D_1 h = E h` extended as a derivation.
pub fn d1(f: &QmPoly) -> QmPoly {
    let field = f.field();
    let de = QmPoly::monomial(field, Mono::new(2, 0, 0));
    let dg = -&(&QmPoly::monomial(field, Mono::new(1, 1, 0)) + &QmPoly::h(field));
    let dh = QmPoly::monomial(field, Mono::new(1, 0, 1));
    &(&(&f.d_de() * &de) + &(&f.d_dg() * &dg)) + &(&f.d_dh() * &dh)
}

fn weight_mod_p(f: &QmPoly) -> Result<RatT> {
    match grading(f)? {
        Grading::Zero => Ok(RatT::zero(f.field())),
        Grading::Isobaric(s) => Ok(RatT::from_int(f.field(), (s.weight % f.field().p() as u64) as i64)),
    }
}

/// `[U, V] = w(U) U D_1 V - w(V) V D_1 U`.
pub fn rankin_bracket(u: &QmPoly, v: &QmPoly) -> Result<QmPoly> {
    let wu = weight_mod_p(u)?;
    let wv = weight_mod_p(v)?;
    Ok(&(u * &d1(v)).scale(&wu) - &(v * &d1(u)).scale(&wv))
}

/// `∂f = -h ∂f/∂g` for a modular form `f`; also evaluated as
/// `D_1 f - w E f` and checked against it.
pub fn serre_derivative(f: &QmPoly) -> Result<QmPoly> {
    let field = f.field();
    let w = match grading(f)? {
        Grading::Zero => return Ok(QmPoly::zero(field)),
        Grading::Isobaric(s) if s.depth > 0 => return Err(Error::NotModular(f.to_string())),
        Grading::Isobaric(s) => s.weight,
    };
    let partial = -&(&QmPoly::h(field) * &f.d_dg());
    let via_d1 = &d1(f) - &(&QmPoly::e(field) * f).scale_int((w % field.p() as u64) as i64);
    assert_eq!(partial, via_d1, "the two expressions of the Serre derivative disagree on {f}");
    Ok(partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldConfig;

    #[test]
    fn brackets_of_generators() {
        for q in [3, 4, 5, 7] {
            let f = FieldConfig::for_q(q).unwrap();
            let (e, g, h) = (QmPoly::e(f), QmPoly::g(f), QmPoly::h(f));
            assert_eq!(rankin_bracket(&g, &h).unwrap(), h.pow(2));
            assert_eq!(rankin_bracket(&h, &g).unwrap(), -&h.pow(2));
            assert!(rankin_bracket(&h, &h).unwrap().is_zero());
            // [g, E] = w(g) g E^2 - 2 E (-(Eg + h))
            let expect = &(&g * &e.pow(2)).scale_int(q as i64 - 1) + &(&e * &(&(&e * &g) + &h)).scale_int(2);
            assert_eq!(rankin_bracket(&g, &e).unwrap(), expect);
            assert!(rankin_bracket(&(&e + &g), &h).is_err());
        }
    }

    #[test]
    fn serre_values() {
        let f = FieldConfig::for_q(5).unwrap();
        let (g, h) = (QmPoly::g(f), QmPoly::h(f));
        assert_eq!(serre_derivative(&g).unwrap(), -&h);
        assert!(serre_derivative(&h).unwrap().is_zero());
        assert_eq!(serre_derivative(&g.pow(2)).unwrap(), (&g * &h).scale_int(-2));
        assert!(matches!(serre_derivative(&QmPoly::e(f)), Err(Error::NotModular(_))));
    }
}
