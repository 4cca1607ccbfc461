use rand::Rng;

use crate::algebra::{binom_mod_p, PolyT, RatT};
use crate::error::{Error, Result};
use crate::hyperd::DerivationEngine;
use crate::qmring::{grading, qm_basis, rankin_bracket, Grading, Mono, QmPoly};

use super::ideals::{member, IdealId};

/// `D_n(E^μ g^ν) ≡ C(μ + ν(q-1) + n - 1, n) E^{μ+n} g^ν (mod h)`.
pub fn munu_congruence(engine: &mut DerivationEngine, mu: u32, nu: u32, n: u64) -> Result<bool> {
    let field = engine.field();
    let q = field.q() as i64;
    let lhs = engine.derive(&QmPoly::monomial(field, Mono::new(mu, nu, 0)), n)?.mod_h();
    let b = binom_mod_p(mu as i64 + nu as i64 * (q - 1) + n as i64 - 1, n, field.p());
    let rhs = QmPoly::monomial(field, Mono::new(mu + n as u32, nu, 0)).scale_int(b as i64);
    Ok(lhs == rhs)
}

/// A random element of `RatT` with small numerator and denominator.
pub fn random_rat<R: Rng>(rng: &mut R, field: crate::algebra::FieldConfig, nonzero: bool) -> RatT {
    loop {
        let num_deg = rng.gen_range(0..3);
        let elem = |rng: &mut R| field.elements().nth(rng.gen_range(0..field.q() as usize)).expect("index below q");
        let num: Vec<_> = (0..=num_deg).map(|_| elem(rng)).collect();
        let num = PolyT::from_coeffs(field, num);
        let den = if rng.gen_bool(0.3) {
            let c = elem(rng);
            PolyT::from_coeffs(field, vec![c, field.from_int(1)])
        } else {
            PolyT::one(field)
        };
        let r = RatT::new(num, den).expect("monic denominator");
        if !nonzero || !r.is_zero() {
            return r;
        }
    }
}

/// A random combination of the monomials of weight `w`, type `m`, depth at
/// most `l`.
pub fn random_isobaric(rng: &mut impl Rng, field: crate::algebra::FieldConfig, w: u64, m: u32, l: u32) -> QmPoly {
    let basis = qm_basis(w, m, l, field);
    let mut terms = Vec::new();
    for b in basis {
        if rng.gen_bool(0.7) {
            terms.push((b, random_rat(rng, field, true)));
        }
    }
    QmPoly::from_terms(field, terms)
}

/// Checks `d_M(X) = [X, M]` against the first-order expansion
/// `d_M(E) ∂X/∂E + d_M(g) ∂X/∂g + d_M(h) ∂X/∂h` on `samples`, and that `d_M`
/// keeps the isobaric members among them inside `id`.
pub fn rankin_stability_probe(m: &QmPoly, id: &IdealId, samples: &[QmPoly]) -> Result<bool> {
    if !matches!(grading(m)?, Grading::Isobaric(_)) {
        return Err(Error::NotIsobaric(m.to_string()));
    }
    let field = m.field();
    let d_e = rankin_bracket(&QmPoly::e(field), m)?;
    let d_g = rankin_bracket(&QmPoly::g(field), m)?;
    let d_h = rankin_bracket(&QmPoly::h(field), m)?;
    for x in samples {
        if !matches!(grading(x)?, Grading::Isobaric(_)) {
            continue;
        }
        let direct = rankin_bracket(x, m)?;
        let expanded = &(&(&d_e * &x.d_de()) + &(&d_g * &x.d_dg())) + &(&d_h * &x.d_dh());
        if direct != expanded {
            return Ok(false);
        }
        if member(id, x).member && !member(id, &direct).member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For random isobaric `f`, `F = f^{p^{k+1}}` is killed by `D_{p^j}` for
/// `j <= k` and its weight minus depth is divisible by `p^{k+1}`.
pub fn weight_divisibility_check(engine: &mut DerivationEngine, k: u32, rng: &mut impl Rng, samples: usize) -> Result<bool> {
    let field = engine.field();
    let p = field.p() as u64;
    let pk1 = p.pow(k + 1);
    for _ in 0..samples {
        let w = rng.gen_range(0..=3 * (field.q() as u64 + 1));
        let m = rng.gen_range(0..field.q() - 1);
        let f = random_isobaric(rng, field, w, m, 2);
        let big = f.pow(pk1);
        for j in 0..=k {
            if !engine.derive(&big, p.pow(j))?.is_zero() {
                return Ok(false);
            }
        }
        if let Grading::Isobaric(s) = grading(&big)? {
            if !(s.weight - s.depth as u64).is_multiple_of(pk1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f / h^k` when every monomial of `f` has `h`-degree at least `k`.
pub fn divide_by_h_power(f: &QmPoly, k: u32) -> Option<QmPoly> {
    if f.monomials().any(|m| m.h < k) {
        return None;
    }
    Some(f.map_monomials(|m| Some((Mono { h: m.h - k, ..m }, RatT::one(f.field())))))
}

/// `D_r(h^n) / h^n` for `n ∈ Z`. For `n < 0` it is computed in the
/// localization at `h` from `v_s = D_s(h^{-n}) / h^{-n}` by
/// `u_0 = 1`, `u_r = -Σ_{s<r} u_s v_{r-s}`.
/// Errors with `Inconsistent` if a quotient is not a polynomial.
pub fn h_power_quotient(engine: &mut DerivationEngine, n: i64, r: u64) -> Result<QmPoly> {
    let field = engine.field();
    let m = n.unsigned_abs() as u32;
    let hm = QmPoly::monomial(field, Mono::new(0, 0, m));
    let v = |engine: &mut DerivationEngine, s: u64| -> Result<QmPoly> {
        divide_by_h_power(&engine.derive(&hm, s)?, m).ok_or(Error::Inconsistent)
    };
    if n >= 0 {
        return v(engine, r);
    }
    let vs: Vec<QmPoly> = (0..=r).map(|s| v(engine, s)).collect::<Result<_>>()?;
    let mut us: Vec<QmPoly> = vec![QmPoly::one(field)];
    for k in 1..=r as usize {
        let mut acc = QmPoly::zero(field);
        for s in 0..k {
            acc = &acc + &(&us[s] * &vs[k - s]);
        }
        us.push(-&acc);
    }
    Ok(us.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn congruence_small_cases() {
        let mut en = DerivationEngine::new(FieldConfig::for_q(5).unwrap());
        for n in 0..10 {
            assert!(munu_congruence(&mut en, 0, 0, n).unwrap());
            assert!(munu_congruence(&mut en, 1, 0, n).unwrap());
        }
    }

    #[test]
    fn rankin_values() {
        let f = FieldConfig::for_q(4).unwrap();
        let (g, h) = (QmPoly::g(f), QmPoly::h(f));
        let egh = &(&QmPoly::e(f) * &g) * &h;
        assert!(rankin_stability_probe(&h, &IdealId::PrincipalH, &[egh.clone(), h.pow(2)]).unwrap());
        assert!(rankin_stability_probe(&g, &IdealId::P0, &[egh]).unwrap());
        let bad = &g + &QmPoly::one(f);
        assert!(matches!(rankin_stability_probe(&bad, &IdealId::P0, &[]), Err(Error::NotIsobaric(_))));
    }

    #[test]
    fn divisibility_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut en = DerivationEngine::new(FieldConfig::for_q(4).unwrap());
        assert!(weight_divisibility_check(&mut en, 1, &mut rng, 5).unwrap());
    }

    #[test]
    fn inverse_power_of_h() {
        // D_1(h^{-1}) / h^{-1} = -E
        let f = FieldConfig::for_q(5).unwrap();
        let mut en = DerivationEngine::new(f);
        assert_eq!(h_power_quotient(&mut en, -1, 1).unwrap(), -&QmPoly::e(f));
        assert_eq!(h_power_quotient(&mut en, 2, 1).unwrap(), QmPoly::e(f).scale_int(2));
        assert_eq!(h_power_quotient(&mut en, 0, 3).unwrap(), QmPoly::zero(f));
    }
}
