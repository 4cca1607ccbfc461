use super::carlitz::carlitz_of;
use super::hyperderiv::{hyper_derive, AlphaTable};
use super::series::TSeries;
use crate::algebra::{d_coeff, FieldConfig, FqElem, PolyT, RatT};

/// All monic polynomials of degree `d`.
pub fn monic_of_degree(f: FieldConfig, d: usize) -> impl Iterator<Item = PolyT> {
    let q = f.q() as u64;
    (0..q.pow(d as u32)).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(FqElem((code % q) as u16));
            code /= q;
        }
        coeffs.push(FqElem::ONE);
        PolyT::from_coeffs(f, coeffs)
    })
}

/// Largest `d` with `q^d < order`, if any.
fn degrees_below(f: FieldConfig, order: usize) -> impl Iterator<Item = usize> {
    let q = f.q() as usize;
    (0..).take_while(move |&d| q.pow(d as u32) < order)
}

/// `t_a = t(a z) = 1 / ρ_a(1/t)` for monic `a`, exact below `order`.
pub fn t_sub(a: &PolyT, order: usize) -> TSeries {
    let f = a.field();
    assert!(a.is_monic(), "t_a needs a monic a");
    let d = a.degree().unwrap();
    let q = f.q() as usize;
    let top = q.pow(d as u32);
    if top >= order {
        return TSeries::zero(f, order);
    }
    // ρ_a(1/t) = t^{-q^d} (1 + Σ_{j<d} c_j t^{q^d - q^j})
    let rho = carlitz_of(a);
    let unit = TSeries::from_terms(
        f,
        order - top,
        rho.coeffs()[..d].iter().enumerate().map(|(j, c)| (top - q.pow(j as u32), c.clone())).chain([(0, RatT::one(f))]),
    );
    unit.inverse().expect("unit series").shift(top)
}

/// `E = Σ_{a monic} a · t_a`.
pub fn expand_e(f: FieldConfig, order: usize) -> TSeries {
    let mut acc = TSeries::zero(f, order);
    for d in degrees_below(f, order) {
        for a in monic_of_degree(f, d) {
            let ta = t_sub(&a, order);
            acc = &acc + &ta.scale(&a.into());
        }
    }
    acc
}

/// `g = 1 - [1] Σ_{a monic} t_a^{q-1}`, with `t_a^{q-1} = t_a^q · ρ_a(1/t)`.
pub fn expand_g(f: FieldConfig, order: usize) -> TSeries {
    let q = f.q() as usize;
    let mut sum = TSeries::zero(f, order);
    for d in degrees_below(f, order) {
        let top = q.pow(d as u32);
        if top * (q - 1) >= order {
            break;
        }
        // t_a^q must be exact below order + q^d.
        let inner = (order + top).div_ceil(q);
        for a in monic_of_degree(f, d) {
            let tq = t_sub(&a, inner).frobenius(f.e()).truncate(order + top);
            let rho = carlitz_of(&a);
            let mut part = TSeries::zero(f, order);
            for (j, c) in rho.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let down = q.pow(j as u32);
                let shifted = TSeries::from_terms(f, order, tq.terms().filter(|(n, _)| *n >= down).map(|(n, v)| (n - down, v * c)));
                part = &part + &shifted;
            }
            sum = &sum + &part;
        }
    }
    let d1: RatT = d_coeff(1, f).into();
    &TSeries::one(f, order) - &sum.scale(&d1)
}

/// `h = -(D_1 g + E g)`.
pub fn expand_h(f: FieldConfig, order: usize) -> TSeries {
    let g = expand_g(f, order);
    let e = expand_e(f, order);
    let mut table = AlphaTable::new(f);
    -&(&hyper_derive(&g, 1, &mut table) + &(&e * &g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_sub_small() {
        let f = FieldConfig::for_q(3).unwrap();
        assert_eq!(t_sub(&PolyT::one(f), 10), TSeries::monomial(RatT::one(f), 1, 10));
        // t_T = t^q (1 - T t^{q-1} + T^2 t^{2(q-1)} - ...)
        let tt = t_sub(&PolyT::t(f), 12);
        let t = RatT::t(f);
        let expect = TSeries::from_terms(
            f,
            12,
            [(3, RatT::one(f)), (5, -&t), (7, t.pow(2).unwrap()), (9, -&t.pow(3).unwrap()), (11, t.pow(4).unwrap())],
        );
        assert_eq!(tt, expect);
        for a in monic_of_degree(f, 2) {
            assert_eq!(t_sub(&a, 20).nu_infinity(), Some(9));
        }
    }

    #[test]
    fn g_power_shortcut_matches_direct() {
        for q in [3, 4] {
            let f = FieldConfig::for_q(q).unwrap();
            let order = 40;
            let mut direct = TSeries::zero(f, order);
            for d in 0..3 {
                for a in monic_of_degree(f, d) {
                    direct = &direct + &t_sub(&a, order).pow(q as u64 - 1);
                }
            }
            let d1: RatT = d_coeff(1, f).into();
            let expect = &TSeries::one(f, order) - &direct.scale(&d1);
            assert_eq!(expand_g(f, order), expect);
        }
    }

    #[test]
    fn coefficients_are_polynomials() {
        let f = FieldConfig::for_q(4).unwrap();
        for s in [expand_e(f, 30), expand_g(f, 30), expand_h(f, 30)] {
            assert!(s.terms().all(|(_, c)| c.is_polynomial()));
        }
    }
}
