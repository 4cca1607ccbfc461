//! Divided derivatives `D_n` on `K[E, g, h]` and what follows from them:
//! the depth-drop criterion, the induced action on associated polynomials,
//! residues modulo modular forms, and kernels on modular forms.

mod engine;
mod tables;

pub use engine::{DerivationEngine, Generator, Strategy};

use crate::algebra::{binom_mod_p, linalg, RatT};
use crate::error::{Error, Result};
use crate::qmring::{modular_basis, DepthPoly, Mono, QmPoly};

/// Whether `D_n` lowers the depth of a generic form of weight `w` and depth
/// `l` below `l + n`: `C(w - l + n - 1, n) ≡ 0 (mod p)`.
pub fn depth_drop(w: u64, l: u32, n: u64, p: u32) -> bool {
    binom_mod_p(w as i64 - l as i64 + n as i64 - 1, n, p) == 0
}

/// The associated polynomial of `D_n f` from that of `f` (weight `w`):
/// the coefficient of `Y^j` is `Σ_r C(n + w + r - j - 1, r) D_{n-r} φ_{j-r}`.
pub fn transform_depth_poly(engine: &mut DerivationEngine, poly: &DepthPoly, w: u64, n: u64) -> Result<DepthPoly> {
    if n > engine.limit() {
        return Err(Error::OrderOutOfRange { n, limit: engine.limit() });
    }
    let field = engine.field();
    let p = field.p();
    let top = poly.degree().map_or(0, |d| d + n as usize);
    let mut coeffs = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let mut acc = QmPoly::zero(field);
        for r in 0..=(n as usize).min(j) {
            let phi = poly.coeff(j - r);
            if phi.is_zero() {
                continue;
            }
            let top_arg = n as i64 + w as i64 + r as i64 - j as i64 - 1;
            let b = binom_mod_p(top_arg, r as u64, p);
            if b == 0 {
                continue;
            }
            let d = engine.derive(&phi, n - r as u64)?;
            acc = &acc + &d.scale(&RatT::from_int(field, b as i64));
        }
        coeffs.push(acc);
    }
    Ok(DepthPoly::new(field, coeffs))
}

/// The three residues of `D_{p^i}` on the generators after removing their
/// `E`-power parts:
/// `D E - E^{p^i+1}`, `D g - c·E^{p^i} g` and `D h - E^{p^i} h - E^q D_{p^i-q} h`,
/// where `c` is `-1` for `i = 0`, `0` for `1 < p^i < q` and `1` for `p^i >= q`,
/// and `D_n h = 0` for `n < 0`. Each residue is checked to be a modular form
/// divisible by `h`.
pub fn derivative_mod_h_residue(engine: &mut DerivationEngine, i: u32) -> Result<(QmPoly, QmPoly, QmPoly)> {
    let field = engine.field();
    let q = field.q() as u64;
    let n = (field.p() as u64).checked_pow(i).unwrap_or(u64::MAX);
    if n > engine.limit() {
        return Err(Error::OrderOutOfRange { n, limit: engine.limit() });
    }
    let e_part = |a: u64, b: u32, c: u32| QmPoly::monomial(field, Mono::new(a as u32, b, c));
    let re = &engine.d_generator(Generator::E, n)? - &e_part(n + 1, 0, 0);
    let g_scale = if n == 1 {
        -1
    } else if n < q {
        0
    } else {
        1
    };
    let rg = &engine.d_generator(Generator::G, n)? - &e_part(n, 1, 0).scale_int(g_scale);
    let mut rh = &engine.d_generator(Generator::H, n)? - &e_part(n, 0, 1);
    if n >= q {
        let shifted = engine.d_generator(Generator::H, n - q)?;
        rh = &rh - &shifted.shift(Mono::new(q as u32, 0, 0));
    }
    for r in [&re, &rg, &rh] {
        if r.depth().unwrap_or(0) > 0 || r.monomials().any(|m| m.h == 0) {
            return Err(Error::NotModular(format!("residue {r} of D_{n} is not an h-divisible modular form")));
        }
    }
    Ok((re, rg, rh))
}

/// A basis of the forms in `M_{w,m}` killed by `D_1, D_p, …, D_{p^k}`.
pub fn kernel_on_modular(engine: &mut DerivationEngine, w: u64, m: u32, k: u32) -> Result<Vec<QmPoly>> {
    let field = engine.field();
    let pk = (field.p() as u64).checked_pow(k).unwrap_or(u64::MAX);
    if pk > engine.limit() {
        return Err(Error::OrderOutOfRange { n: pk, limit: engine.limit() });
    }
    let basis = modular_basis(w, m, field);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut images: Vec<Vec<QmPoly>> = Vec::new();
    for s in 0..=k {
        let n = (field.p() as u64).pow(s);
        let row: Vec<QmPoly> = basis
            .iter()
            .map(|b| engine.derive(&QmPoly::monomial(field, *b), n))
            .collect::<Result<_>>()?;
        images.push(row);
    }
    let mut rows: Vec<Vec<RatT>> = Vec::new();
    for row in &images {
        let mut outputs: Vec<Mono> = row.iter().flat_map(|p| p.monomials()).collect();
        outputs.sort();
        outputs.dedup();
        for out in outputs {
            rows.push(row.iter().map(|p| p.coeff(out)).collect());
        }
    }
    let kernel = linalg::kernel(field, &rows, basis.len());
    Ok(kernel
        .into_iter()
        .map(|v| QmPoly::from_terms(field, basis.iter().copied().zip(v)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldConfig;
    use crate::qmring::associated_polynomial;

    #[test]
    fn depth_drop_constants() {
        for p in [2, 3, 5] {
            for n in 1..30 {
                assert!(depth_drop(0, 0, n, p));
            }
        }
    }

    #[test]
    fn residues_at_zero() {
        let f = FieldConfig::for_q(5).unwrap();
        let mut en = DerivationEngine::new(f);
        let (a, b, c) = derivative_mod_h_residue(&mut en, 0).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, -&QmPoly::h(f));
        assert!(c.is_zero());
    }

    #[test]
    fn transform_matches_h_formula() {
        // P_{D_n h} = Σ_j C(n + q, j) (D_{n-j} h) Y^j
        let f = FieldConfig::for_q(4).unwrap();
        let mut en = DerivationEngine::new(f);
        let h = QmPoly::h(f);
        let ph = associated_polynomial(&h);
        for n in 0..12u64 {
            let t = transform_depth_poly(&mut en, &ph, 5, n).unwrap();
            for j in 0..=n {
                let b = binom_mod_p((n + 4) as i64, j, 2);
                let expect = en.derive(&h, n - j).unwrap().scale_int(b as i64);
                assert_eq!(t.coeff(j as usize), expect);
            }
            assert_eq!(t, associated_polynomial(&en.derive(&h, n).unwrap()));
        }
    }

    #[test]
    fn kernel_contains_g_to_p() {
        let f = FieldConfig::for_q(5).unwrap();
        let mut en = DerivationEngine::new(f);
        let ker = kernel_on_modular(&mut en, 20, 0, 0).unwrap();
        assert!(ker.contains(&QmPoly::g(f).pow(5)));
        assert!(kernel_on_modular(&mut en, 8, 0, 0).unwrap().is_empty());
    }
}
