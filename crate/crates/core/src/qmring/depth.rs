use std::fmt;
use std::ops::{Add, Mul};

use super::poly::{Accum, Mono, QmPoly};
use crate::algebra::{binom_mod_p, FieldConfig, RatT};
use crate::error::{Error, Result};

/// A polynomial `Σ φ_j Y^j` in the depth variable `Y` with coefficients in
/// `K[E, g, h]`. Trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct DepthPoly {
    field: FieldConfig,
    coeffs: Vec<QmPoly>,
}

impl fmt::Debug for DepthPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DepthPoly({self})")
    }
}

impl fmt::Display for DepthPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("[{c}]"),
                1 => format!("[{c}] Y"),
                _ => format!("[{c}] Y^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl DepthPoly {
    pub fn new(field: FieldConfig, mut coeffs: Vec<QmPoly>) -> Self {
        while coeffs.last().is_some_and(QmPoly::is_zero) {
            coeffs.pop();
        }
        DepthPoly { field, coeffs }
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn coeffs(&self) -> &[QmPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> QmPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(|| QmPoly::zero(self.field))
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<'a> Add<&'a DepthPoly> for &'a DepthPoly {
    type Output = DepthPoly;
    fn add(self, rhs: &DepthPoly) -> DepthPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DepthPoly::new(self.field, (0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a DepthPoly> for &'a DepthPoly {
    type Output = DepthPoly;
    fn mul(self, rhs: &DepthPoly) -> DepthPoly {
        if self.is_zero() || rhs.is_zero() {
            return DepthPoly::new(self.field, Vec::new());
        }
        let mut out = vec![QmPoly::zero(self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        DepthPoly::new(self.field, out)
    }
}

/// `P_f = f(E + Y, g, h)`.
pub fn associated_polynomial(f: &QmPoly) -> DepthPoly {
    let field = f.field();
    let p = field.p();
    let depth = f.depth().unwrap_or(0) as usize;
    let mut acc: Vec<Accum> = (0..=depth).map(|_| Accum::new(field)).collect();
    for (m, c) in f.terms() {
        for j in 0..=m.e {
            let b = binom_mod_p(m.e as i64, j as u64, p);
            if b != 0 {
                acc[j as usize].add_term(Mono { e: m.e - j, ..*m }, &c.scale(field.from_int(b as i64)));
            }
        }
    }
    DepthPoly::new(field, acc.into_iter().map(Accum::finish).collect())
}

/// The associated polynomial of the `i`-th coefficient form:
/// `Σ_{j >= i} C(j, i) φ_j Y^(j - i)`.
pub fn depth_coefficient_transform(poly: &DepthPoly, i: usize) -> Result<DepthPoly> {
    let deg = poly.degree().unwrap_or(0);
    if i > deg {
        return Err(Error::IndexOutOfRange { index: i, degree: deg });
    }
    let field = poly.field;
    let p = field.p();
    let coeffs = (i..poly.coeffs.len())
        .map(|j| poly.coeffs[j].scale(&RatT::from_int(field, binom_mod_p(j as i64, i as u64, p) as i64)))
        .collect();
    Ok(DepthPoly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let f = FieldConfig::for_q(5).unwrap();
        let pe = associated_polynomial(&QmPoly::e(f));
        assert_eq!(pe.coeffs(), &[QmPoly::e(f), QmPoly::one(f)]);
        let ph = associated_polynomial(&QmPoly::h(f));
        assert_eq!(ph.coeffs(), &[QmPoly::h(f)]);
        let e2g = &QmPoly::e(f).pow(2) * &QmPoly::g(f);
        let p = associated_polynomial(&e2g);
        assert_eq!(p, &(&pe * &pe) * &associated_polynomial(&QmPoly::g(f)));
    }

    #[test]
    fn transform_small_cases() {
        let f = FieldConfig::for_q(7).unwrap();
        let pe = associated_polynomial(&QmPoly::e(f));
        assert_eq!(depth_coefficient_transform(&pe, 1).unwrap().coeffs(), &[QmPoly::one(f)]);
        assert_eq!(depth_coefficient_transform(&pe, 0).unwrap(), pe);
        assert!(depth_coefficient_transform(&pe, 2).is_err());
        let sq = &pe * &pe;
        let t1 = depth_coefficient_transform(&sq, 1).unwrap();
        let two = QmPoly::one(f).scale_int(2);
        assert_eq!(t1.coeffs(), &[QmPoly::e(f).scale_int(2), two]);
    }
}
