use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldConfig, FqElem};

/// A polynomial in `F_q[T]`, coefficients lowest degree first, trimmed so the
/// last stored coefficient is nonzero.
#[derive(Clone)]
pub struct PolyT {
    field: FieldConfig,
    coeffs: Vec<FqElem>,
}

impl PartialEq for PolyT {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for PolyT {}

impl Hash for PolyT {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyT({self})")
    }
}

fn trim(v: &mut Vec<FqElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl PolyT {
    pub fn from_coeffs(field: FieldConfig, mut coeffs: Vec<FqElem>) -> Self {
        trim(&mut coeffs);
        PolyT { field, coeffs }
    }

    pub fn zero(field: FieldConfig) -> Self {
        PolyT { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldConfig) -> Self {
        Self::constant(field, FqElem::ONE)
    }

    pub fn constant(field: FieldConfig, c: FqElem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn from_int(field: FieldConfig, n: i64) -> Self {
        Self::constant(field, field.from_int(n))
    }

    /// `c·T^deg`.
    pub fn monomial(field: FieldConfig, c: FqElem, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![FqElem::ZERO; deg + 1];
        coeffs[deg] = c;
        PolyT { field, coeffs }
    }

    /// The indeterminate `T`.
    pub fn t(field: FieldConfig) -> Self {
        Self::monomial(field, FqElem::ONE, 1)
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn scale(&self, c: FqElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        PolyT { field: f, coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyT { field: self.field, coeffs }
    }

    /// Returns `(lc, self / lc)`; the zero polynomial maps to `(0, 0)`.
    pub fn monic(&self) -> (FqElem, Self) {
        let lc = self.leading();
        match self.field.inv(lc) {
            Some(inv) if lc != FqElem::ONE => (lc, self.scale(inv)),
            _ => (lc, self.clone()),
        }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(p^k)`, computed coefficientwise.
    pub fn frobenius(&self, k: u32) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let f = self.field;
        let stride = (f.p() as usize).pow(k);
        let mut coeffs = vec![FqElem::ZERO; (self.coeffs.len() - 1) * stride + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let mut x = c;
            for _ in 0..k % f.e() {
                x = f.frobenius(x);
            }
            coeffs[i * stride] = x;
        }
        PolyT { field: f, coeffs }
    }

    /// The `p^k`-th root, if every exponent is divisible by `p^k`.
    pub fn frobenius_root(&self, k: u32) -> Option<Self> {
        if self.is_zero() || k == 0 {
            return Some(self.clone());
        }
        let f = self.field;
        let stride = (f.p() as usize).pow(k);
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / stride + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % stride == 0 {
                let mut x = c;
                for _ in 0..k % f.e() {
                    x = f.pth_root(x);
                }
                coeffs.push(x);
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(PolyT { field: f, coeffs })
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn divrem(&self, d: &PolyT) -> (PolyT, PolyT) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(f), self.clone());
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv(d.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; r.len() - dd];
        if d.is_monic() && f.e() == 1 {
            // Prime field: do the inner loop on integers.
            let p = f.p();
            let dv: Vec<u32> = d.coeffs.iter().map(|c| c.0 as u32).collect();
            let mut rv: Vec<u32> = r.iter().map(|c| c.0 as u32).collect();
            for top in (dd..rv.len()).rev() {
                let c = rv[top];
                if c == 0 {
                    continue;
                }
                let shift = top - dd;
                quot[shift] = FqElem(c as u16);
                let negc = p - c;
                for (j, &dj) in dv.iter().enumerate() {
                    rv[shift + j] = (rv[shift + j] + negc * dj) % p;
                }
            }
            r = rv.into_iter().map(|c| FqElem(c as u16)).collect();
        } else {
            for top in (dd..r.len()).rev() {
                let c = r[top];
                if c.is_zero() {
                    continue;
                }
                let factor = f.mul(c, lead_inv);
                let shift = top - dd;
                quot[shift] = factor;
                let negf = f.neg(factor);
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[shift + j] = f.add(r[shift + j], f.mul(negf, dj));
                }
            }
        }
        r.truncate(dd);
        (PolyT::from_coeffs(f, quot), PolyT::from_coeffs(f, r))
    }

    /// Exact quotient; panics (in debug builds) if the division leaves a remainder.
    pub fn div_exact(&self, d: &PolyT) -> PolyT {
        if d.is_one() {
            return self.clone();
        }
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &PolyT) -> PolyT {
        if self.is_one() || other.is_one() {
            return Self::one(self.field);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one(self.field);
            }
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic().1
    }

    /// Evaluation at a field element.
    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = self.field;
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn mul_coeffs(&self, other: &PolyT) -> Vec<FqElem> {
        let f = self.field;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let n = a.len() + b.len() - 1;
        if f.e() == 1 {
            let p = f.p() as u64;
            // Products are < p^2 <= 2^20, so 2^40 terms fit before reduction.
            let mut acc = vec![0u64; n];
            for (i, &x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let x = x.0 as u64;
                for (slot, &y) in acc[i..].iter_mut().zip(b.iter()) {
                    *slot += x * y.0 as u64;
                }
            }
            acc.into_iter().map(|c| FqElem((c % p) as u16)).collect()
        } else {
            let mut acc = vec![FqElem::ZERO; n];
            for (i, &x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (slot, &y) in acc[i..].iter_mut().zip(b.iter()) {
                    *slot = f.add(*slot, f.mul(x, y));
                }
            }
            acc
        }
    }

    fn add_coeffs(&self, other: &PolyT, negate_other: bool) -> PolyT {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut y = other.coeff(i);
            if negate_other {
                y = f.neg(y);
            }
            out.push(f.add(self.coeff(i), y));
        }
        PolyT::from_coeffs(f, out)
    }

    fn fmt_coeff(&self, c: FqElem) -> (bool, String) {
        let f = self.field;
        if let Some(v) = f.as_prime(c) {
            let p = f.p();
            if p > 2 && v > p / 2 {
                (true, (p - v).to_string())
            } else {
                (false, v.to_string())
            }
        } else {
            let coords: Vec<String> = f.coords(c).iter().map(|x| x.to_string()).collect();
            (false, format!("[{}]", coords.join(",")))
        }
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for PolyT {
    /// Descending degree, e.g. `T^5-T`, `[0,1]*T^2+1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = self.fmt_coeff(c);
            if neg {
                write!(out, "-")?;
            } else if !first {
                write!(out, "+")?;
            }
            first = false;
            let var = match deg {
                0 => String::new(),
                1 => "T".to_string(),
                d => format!("T^{d}"),
            };
            match (mag.as_str(), var.is_empty()) {
                (_, true) => write!(out, "{mag}")?,
                ("1", false) => write!(out, "{var}")?,
                (_, false) => write!(out, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a PolyT> for &'a PolyT {
    type Output = PolyT;
    fn add(self, rhs: &PolyT) -> PolyT {
        self.add_coeffs(rhs, false)
    }
}

impl<'a> Sub<&'a PolyT> for &'a PolyT {
    type Output = PolyT;
    fn sub(self, rhs: &PolyT) -> PolyT {
        self.add_coeffs(rhs, true)
    }
}

impl<'a> Mul<&'a PolyT> for &'a PolyT {
    type Output = PolyT;
    fn mul(self, rhs: &PolyT) -> PolyT {
        if self.is_zero() || rhs.is_zero() {
            return PolyT::zero(self.field);
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        PolyT::from_coeffs(self.field, self.mul_coeffs(rhs))
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        let f = self.field;
        PolyT { field: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldConfig {
        FieldConfig::for_q(5).unwrap()
    }

    fn poly(f: FieldConfig, c: &[i64]) -> PolyT {
        PolyT::from_coeffs(f, c.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn canonical_zero_is_empty() {
        let f = f5();
        let p = poly(f, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!((&p - &p).coeffs().is_empty());
    }

    #[test]
    fn divrem_reconstructs() {
        let f = FieldConfig::for_q(9).unwrap();
        let a = PolyT::from_coeffs(f, f.elements().cycle().skip(3).take(11).collect());
        let b = PolyT::from_coeffs(f, vec![f.from_coords(&[1, 2]).unwrap(), FqElem::ONE, f.from_coords(&[0, 1]).unwrap()]);
        let (q, r) = a.divrem(&b);
        assert!(r.degree() < b.degree());
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_of_products() {
        let f = f5();
        let x = poly(f, &[1, 1]);
        let y = poly(f, &[2, 0, 1]);
        let z = poly(f, &[3, 1, 1]);
        let g = (&x * &y).gcd(&(&x * &z));
        assert_eq!(g, x);
    }

    #[test]
    fn frobenius_matches_power() {
        for q in [4, 9, 7] {
            let f = FieldConfig::for_q(q).unwrap();
            let a = PolyT::from_coeffs(f, f.elements().skip(1).take(4).collect());
            for k in 0..3 {
                let fr = a.frobenius(k);
                assert_eq!(fr, a.pow((f.p() as u64).pow(k)));
                assert_eq!(fr.frobenius_root(k).unwrap(), a);
            }
            assert!(PolyT::t(f).frobenius_root(1).is_none());
        }
    }

    #[test]
    fn display_descending() {
        let f = f5();
        let t5 = PolyT::t(f).pow(5);
        assert_eq!((&t5 - &PolyT::t(f)).to_string(), "T^5-T");
        assert_eq!(poly(f, &[3, 0, 2]).to_string(), "2*T^2-2");
        let f4 = FieldConfig::for_q(4).unwrap();
        let w = PolyT::monomial(f4, f4.from_coords(&[0, 1]).unwrap(), 2);
        assert_eq!((&w + &PolyT::one(f4)).to_string(), "[0,1]*T^2+1");
    }
}
