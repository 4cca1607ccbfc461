use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldConfig, FqElem};
use super::poly::PolyT;
use crate::error::{Error, Result};

/// An element of `F_q(T)` in lowest terms with a monic denominator.
/// Equal values have identical representations, so `==` is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatT {
    num: PolyT,
    den: PolyT,
}

impl fmt::Debug for RatT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatT({self})")
    }
}

impl From<PolyT> for RatT {
    fn from(num: PolyT) -> Self {
        let den = PolyT::one(num.field());
        RatT { num, den }
    }
}

impl RatT {
    pub fn new(num: PolyT, den: PolyT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: PolyT, den: PolyT) -> Self {
        let f = num.field();
        if num.is_zero() {
            return RatT { num, den: PolyT::one(f) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let (lc, den) = den.monic();
        let num = if lc == FqElem::ONE { num } else { num.scale(f.inv(lc).unwrap()) };
        RatT { num, den }
    }

    pub fn zero(f: FieldConfig) -> Self {
        PolyT::zero(f).into()
    }

    pub fn one(f: FieldConfig) -> Self {
        PolyT::one(f).into()
    }

    pub fn from_int(f: FieldConfig, n: i64) -> Self {
        PolyT::from_int(f, n).into()
    }

    pub fn from_elem(f: FieldConfig, c: FqElem) -> Self {
        PolyT::constant(f, c).into()
    }

    pub fn t(f: FieldConfig) -> Self {
        PolyT::t(f).into()
    }

    pub fn field(&self) -> FieldConfig {
        self.num.field()
    }

    pub fn num(&self) -> &PolyT {
        &self.num
    }

    pub fn den(&self) -> &PolyT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as an element of `F_q`, if it is constant.
    pub fn as_constant(&self) -> Option<FqElem> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: FqElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatT { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lc, num) = self.num.monic();
        let inv = self.field().inv(lc).unwrap();
        Ok(RatT { num: self.den.scale(inv), den: num })
    }

    pub fn checked_div(&self, other: &RatT) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs();
        // Powers of coprime polynomials stay coprime, and powers of monic stay monic.
        Ok(RatT { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `self^(p^k)`.
    pub fn frobenius(&self, k: u32) -> Self {
        RatT { num: self.num.frobenius(k), den: self.den.frobenius(k) }
    }

    /// The `p^k`-th root, if it exists in `F_q(T)`.
    pub fn frobenius_root(&self, k: u32) -> Option<Self> {
        Some(RatT { num: self.num.frobenius_root(k)?, den: self.den.frobenius_root(k)? })
    }

    fn add_impl(&self, other: &RatT, negate: bool) -> RatT {
        let c = if negate { -&other.num } else { other.num.clone() };
        if self.is_zero() {
            return RatT { num: c, den: other.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let n = &self.num + &c;
            if self.den.is_one() {
                return n.into();
            }
            return Self::normalize(n, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let n = &(&self.num * &other.den) + &(&c * &self.den);
            return RatT { num: n, den: &self.den * &other.den };
        }
        let b1 = self.den.div_exact(&g);
        let d1 = other.den.div_exact(&g);
        let n = &(&self.num * &d1) + &(&c * &b1);
        if n.is_zero() {
            return Self::zero(self.field());
        }
        let g2 = n.gcd(&g);
        if g2.is_one() {
            RatT { num: n, den: &b1 * &other.den }
        } else {
            RatT { num: n.div_exact(&g2), den: &b1 * &other.den.div_exact(&g2) }
        }
    }
}

impl fmt::Display for RatT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.term_count() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let den = if self.den.term_count() > 1 { format!("({})", self.den) } else { self.den.to_string() };
        write!(f, "{num}/{den}")
    }
}

impl<'a> Add<&'a RatT> for &'a RatT {
    type Output = RatT;
    fn add(self, rhs: &RatT) -> RatT {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatT> for &'a RatT {
    type Output = RatT;
    fn sub(self, rhs: &RatT) -> RatT {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatT> for &'a RatT {
    type Output = RatT;
    fn mul(self, rhs: &RatT) -> RatT {
        if self.is_zero() || rhs.is_zero() {
            return RatT::zero(self.field());
        }
        match (self.den.is_one(), rhs.den.is_one()) {
            (true, true) => (&self.num * &rhs.num).into(),
            (true, false) => {
                let g = self.num.gcd(&rhs.den);
                RatT { num: &self.num.div_exact(&g) * &rhs.num, den: rhs.den.div_exact(&g) }
            }
            (false, true) => rhs * self,
            (false, false) => {
                let g1 = self.num.gcd(&rhs.den);
                let g2 = rhs.num.gcd(&self.den);
                RatT {
                    num: &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2),
                    den: &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1),
                }
            }
        }
    }
}

impl Neg for &RatT {
    type Output = RatT;
    fn neg(self) -> RatT {
        RatT { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bracket;

    #[test]
    fn cancellation() {
        let f = FieldConfig::for_q(5).unwrap();
        let t = PolyT::t(f);
        let one = PolyT::one(f);
        let r = RatT::new(&(&t * &t) - &one, &t - &one).unwrap();
        assert_eq!(r, RatT::from(&t + &one));
        assert!(RatT::new(one.clone(), PolyT::zero(f)).is_err());
    }

    #[test]
    fn bracket_inverse_pair() {
        let f = FieldConfig::for_q(4).unwrap();
        let b1 = bracket(1, f);
        let b2 = bracket(2, f);
        let x = RatT::new(b1.clone(), b2.clone()).unwrap();
        let y = RatT::new(b2, b1.clone()).unwrap();
        assert!((&x * &y).is_one());
        let inv1 = RatT::from(b1).inv().unwrap();
        assert_eq!(&inv1 + &RatT::zero(f), inv1);
        assert_eq!(RatT::zero(f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn normal_form_is_unique() {
        let f = FieldConfig::for_q(7).unwrap();
        let t = PolyT::t(f);
        let a = RatT::new(t.scale(f.from_int(3)), t.scale(f.from_int(3))).unwrap();
        assert!(a.is_one());
        let b = RatT::new(PolyT::from_int(f, 2), (&t + &PolyT::one(f)).scale(f.from_int(4))).unwrap();
        assert!(b.den().is_monic());
        let c = &(&b + &b) - &b;
        assert_eq!(c, b);
    }
}
