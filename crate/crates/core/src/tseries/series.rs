use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{FieldConfig, RatT};

/// A power series in `t` over `K`, exact below `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    field: FieldConfig,
    order: usize,
    coeffs: BTreeMap<usize, RatT>,
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries({self})")
    }
}

impl fmt::Display for TSeries {
    /// Ascending, e.g. `t + (2) t^3 + O(t^10)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, c)) in self.coeffs.iter().enumerate() {
            let neg = !c.is_one() && (-c).is_one();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match n {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{n}"),
            };
            let coeff = (!neg && !c.is_one()).then(|| format!("({c})"));
            match (coeff, var.is_empty()) {
                (Some(c), true) => write!(f, "{c}")?,
                (Some(c), false) => write!(f, "{c} {var}")?,
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{var}")?,
            }
        }
        if self.coeffs.is_empty() {
            write!(f, "O(t^{})", self.order)
        } else {
            write!(f, " + O(t^{})", self.order)
        }
    }
}

impl TSeries {
    pub fn zero(field: FieldConfig, order: usize) -> Self {
        TSeries { field, order, coeffs: BTreeMap::new() }
    }

    pub fn one(field: FieldConfig, order: usize) -> Self {
        Self::monomial(RatT::one(field), 0, order)
    }

    /// `c·t^n + O(t^order)`.
    pub fn monomial(c: RatT, n: usize, order: usize) -> Self {
        let field = c.field();
        let mut coeffs = BTreeMap::new();
        if n < order && !c.is_zero() {
            coeffs.insert(n, c);
        }
        TSeries { field, order, coeffs }
    }

    pub fn from_terms(field: FieldConfig, order: usize, terms: impl IntoIterator<Item = (usize, RatT)>) -> Self {
        let mut coeffs: BTreeMap<usize, RatT> = BTreeMap::new();
        for (n, c) in terms {
            if n >= order || c.is_zero() {
                continue;
            }
            let v = match coeffs.remove(&n) {
                Some(old) => &old + &c,
                None => c,
            };
            if !v.is_zero() {
                coeffs.insert(n, v);
            }
        }
        TSeries { field, order, coeffs }
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> RatT {
        assert!(n < self.order, "coefficient t^{n} is beyond the truncation order {}", self.order);
        self.coeffs.get(&n).cloned().unwrap_or_else(|| RatT::zero(self.field))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &RatT)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least exponent with a nonzero coefficient; `None` when the series
    /// vanishes to its truncation order.
    pub fn nu_infinity(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TSeries { field: self.field, order, coeffs: self.coeffs.range(..order).map(|(n, c)| (*n, c.clone())).collect() }
    }

    pub fn scale(&self, c: &RatT) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.order);
        }
        TSeries { field: self.field, order: self.order, coeffs: self.coeffs.iter().map(|(n, v)| (*n, v * c)).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        TSeries { field: self.field, order: self.order + k, coeffs: self.coeffs.iter().map(|(n, v)| (n + k, v.clone())).collect() }
    }

    /// `self^(p^k)`, exact below `order · p^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        let pk = (self.field.p() as usize).pow(k);
        TSeries {
            field: self.field,
            order: self.order * pk,
            coeffs: self.coeffs.iter().map(|(n, v)| (n * pk, v.frobenius(k))).collect(),
        }
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs.get(&0)?;
        let inv0 = a0.inv().ok()?;
        let neg_inv0 = -&inv0;
        let mut out: Vec<RatT> = Vec::with_capacity(self.order);
        out.push(inv0);
        let tail: Vec<(usize, &RatT)> = self.coeffs.range(1..).map(|(n, c)| (*n, c)).collect();
        for n in 1..self.order {
            let mut acc = RatT::zero(self.field);
            for &(i, a) in tail.iter().take_while(|(i, _)| *i <= n) {
                let b = &out[n - i];
                if !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            out.push(&acc * &neg_inv0);
        }
        Some(Self::from_terms(self.field, self.order, out.into_iter().enumerate()))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.field, self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn combine(&self, other: &TSeries, negate: bool) -> TSeries {
        let order = self.order.min(other.order);
        let rhs = other.coeffs.range(..order).map(|(n, c)| (*n, if negate { -c } else { c.clone() }));
        let lhs = self.coeffs.range(..order).map(|(n, c)| (*n, c.clone()));
        Self::from_terms(self.field, order, lhs.chain(rhs))
    }
}

impl<'a> Add<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        self.combine(rhs, true)
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        TSeries { field: self.field, order: self.order, coeffs: self.coeffs.iter().map(|(n, c)| (*n, -c)).collect() }
    }
}

impl<'a> Mul<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        let mut acc: Vec<Option<RatT>> = vec![None; order];
        for (i, a) in self.coeffs.range(..order) {
            for (j, b) in rhs.coeffs.range(..order - i) {
                let prod = a * b;
                let slot = &mut acc[i + j];
                *slot = Some(match slot.take() {
                    Some(v) => &v + &prod,
                    None => prod,
                });
            }
        }
        TSeries {
            field: self.field,
            order,
            coeffs: acc.into_iter().enumerate().filter_map(|(n, c)| c.filter(|c| !c.is_zero()).map(|c| (n, c))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_geometric() {
        let f = FieldConfig::for_q(5).unwrap();
        let one = TSeries::one(f, 12);
        let x = &one - &TSeries::monomial(RatT::t(f), 3, 12);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, one);
        assert_eq!(inv.coeff(9), RatT::t(f).pow(3).unwrap());
        assert!(TSeries::monomial(RatT::one(f), 1, 5).inverse().is_none());
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f = FieldConfig::for_q(9).unwrap();
        let x = TSeries::from_terms(f, 10, [(0, RatT::one(f)), (1, RatT::t(f)), (4, RatT::from_int(f, 2))]);
        assert_eq!(x.frobenius(1).truncate(10), x.pow(3));
        assert_eq!(x.frobenius(2).order(), 90);
    }

    #[test]
    fn valuation() {
        let f = FieldConfig::for_q(3).unwrap();
        assert_eq!(TSeries::zero(f, 7).nu_infinity(), None);
        assert_eq!(TSeries::monomial(RatT::one(f), 4, 7).nu_infinity(), Some(4));
        assert_eq!(TSeries::monomial(RatT::one(f), 9, 7).nu_infinity(), None);
    }
}
