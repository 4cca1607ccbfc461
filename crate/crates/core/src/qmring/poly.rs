use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{FieldConfig, RatT};

/// The monomial `E^e g^g h^h`. Ordered lexicographically on `(e, g, h)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono {
    pub e: u32,
    pub g: u32,
    pub h: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { e: 0, g: 0, h: 0 };
    pub const E: Mono = Mono { e: 1, g: 0, h: 0 };
    pub const G: Mono = Mono { e: 0, g: 1, h: 0 };
    pub const H: Mono = Mono { e: 0, g: 0, h: 1 };

    pub const fn new(e: u32, g: u32, h: u32) -> Self {
        Mono { e, g, h }
    }

    /// `2e + (q-1) g + (q+1) h`.
    pub fn weight(self, q: u32) -> u64 {
        2 * self.e as u64 + (q as u64 - 1) * self.g as u64 + (q as u64 + 1) * self.h as u64
    }

    /// `(e + h) mod (q-1)`.
    pub fn typ(self, q: u32) -> u32 {
        ((self.e as u64 + self.h as u64) % (q as u64 - 1)) as u32
    }

    pub fn degree(self) -> u32 {
        self.e + self.g + self.h
    }

    pub fn pow(self, k: u32) -> Self {
        Mono { e: self.e * k, g: self.g * k, h: self.h * k }
    }

    /// Componentwise quotient by `k`, if every exponent is divisible.
    pub fn root(self, k: u32) -> Option<Self> {
        (self.e.is_multiple_of(k) && self.g.is_multiple_of(k) && self.h.is_multiple_of(k)).then(|| Mono { e: self.e / k, g: self.g / k, h: self.h / k })
    }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, o: Mono) -> Mono {
        Mono { e: self.e + o.e, g: self.g + o.g, h: self.h + o.h }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Mono::ONE {
            return write!(f, "1");
        }
        let parts: Vec<String> = [("E", self.e), ("g", self.g), ("h", self.h)]
            .iter()
            .filter(|(_, k)| *k > 0)
            .map(|(s, k)| if *k == 1 { s.to_string() } else { format!("{s}^{k}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An element of `K[E, g, h]`: a finitely supported map from monomials to
/// nonzero coefficients in `K = F_q(T)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QmPoly {
    field: FieldConfig,
    terms: BTreeMap<Mono, RatT>,
}

impl fmt::Debug for QmPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QmPoly({self})")
    }
}

/// Sparse accumulator for sums of many products.
pub(crate) struct Accum {
    field: FieldConfig,
    map: HashMap<Mono, RatT>,
}

impl Accum {
    pub fn new(field: FieldConfig) -> Self {
        Accum { field, map: HashMap::new() }
    }

    pub fn add_term(&mut self, m: Mono, c: &RatT) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&m) {
            Some(v) => *v = &*v + c,
            None => {
                self.map.insert(m, c.clone());
            }
        }
    }

    /// Adds `c · x^shift · poly`.
    pub fn add_scaled(&mut self, poly: &QmPoly, c: &RatT, shift: Mono) {
        if c.is_one() {
            for (m, v) in &poly.terms {
                self.add_term(*m * shift, v);
            }
        } else {
            for (m, v) in &poly.terms {
                self.add_term(*m * shift, &(v * c));
            }
        }
    }

    pub fn add_product(&mut self, a: &QmPoly, b: &QmPoly) {
        for (ma, ca) in &a.terms {
            self.add_scaled(b, ca, *ma);
        }
    }

    pub fn finish(self) -> QmPoly {
        QmPoly { field: self.field, terms: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl QmPoly {
    pub fn zero(field: FieldConfig) -> Self {
        QmPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldConfig) -> Self {
        Self::term(RatT::one(field), Mono::ONE)
    }

    pub fn constant(c: RatT) -> Self {
        Self::term(c, Mono::ONE)
    }

    pub fn monomial(field: FieldConfig, m: Mono) -> Self {
        Self::term(RatT::one(field), m)
    }

    pub fn term(c: RatT, m: Mono) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        QmPoly { field, terms }
    }

    pub fn e(field: FieldConfig) -> Self {
        Self::monomial(field, Mono::E)
    }

    pub fn g(field: FieldConfig) -> Self {
        Self::monomial(field, Mono::G)
    }

    pub fn h(field: FieldConfig) -> Self {
        Self::monomial(field, Mono::H)
    }

    pub fn from_terms(field: FieldConfig, terms: impl IntoIterator<Item = (Mono, RatT)>) -> Self {
        let mut acc = Accum::new(field);
        for (m, c) in terms {
            acc.add_term(m, &c);
        }
        acc.finish()
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of `(e, g, h)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &RatT)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Mono> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: Mono) -> RatT {
        self.terms.get(&m).cloned().unwrap_or_else(|| RatT::zero(self.field))
    }

    /// The constant, if this is an element of `K`.
    pub fn as_constant(&self) -> Option<RatT> {
        match self.terms.len() {
            0 => Some(RatT::zero(self.field)),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    /// Degree in `E`; `None` for zero.
    pub fn depth(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.e).max()
    }

    pub fn scale(&self, c: &RatT) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        QmPoly { field: self.field, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&RatT::from_int(self.field, n))
    }

    /// Multiplication by a monomial.
    pub fn shift(&self, m: Mono) -> Self {
        QmPoly { field: self.field, terms: self.terms.iter().map(|(k, v)| (*k * m, v.clone())).collect() }
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

    /// `self^(p^k)`, computed termwise (the `p`-power map is additive).
    pub fn frobenius(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let pk = self.field.p().pow(k);
        QmPoly { field: self.field, terms: self.terms.iter().map(|(m, c)| (m.pow(pk), c.frobenius(k))).collect() }
    }

    /// The `p^k`-th root, if `self` is a `p^k`-th power in `K[E, g, h]`.
    pub fn frobenius_root(&self, k: u32) -> Option<Self> {
        let pk = self.field.p().pow(k);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.root(pk)?, c.frobenius_root(k)?);
        }
        Some(QmPoly { field: self.field, terms })
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(Mono) -> bool) -> Self {
        QmPoly { field: self.field, terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Reduction modulo the ideal `(h)`.
    pub fn mod_h(&self) -> Self {
        self.filter(|m| m.h == 0)
    }

    /// Applies a monomial map with coefficient factor, collecting like terms.
    pub fn map_monomials(&self, mut f: impl FnMut(Mono) -> Option<(Mono, RatT)>) -> Self {
        let mut acc = Accum::new(self.field);
        for (m, c) in &self.terms {
            if let Some((m2, k)) = f(*m) {
                acc.add_term(m2, &(c * &k));
            }
        }
        acc.finish()
    }

    fn partial(&self, pick: impl Fn(Mono) -> (u32, Mono)) -> Self {
        self.map_monomials(|m| {
            let (k, lowered) = pick(m);
            (k > 0).then(|| (lowered, RatT::from_int(self.field, k as i64)))
        })
    }

    pub fn d_de(&self) -> Self {
        self.partial(|m| (m.e, Mono { e: m.e.saturating_sub(1), ..m }))
    }

    pub fn d_dg(&self) -> Self {
        self.partial(|m| (m.g, Mono { g: m.g.saturating_sub(1), ..m }))
    }

    pub fn d_dh(&self) -> Self {
        self.partial(|m| (m.h, Mono { h: m.h.saturating_sub(1), ..m }))
    }

    fn add_impl(&self, other: &QmPoly, negate: bool) -> QmPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            match terms.get_mut(m) {
                Some(v) => {
                    let s = &*v + &c;
                    if s.is_zero() {
                        terms.remove(m);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    terms.insert(*m, c);
                }
            }
        }
        QmPoly { field: self.field, terms }
    }
}

impl fmt::Display for QmPoly {
    /// Descending lexicographic order, e.g. `E^6 + (1/(T^5-T)) h^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = !c.is_one() && (-c).is_one();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = (!neg && !c.is_one()).then(|| format!("({c})"));
            match (coeff, *m == Mono::ONE) {
                (Some(c), true) => write!(f, "{c}")?,
                (Some(c), false) => write!(f, "{c} {m}")?,
                (None, _) => write!(f, "{m}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a QmPoly> for &'a QmPoly {
    type Output = QmPoly;
    fn add(self, rhs: &QmPoly) -> QmPoly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a QmPoly> for &'a QmPoly {
    type Output = QmPoly;
    fn sub(self, rhs: &QmPoly) -> QmPoly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a QmPoly> for &'a QmPoly {
    type Output = QmPoly;
    fn mul(self, rhs: &QmPoly) -> QmPoly {
        if self.is_zero() || rhs.is_zero() {
            return QmPoly::zero(self.field);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return rhs.shift(*m).scale(c);
        }
        if rhs.terms.len() == 1 {
            return rhs * self;
        }
        let mut acc = Accum::new(self.field);
        acc.add_product(self, rhs);
        acc.finish()
    }
}

impl Neg for &QmPoly {
    type Output = QmPoly;
    fn neg(self) -> QmPoly {
        QmPoly { field: self.field, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let f = FieldConfig::for_q(5).unwrap();
        let e = QmPoly::e(f);
        let g = QmPoly::g(f);
        let h = QmPoly::h(f);
        let x = &(&e * &g) + &h;
        let y = &x - &h;
        assert_eq!(y, &e * &g);
        assert!((&x - &x).is_zero());
        assert_eq!(x.pow(5), x.frobenius(1));
        assert_eq!(x.frobenius(1).frobenius_root(1).unwrap(), x);
        assert!(x.frobenius_root(1).is_none());
    }

    #[test]
    fn display_forms() {
        let f = FieldConfig::for_q(5).unwrap();
        let e = QmPoly::e(f);
        let h = QmPoly::h(f);
        let c = RatT::t(f).inv().unwrap();
        let x = &e.pow(6) + &h.pow(2).scale(&c);
        assert_eq!(x.to_string(), "E^6 + (1/T) h^2");
        assert_eq!((-&x).to_string(), "-E^6 + (-1/T) h^2");
        assert_eq!(QmPoly::one(f).to_string(), "1");
        assert_eq!(QmPoly::zero(f).to_string(), "0");
    }

    #[test]
    fn partials() {
        let f = FieldConfig::for_q(3).unwrap();
        let x = QmPoly::monomial(f, Mono::new(3, 2, 1));
        assert!(x.d_de().is_zero());
        assert_eq!(x.d_dg(), QmPoly::monomial(f, Mono::new(3, 1, 1)).scale_int(2));
        assert_eq!(x.d_dh(), QmPoly::monomial(f, Mono::new(3, 2, 0)));
    }
}
