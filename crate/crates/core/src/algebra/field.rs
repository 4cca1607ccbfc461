//! Finite fields `F_q = F_p[x]/(modulus)` with precomputed operation tables.
//!
//! Field descriptions are interned: constructing the same `(p, modulus)`
//! twice yields the same `'static` table, so [`FieldConfig`] is a `Copy`
//! handle that compares by identity.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field size. Operation tables are dense `q × q`.
pub const MAX_Q: u32 = 1024;

/// An element of `F_q`, encoded as the base-`p` integer of its power-basis
/// coordinates (`coords[0] + coords[1]·p + …`). Integers `0..p` embed as
/// themselves.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
#[repr(transparent)]
pub struct FqElem(pub(crate) u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    root: Vec<u16>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct FieldConfig(&'static FieldData);

impl PartialEq for FieldConfig {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for FieldConfig {}

impl Hash for FieldConfig {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0 as *const FieldData as usize).hash(state)
    }
}

impl fmt::Debug for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(p={}, e={}, modulus={:?})", self.q(), self.p(), self.e(), self.modulus())
    }
}

type Registry = Mutex<HashMap<(u32, Vec<u32>), &'static FieldData>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p as plain residue vectors, low degree first. Only used
// while building tables and checking irreducibility.

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * bi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

pub(crate) fn mod_inv(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i64) as u32
}

/// Trial division of `modulus` by every monic polynomial of degree `1..=e/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if fp_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn decode(mut idx: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build(p: u32, modulus: Vec<u32>) -> FieldData {
    let e = (modulus.len() - 1) as u32;
    let q = p.pow(e);
    let qs = q as usize;
    let coords: Vec<Vec<u32>> = (0..q).map(|i| decode(i, p, e)).collect();
    let mut add = vec![0u16; qs * qs];
    let mut mul = vec![0u16; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = encode(&s, p) as u16;
            let mut prod = vec![0u32; 2 * e as usize];
            for (i, x) in coords[a].iter().enumerate() {
                for (j, y) in coords[b].iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = fp_rem(&prod, &modulus, p);
            r.resize(e as usize, 0);
            mul[a * qs + b] = encode(&r, p) as u16;
        }
    }
    let mut neg = vec![0u16; qs];
    let mut inv = vec![0u16; qs];
    let mut frob = vec![0u16; qs];
    let mut root = vec![0u16; qs];
    for a in 0..qs {
        for b in 0..qs {
            if add[a * qs + b] == 0 {
                neg[a] = b as u16;
            }
            if mul[a * qs + b] == 1 {
                inv[a] = b as u16;
            }
        }
        let mut x = 1usize;
        for _ in 0..p {
            x = mul[x * qs + a] as usize;
        }
        frob[a] = x as u16;
        root[x] = a as u16;
    }
    FieldData { p, e, q, modulus, add, mul, neg, inv, frob, root }
}

/// Default defining polynomials (low to high) for the desk-scale fields.
fn default_modulus(q: u32) -> Option<(u32, Vec<u32>)> {
    Some(match q {
        2 => (2, vec![0, 1]),
        3 => (3, vec![0, 1]),
        4 => (2, vec![1, 1, 1]),
        5 => (5, vec![0, 1]),
        7 => (7, vec![0, 1]),
        8 => (2, vec![1, 1, 0, 1]),
        9 => (3, vec![1, 0, 1]),
        _ => return None,
    })
}

impl FieldConfig {
    /// Builds (or fetches) `F_{p^e}` defined by `modulus` (`e + 1` residues,
    /// low to high). A non-monic modulus is rescaled to be monic.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let mut m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        let lead = *m.last().unwrap();
        if lead == 0 {
            return Err(Error::InvalidField("modulus has zero leading coefficient".into()));
        }
        let li = mod_inv(lead, p);
        for c in m.iter_mut() {
            *c = *c * li % p;
        }
        let e = (m.len() - 1) as u32;
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_Q as u64 {
            return Err(Error::InvalidField(format!("q = {p}^{e} exceeds the supported maximum {MAX_Q}")));
        }
        if !is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!("modulus {m:?} is reducible over F_{p}")));
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        let key = (p, m.clone());
        if let Some(data) = reg.get(&key) {
            return Ok(FieldConfig(data));
        }
        let data: &'static FieldData = Box::leak(Box::new(build(p, m)));
        reg.insert(key, data);
        Ok(FieldConfig(data))
    }

    /// `F_q` with the shipped default modulus, or the first irreducible
    /// polynomial in lexicographic order when `q` has no default.
    pub fn for_q(q: u32) -> Result<Self> {
        if let Some((p, m)) = default_modulus(q) {
            return Self::new(p, &m);
        }
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > MAX_Q {
            return Err(Error::InvalidField(format!("q = {q} exceeds the supported maximum {MAX_Q}")));
        }
        if e == 1 {
            return Self::new(p, &[0, 1]);
        }
        let count = (p as u64).pow(e);
        for code in 0..count {
            let mut m = decode(code as u32, p, e);
            m.push(1);
            if is_irreducible(&m, p) {
                return Self::new(p, &m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Like [`FieldConfig::new`] but also checks the declared extension degree.
    pub fn with_degree(p: u32, e: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() != e as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has {} coefficients, expected e + 1 = {}",
                modulus.len(),
                e + 1
            )));
        }
        Self::new(p, modulus)
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn e(self) -> u32 {
        self.0.e
    }
    #[inline]
    pub fn q(self) -> u32 {
        self.0.q
    }
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.add[a.index() * self.0.q as usize + b.index()])
    }
    #[inline]
    pub fn sub(self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.0.mul[a.index() * self.0.q as usize + b.index()])
    }
    #[inline]
    pub fn neg(self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.index()])
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(self, a: FqElem) -> Option<FqElem> {
        (!a.is_zero()).then(|| FqElem(self.0.inv[a.index()]))
    }
    /// `a^p`.
    #[inline]
    pub fn frobenius(self, a: FqElem) -> FqElem {
        FqElem(self.0.frob[a.index()])
    }
    /// The unique `b` with `b^p = a`.
    #[inline]
    pub fn pth_root(self, a: FqElem) -> FqElem {
        FqElem(self.0.root[a.index()])
    }

    pub fn pow(self, a: FqElem, mut n: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime field.
    pub fn from_int(self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u16)
    }

    pub fn from_coords(self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() > self.e() as usize || coords.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidField(format!("{coords:?} is not a coordinate vector of F_{}", self.q())));
        }
        Ok(FqElem(encode(coords, self.p()) as u16))
    }

    pub fn coords(self, a: FqElem) -> Vec<u32> {
        decode(a.0 as u32, self.p(), self.e())
    }

    pub fn elements(self) -> impl Iterator<Item = FqElem> + Clone {
        (0..self.q()).map(|i| FqElem(i as u16))
    }

    /// The prime-field residue of `a` if it lies in `F_p`.
    pub fn as_prime(self, a: FqElem) -> Option<u32> {
        ((a.0 as u32) < self.p()).then_some(a.0 as u32)
    }
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(FieldConfig::new(4, &[0, 1]).is_err());
        assert!(FieldConfig::new(2, &[1, 0, 1]).is_err()); // x^2 + 1 = (x + 1)^2
        assert!(FieldConfig::new(3, &[0, 0]).is_err());
        assert!(FieldConfig::with_degree(3, 2, &[1, 1]).is_err());
    }

    #[test]
    fn interning_is_by_value() {
        let a = FieldConfig::for_q(9).unwrap();
        let b = FieldConfig::new(3, &[1, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, FieldConfig::for_q(3).unwrap());
    }

    #[test]
    fn non_default_prime_powers_are_found() {
        let f = FieldConfig::for_q(27).unwrap();
        assert_eq!((f.p(), f.e(), f.q()), (3, 3, 27));
        let f = FieldConfig::for_q(11).unwrap();
        assert_eq!(f.e(), 1);
        assert!(FieldConfig::for_q(12).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldConfig::for_q(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.pow(a, q as u64), a, "x^q = x fails in F_{q}");
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                assert_eq!(f.pth_root(f.frobenius(a)), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = FieldConfig::for_q(9).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coords(&f.coords(a)).unwrap(), a);
            assert_eq!(f.coords(a).len(), 2);
        }
        assert!(f.from_coords(&[3, 0]).is_err());
    }
}
