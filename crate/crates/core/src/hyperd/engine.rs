use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{FieldConfig, RatT};
use crate::error::{Error, Result};
use crate::qmring::{Accum, Mono, QmPoly};

use super::tables::{p_power_value, Constants};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Generator {
    E,
    G,
    H,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E, Generator::G, Generator::H];

    pub fn mono(self) -> Mono {
        match self {
            Generator::E => Mono::E,
            Generator::G => Mono::G,
            Generator::H => Mono::H,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::E => "E",
            Generator::G => "g",
            Generator::H => "h",
        })
    }
}

/// How `D_n` of a product of generators is expanded.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    /// Write a monomial as `m0 · m1^p` with all exponents of `m0` below `p`
    /// and use `D_n(m1^p) = (D_{n/p} m1)^p`; the rest is plain Leibniz.
    #[default]
    Frobenius,
    /// Peel off one generator at a time with the Leibniz rule only.
    Leibniz,
}

pub(crate) fn is_p_power(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Memoized divided derivatives `D_n` on `K[E, g, h]` for
/// `n <= p·q^2 - 1`, the range whose base-`p` digits only involve `D_{p^i}`
/// with `p^i <= q^2`.
pub struct DerivationEngine {
    field: FieldConfig,
    limit: u64,
    strategy: Strategy,
    consts: Constants,
    gens: HashMap<(Generator, u64), Arc<QmPoly>>,
    monos: HashMap<(Mono, u64), Arc<QmPoly>>,
}

impl fmt::Debug for DerivationEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivationEngine")
            .field("field", &self.field)
            .field("limit", &self.limit)
            .field("strategy", &self.strategy)
            .field("memoized", &(self.gens.len() + self.monos.len()))
            .finish()
    }
}

impl DerivationEngine {
    pub fn new(field: FieldConfig) -> Self {
        Self::with_strategy(field, Strategy::default())
    }

    pub fn with_strategy(field: FieldConfig, strategy: Strategy) -> Self {
        let q = field.q() as u64;
        DerivationEngine {
            field,
            limit: field.p() as u64 * q * q - 1,
            strategy,
            consts: Constants::new(field),
            gens: HashMap::new(),
            monos: HashMap::new(),
        }
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    /// Largest supported order.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.limit {
            Err(Error::OrderOutOfRange { n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// `D_n` of `E`, `g` or `h`.
    pub fn d_generator(&mut self, gen: Generator, n: u64) -> Result<QmPoly> {
        self.check(n)?;
        Ok((*self.gen(gen, n)).clone())
    }

    /// `D_n f`.
    pub fn derive(&mut self, f: &QmPoly, n: u64) -> Result<QmPoly> {
        self.check(n)?;
        Ok(self.derive_poly(f, n))
    }

    fn derive_poly(&mut self, f: &QmPoly, n: u64) -> QmPoly {
        if n == 0 {
            return f.clone();
        }
        let mut acc = Accum::new(self.field);
        for (m, c) in f.terms() {
            let d = self.mono(*m, n);
            acc.add_scaled(&d, c, Mono::ONE);
        }
        acc.finish()
    }

    fn gen(&mut self, gen: Generator, n: u64) -> Arc<QmPoly> {
        if let Some(v) = self.gens.get(&(gen, n)) {
            return v.clone();
        }
        let p = self.field.p() as u64;
        let value = if n == 0 {
            QmPoly::monomial(self.field, gen.mono())
        } else if is_p_power(n, p) {
            p_power_value(&self.consts, gen, n)
        } else {
            let mut low = 1u64;
            while (n / low).is_multiple_of(p) {
                low *= p;
            }
            let digit = (n / low) % p;
            if n != digit * low {
                // Lucas: C(n, j) = 1 when j is the lowest nonzero digit block.
                let j = digit * low;
                let inner = self.gen(gen, n - j);
                self.derive_poly(&inner, j)
            } else {
                // D_low ∘ D_{(digit-1)·low} = digit · D_n.
                let inner = self.gen(gen, n - low);
                let inv = RatT::from_int(self.field, digit as i64).inv().expect("digit is a unit");
                self.derive_poly(&inner, low).scale(&inv)
            }
        };
        let value = Arc::new(value);
        self.gens.insert((gen, n), value.clone());
        value
    }

    fn mono(&mut self, m: Mono, n: u64) -> Arc<QmPoly> {
        if n == 0 {
            return Arc::new(QmPoly::monomial(self.field, m));
        }
        if m == Mono::ONE {
            return Arc::new(QmPoly::zero(self.field));
        }
        if let Some(g) = Generator::ALL.into_iter().find(|g| g.mono() == m) {
            return self.gen(g, n);
        }
        if let Some(v) = self.monos.get(&(m, n)) {
            return v.clone();
        }
        let value = match self.strategy {
            Strategy::Frobenius => self.mono_frobenius(m, n),
            Strategy::Leibniz => self.mono_leibniz(m, n),
        };
        let value = Arc::new(value);
        self.monos.insert((m, n), value.clone());
        value
    }

    fn mono_leibniz(&mut self, m: Mono, n: u64) -> QmPoly {
        let (gen, rest) = if m.e > 0 {
            (Generator::E, Mono { e: m.e - 1, ..m })
        } else if m.g > 0 {
            (Generator::G, Mono { g: m.g - 1, ..m })
        } else {
            (Generator::H, Mono { h: m.h - 1, ..m })
        };
        let mut acc = Accum::new(self.field);
        for r in 0..=n {
            let a = self.gen(gen, r);
            if a.is_zero() {
                continue;
            }
            let b = self.mono(rest, n - r);
            acc.add_product(&a, &b);
        }
        acc.finish()
    }

    fn mono_frobenius(&mut self, m: Mono, n: u64) -> QmPoly {
        let p = self.field.p();
        let low = Mono::new(m.e % p, m.g % p, m.h % p);
        let high = Mono::new(m.e / p, m.g / p, m.h / p);
        if high == Mono::ONE {
            return self.mono_leibniz(m, n);
        }
        let p64 = p as u64;
        if low == Mono::ONE {
            if !n.is_multiple_of(p64) {
                return QmPoly::zero(self.field);
            }
            return self.mono(high, n / p64).frobenius(1);
        }
        let mut acc = Accum::new(self.field);
        for k in 0..=n / p64 {
            let b = self.mono(high, k);
            if b.is_zero() {
                continue;
            }
            let a = self.mono(low, n - p64 * k);
            if a.is_zero() {
                continue;
            }
            acc.add_product(&a, &b.frobenius(1));
        }
        acc.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eng(q: u32) -> DerivationEngine {
        DerivationEngine::new(FieldConfig::for_q(q).unwrap())
    }

    #[test]
    fn first_derivatives() {
        let mut en = eng(5);
        let f = en.field();
        assert_eq!(en.d_generator(Generator::E, 1).unwrap(), QmPoly::monomial(f, Mono::new(2, 0, 0)));
        assert_eq!(
            en.d_generator(Generator::G, 1).unwrap(),
            -&(&QmPoly::monomial(f, Mono::new(1, 1, 0)) + &QmPoly::h(f))
        );
        assert_eq!(en.d_generator(Generator::H, 1).unwrap(), QmPoly::monomial(f, Mono::new(1, 0, 1)));
    }

    #[test]
    fn limit_enforced() {
        let mut en = eng(4);
        assert_eq!(en.limit(), 31);
        assert!(en.d_generator(Generator::E, 31).is_ok());
        assert_eq!(en.d_generator(Generator::E, 32), Err(Error::OrderOutOfRange { n: 32, limit: 31 }));
    }

    #[test]
    fn identity_and_constants() {
        let mut en = eng(7);
        let f = en.field();
        let x = &QmPoly::e(f).pow(3) + &QmPoly::h(f);
        assert_eq!(en.derive(&x, 0).unwrap(), x);
        for n in 1..20 {
            assert!(en.derive(&QmPoly::one(f), n).unwrap().is_zero());
        }
    }

    #[test]
    fn e_to_p_power_minus_one() {
        for q in [3, 4, 5, 9] {
            let mut en = eng(q);
            let f = en.field();
            let p = f.p() as u64;
            let mut pi = 1;
            while pi <= en.limit() + 1 {
                let d = en.derive(&QmPoly::e(f), pi - 1).unwrap();
                assert_eq!(d, QmPoly::monomial(f, Mono::new(pi as u32, 0, 0)), "q={q} p^i={pi}");
                pi *= p;
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let f = FieldConfig::for_q(4).unwrap();
        let mut a = DerivationEngine::with_strategy(f, Strategy::Frobenius);
        let mut b = DerivationEngine::with_strategy(f, Strategy::Leibniz);
        let x = &QmPoly::monomial(f, Mono::new(3, 2, 5)) + &QmPoly::monomial(f, Mono::new(4, 4, 0));
        for n in 0..=20 {
            assert_eq!(a.derive(&x, n).unwrap(), b.derive(&x, n).unwrap(), "n={n}");
        }
    }
}
