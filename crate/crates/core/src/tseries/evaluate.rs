use std::collections::HashMap;

use super::expansions::{expand_e, expand_g, expand_h};
use super::series::TSeries;
use crate::algebra::FieldConfig;
use crate::hyperd::Generator;
use crate::qmring::QmPoly;

/// The substitution `E, g, h ↦` their `t`-expansions, with cached powers.
pub struct Evaluator {
    field: FieldConfig,
    order: usize,
    gens: [TSeries; 3],
    powers: HashMap<(Generator, u32), TSeries>,
}

impl Evaluator {
    pub fn new(field: FieldConfig, order: usize) -> Self {
        let gens = [expand_e(field, order), expand_g(field, order), expand_h(field, order)];
        Evaluator { field, order, gens, powers: HashMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator(&self, g: Generator) -> &TSeries {
        &self.gens[g as usize]
    }

    /// `x^k` through the base-`p` digits of `k`: `Π_j (x^{k_j})^{p^j}`.
    fn power(&mut self, g: Generator, k: u32) -> TSeries {
        if let Some(s) = self.powers.get(&(g, k)) {
            return s.clone();
        }
        let p = self.field.p();
        let value = if k == 0 {
            TSeries::one(self.field, self.order)
        } else if k < p {
            &self.power(g, k - 1) * &self.gens[g as usize]
        } else {
            let low = self.power(g, k % p);
            let high = self.power(g, k / p).frobenius(1).truncate(self.order);
            &low * &high
        };
        self.powers.insert((g, k), value.clone());
        value
    }

    pub fn eval(&mut self, f: &QmPoly) -> TSeries {
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let s = &(&self.power(Generator::E, m.e) * &self.power(Generator::G, m.g)) * &self.power(Generator::H, m.h);
            terms.extend(s.terms().map(|(n, v)| (n, v * c)));
        }
        TSeries::from_terms(self.field, self.order, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatT;

    #[test]
    fn homomorphism_basics() {
        let f = FieldConfig::for_q(5).unwrap();
        let mut ev = Evaluator::new(f, 20);
        assert_eq!(ev.eval(&QmPoly::one(f)), TSeries::one(f, 20));
        assert!(ev.eval(&QmPoly::zero(f)).is_zero());
        assert_eq!(ev.eval(&QmPoly::g(f)).coeff(0), RatT::one(f));
        let x = &QmPoly::e(f) + &QmPoly::h(f);
        let y = QmPoly::g(f).pow(7);
        assert_eq!(ev.eval(&(&x * &y)), &ev.eval(&x) * &ev.eval(&y));
        assert_eq!(ev.eval(&y), ev.generator(Generator::G).pow(7));
    }
}
