use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::poly::{Mono, QmPoly};
use crate::error::{Error, Result};

/// Weight, type (in `0..q-1`) and depth.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct GradingSignature {
    pub weight: u64,
    #[serde(rename = "type")]
    pub typ: u32,
    pub depth: u32,
}

impl fmt::Display for GradingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}, type {}, depth {}", self.weight, self.typ, self.depth)
    }
}

/// The zero polynomial is homogeneous for every grading.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    Zero,
    Isobaric(GradingSignature),
}

impl Grading {
    pub fn signature(self) -> Option<GradingSignature> {
        match self {
            Grading::Zero => None,
            Grading::Isobaric(s) => Some(s),
        }
    }
}

fn signature_of(m: Mono, q: u32) -> (u64, u32) {
    (m.weight(q), m.typ(q))
}

pub fn grading(f: &QmPoly) -> Result<Grading> {
    let q = f.field().q();
    let mut monos = f.monomials();
    let Some(first) = monos.next() else { return Ok(Grading::Zero) };
    let (w, m) = signature_of(first, q);
    let mut depth = first.e;
    for mono in monos {
        if signature_of(mono, q) != (w, m) {
            return Err(Error::NotIsobaric(f.to_string()));
        }
        depth = depth.max(mono.e);
    }
    Ok(Grading::Isobaric(GradingSignature { weight: w, typ: m, depth }))
}

/// Splits `f` into isobaric components, ordered by `(weight, type)`.
pub fn isobaric_decompose(f: &QmPoly) -> Vec<(GradingSignature, QmPoly)> {
    let q = f.field().q();
    let mut parts: BTreeMap<(u64, u32), Vec<(Mono, crate::algebra::RatT)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        parts.entry(signature_of(*m, q)).or_default().push((*m, c.clone()));
    }
    parts
        .into_iter()
        .map(|((weight, typ), terms)| {
            let depth = terms.iter().map(|(m, _)| m.e).max().unwrap_or(0);
            (GradingSignature { weight, typ, depth }, QmPoly::from_terms(f.field(), terms))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldConfig;

    #[test]
    fn generators() {
        let f = FieldConfig::for_q(5).unwrap();
        let sig = |p: &QmPoly| grading(p).unwrap().signature().unwrap();
        assert_eq!(sig(&QmPoly::e(f)), GradingSignature { weight: 2, typ: 1, depth: 1 });
        assert_eq!(sig(&QmPoly::g(f)), GradingSignature { weight: 4, typ: 0, depth: 0 });
        assert_eq!(sig(&QmPoly::h(f)), GradingSignature { weight: 6, typ: 1, depth: 0 });
        assert_eq!(grading(&QmPoly::zero(f)).unwrap(), Grading::Zero);
        let mixed = &QmPoly::e(f) + &QmPoly::g(f);
        assert!(matches!(grading(&mixed), Err(Error::NotIsobaric(_))));
        let eg_h = &(&QmPoly::e(f) * &QmPoly::g(f)) + &QmPoly::h(f).scale(&crate::algebra::RatT::t(f));
        assert_eq!(sig(&eg_h).weight, 6);
    }

    #[test]
    fn decompose_resums() {
        let f = FieldConfig::for_q(4).unwrap();
        let x = &(&QmPoly::e(f) + &QmPoly::h(f)) * &QmPoly::g(f);
        let parts = isobaric_decompose(&x);
        assert_eq!(parts.len(), 2);
        let total = parts.iter().fold(QmPoly::zero(f), |acc, (_, p)| &acc + p);
        assert_eq!(total, x);
        assert!(isobaric_decompose(&QmPoly::zero(f)).is_empty());
        let y = &QmPoly::e(f) + &QmPoly::g(f);
        let parts = isobaric_decompose(&y);
        assert_eq!(parts[0].1, QmPoly::e(f));
        assert_eq!(parts[1].1, QmPoly::g(f));
    }
}
