//! Hand-transcribed closed forms of `D_n E`, `D_n g`, `D_n h`, kept as text
//! so that they are checked independently of the engine's tables.

use crate::algebra::FieldConfig;
use crate::error::Result;
use crate::expr::parse_qm;
use crate::hyperd::Generator;
use crate::qmring::QmPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub label: &'static str,
    pub generator: Generator,
    pub n: u64,
    pub formula: String,
}

impl GoldenEntry {
    pub fn value(&self, field: FieldConfig) -> Result<QmPoly> {
        parse_qm(field, &self.formula)
    }
}

fn entry(label: &'static str, generator: Generator, n: u64, formula: String) -> GoldenEntry {
    GoldenEntry { label, generator, n, formula }
}

/// `D_n` of the generators for `n < q` and for every `p^i` with `q <= p^i <= q^2`.
pub fn closed_forms(field: FieldConfig) -> Vec<GoldenEntry> {
    use Generator::*;
    let (p, q) = (field.p() as u64, field.q() as u64);
    let mut out = Vec::new();
    for n in 0..q {
        out.push(entry("(i)", E, n, format!("E^{}", n + 1)));
        let dg = match n {
            0 => "g".to_string(),
            1 => "-(E g + h)".to_string(),
            _ => "0".to_string(),
        };
        out.push(entry("(ii)", G, n, dg));
        out.push(entry("(iii)", H, n, format!("E^{n} h")));
    }
    let mut n = q;
    while n < q * q {
        let k = n / q;
        out.push(entry("(iv)", E, n, format!("E^{} + 1/d_1^{k} g^{} h^{}", n + 1, k - 1, k + 1)));
        out.push(entry("(v)", G, n, format!("E^{n} g")));
        out.push(entry(
            "(vi)",
            H,
            n,
            format!("E^{n} h + 1/d_1^{} E^{q} g^{} h^{k} - 1/d_1^{k} g^{k} h^{}", k - 1, k - 1, k + 1),
        ));
        n *= p;
    }
    let qq = q * q;
    out.push(entry("(vii)", E, qq, format!("E^{} + 1/d_1^{q} g^{} h^{} + 1/d_2 g^{} h^2", qq + 1, q - 1, q + 1, 2 * q)));
    out.push(entry(
        "(viii)",
        G,
        qq,
        format!("E^{qq} g - d_1/d_2 g^{} h^{q} + (1/d_1^{} - d_1^2/d_2) h^{}", q + 1, q - 1, 2 * q - 1),
    ));
    out.push(entry(
        "(ix)",
        H,
        qq,
        format!(
            "E^{qq} h + 1/d_1^{} E^{q} g^{} h^{q} - 1/d_2 g^{} h^2 - (d_1/d_2 + 1/d_1^{q}) g^{q} h^{}",
            q - 1,
            q - 1,
            2 * q + 1,
            q + 1
        ),
    ));
    out
}

/// The two systems for `D_p` and `D_{p^2}` when `q = p`; `None` otherwise.
pub fn prime_field_systems(field: FieldConfig) -> Option<Vec<GoldenEntry>> {
    use Generator::*;
    if field.e() != 1 {
        return None;
    }
    let p = field.p() as u64;
    let pp = p * p;
    Some(vec![
        entry("D_p E", E, p, format!("E^{} + 1/d_1 h^2", p + 1)),
        entry("D_p g", G, p, format!("E^{p} g")),
        entry("D_p h", H, p, format!("2 E^{p} h - 1/d_1 g h^2")),
        entry("D_p^2 E", E, pp, format!("E^{} + 1/d_1^{p} g^{} h^{} + 1/d_2 g^{} h^2", pp + 1, p - 1, p + 1, 2 * p)),
        entry(
            "D_p^2 g",
            G,
            pp,
            format!("E^{pp} g - d_1/d_2 g^{} h^{p} + (d_2 - d_1^{})/(d_1^{} d_2) h^{}", p + 1, p + 1, p - 1, 2 * p - 1),
        ),
        entry(
            "D_p^2 h",
            H,
            pp,
            format!(
                "E^{pp} h + 1/d_1^{} E^{p} g^{} h^{p} - 1/d_2 g^{} h^2 - (d_1^{} + d_2)/(d_1^{p} d_2) g^{p} h^{}",
                p - 1,
                p - 1,
                2 * p + 1,
                p + 1,
                p + 1
            ),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperd::DerivationEngine;

    #[test]
    fn parse_and_match_q3() {
        let f = FieldConfig::for_q(3).unwrap();
        let mut en = DerivationEngine::new(f);
        for e in closed_forms(f).iter().chain(prime_field_systems(f).unwrap().iter()) {
            assert_eq!(en.d_generator(e.generator, e.n).unwrap(), e.value(f).unwrap(), "{} n={}", e.label, e.n);
        }
        assert!(prime_field_systems(FieldConfig::for_q(4).unwrap()).is_none());
    }
}
