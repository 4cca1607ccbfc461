use std::collections::{BTreeMap, HashMap};

use super::series::TSeries;
use crate::algebra::{binom_mod_p, d_coeff, multinomial_mod_p, FieldConfig, RatT};

/// The sums `α_{r,i} = Σ 1/(d_{i_1} ⋯ d_{i_r})` over ordered tuples with
/// `q^{i_1} + ⋯ + q^{i_r} = i`, cached per `i`.
///
/// Tuples are grouped by how often each power `q^j` occurs: a multiplicity
/// vector `(m_0, m_1, …)` contributes `r!/(m_0! m_1! ⋯) / Π d_j^{m_j}` with
/// `r = Σ m_j`. Only the `m_j` with `j >= 1` are enumerated, `m_0` fills the
/// remainder.
pub struct AlphaTable {
    field: FieldConfig,
    inv_d: Vec<RatT>,
    cache: HashMap<u64, BTreeMap<u64, RatT>>,
}

impl AlphaTable {
    pub fn new(field: FieldConfig) -> Self {
        AlphaTable { field, inv_d: vec![RatT::one(field)], cache: HashMap::new() }
    }

    fn inv_d(&mut self, j: usize) -> RatT {
        while self.inv_d.len() <= j {
            let k = self.inv_d.len() as u32;
            self.inv_d.push(RatT::from(d_coeff(k, self.field)).inv().expect("d_k is nonzero"));
        }
        self.inv_d[j].clone()
    }

    /// `α_{r,i}` for every `r` with a nonzero value.
    pub fn row(&mut self, i: u64) -> &BTreeMap<u64, RatT> {
        if !self.cache.contains_key(&i) {
            let row = self.compute_row(i);
            self.cache.insert(i, row);
        }
        &self.cache[&i]
    }

    pub fn alpha(&mut self, r: u64, i: u64) -> RatT {
        if r == 0 {
            return RatT::from_int(self.field, (i == 0) as i64);
        }
        self.row(i).get(&r).cloned().unwrap_or_else(|| RatT::zero(self.field))
    }

    fn compute_row(&mut self, i: u64) -> BTreeMap<u64, RatT> {
        let q = self.field.q() as u64;
        let p = self.field.p();
        let mut powers = Vec::new();
        let mut x = q;
        while x <= i {
            powers.push(x);
            x *= q;
        }
        let mut row: BTreeMap<u64, RatT> = BTreeMap::new();
        let mut mult = vec![0u64; powers.len()];
        loop {
            let used: u64 = mult.iter().zip(&powers).map(|(m, w)| m * w).sum();
            if used <= i {
                let m0 = i - used;
                let r = m0 + mult.iter().sum::<u64>();
                if r > 0 {
                    let mut parts = vec![m0];
                    parts.extend_from_slice(&mult);
                    let c = multinomial_mod_p(&parts, p);
                    if c != 0 {
                        let mut term = RatT::from_int(self.field, c as i64);
                        for (j, &m) in mult.iter().enumerate() {
                            if m > 0 {
                                term = &term * &self.inv_d(j + 1).pow(m as i64).unwrap();
                            }
                        }
                        let slot = row.entry(r).or_insert_with(|| RatT::zero(self.field));
                        *slot = &*slot + &term;
                    }
                }
            }
            // Odometer over multiplicity vectors with Σ m_j q^j <= i.
            let mut pos = 0;
            loop {
                if pos == mult.len() {
                    row.retain(|_, v| !v.is_zero());
                    return row;
                }
                mult[pos] += 1;
                let used: u64 = mult.iter().zip(&powers).map(|(m, w)| m * w).sum();
                if used <= i {
                    break;
                }
                mult[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// `D_i` on a series: `b_{i,n} = Σ_{r=1}^{n-1} (-1)^{i+r} C(n-1, r) α_{r,i} a_{n-r}`.
/// The result has the same truncation order.
pub fn hyper_derive(s: &TSeries, i: u64, table: &mut AlphaTable) -> TSeries {
    if i == 0 {
        return s.clone();
    }
    let f = s.field();
    let p = f.p();
    let order = s.order();
    let row: Vec<(u64, RatT)> = table.row(i).iter().map(|(r, a)| (*r, a.clone())).collect();
    let mut terms = Vec::new();
    for (r, alpha) in &row {
        let r = *r as usize;
        let sign = if (i as usize + r).is_multiple_of(2) { 1 } else { -1 };
        for (m, a) in s.terms() {
            let n = m + r;
            if m == 0 || n >= order {
                continue;
            }
            let b = binom_mod_p(n as i64 - 1, r as u64, p) as i64 * sign;
            if b.rem_euclid(p as i64) == 0 {
                continue;
            }
            terms.push((n, &(a * alpha) * &RatT::from_int(f, b)));
        }
    }
    TSeries::from_terms(f, order, terms)
}
