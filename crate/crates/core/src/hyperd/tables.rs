//! Closed forms of `D_{p^i}` on the generators for `p^i <= q^2`.

use crate::algebra::{d_coeff, FieldConfig, RatT};
use crate::qmring::{Mono, QmPoly};

use super::Generator;

/// `d_1` and `d_2` as elements of `K`, with inverse powers on demand.
#[derive(Clone, Debug)]
pub(crate) struct Constants {
    field: FieldConfig,
    pub d1: RatT,
    pub d2: RatT,
}

impl Constants {
    pub fn new(field: FieldConfig) -> Self {
        Constants { field, d1: d_coeff(1, field).into(), d2: d_coeff(2, field).into() }
    }

    /// `d_1^k` for any integer `k`.
    pub fn d1_pow(&self, k: i64) -> RatT {
        self.d1.pow(k).expect("d_1 is nonzero")
    }

    fn term(&self, c: RatT, e: u64, g: u64, h: u64) -> QmPoly {
        QmPoly::term(c, Mono::new(e as u32, g as u32, h as u32))
    }

    fn one(&self) -> RatT {
        RatT::one(self.field)
    }
}

/// `D_n` of a generator for `n` a power of `p` with `n <= q^2`.
pub(crate) fn p_power_value(c: &Constants, gen: Generator, n: u64) -> QmPoly {
    let f = c.field;
    let q = f.q() as u64;
    debug_assert!(super::engine::is_p_power(n, f.p() as u64), "n must be a power of p");
    let one = c.one();
    let minus_one = -&one;
    if n < q {
        return match gen {
            Generator::E => c.term(one, n + 1, 0, 0),
            Generator::G if n == 1 => &c.term(minus_one.clone(), 1, 1, 0) + &c.term(minus_one, 0, 0, 1),
            Generator::G => QmPoly::zero(f),
            Generator::H => c.term(one, n, 0, 1),
        };
    }
    if n < q * q {
        let k = n / q;
        let ki = k as i64;
        return match gen {
            Generator::E => &c.term(one, n + 1, 0, 0) + &c.term(c.d1_pow(-ki), 0, k - 1, k + 1),
            Generator::G => c.term(one, n, 1, 0),
            Generator::H => {
                let a = c.term(one, n, 0, 1);
                let b = c.term(c.d1_pow(1 - ki), q, k - 1, k);
                let d = c.term(-&c.d1_pow(-ki), 0, k, k + 1);
                &(&a + &b) + &d
            }
        };
    }
    assert_eq!(n, q * q, "closed forms stop at q^2");
    let qi = q as i64;
    let inv_d2 = c.d2.inv().expect("d_2 is nonzero");
    let d1_over_d2 = &c.d1 * &inv_d2;
    match gen {
        Generator::E => {
            let parts = [
                c.term(one, n + 1, 0, 0),
                c.term(c.d1_pow(-qi), 0, q - 1, q + 1),
                c.term(inv_d2, 0, 2 * q, 2),
            ];
            parts.iter().fold(QmPoly::zero(f), |acc, x| &acc + x)
        }
        Generator::G => {
            let last = &c.d1_pow(1 - qi) - &(&c.d1_pow(2) * &inv_d2);
            let parts = [c.term(one, n, 1, 0), c.term(-&d1_over_d2, 0, q + 1, q), c.term(last, 0, 0, 2 * q - 1)];
            parts.iter().fold(QmPoly::zero(f), |acc, x| &acc + x)
        }
        Generator::H => {
            let last = -&(&d1_over_d2 + &c.d1_pow(-qi));
            let parts = [
                c.term(one, n, 0, 1),
                c.term(c.d1_pow(1 - qi), q, q - 1, q),
                c.term(-&inv_d2, 0, 2 * q + 1, 2),
                c.term(last, 0, q, q + 1),
            ];
            parts.iter().fold(QmPoly::zero(f), |acc, x| &acc + x)
        }
    }
}
