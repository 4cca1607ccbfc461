use super::field::mod_inv;

/// `C(a, b) mod p` for `0 <= a, b < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inv(den as u32, p as u32) as u64 % p
}

/// `C(n, k) mod p` by Lucas' theorem. Negative `n` uses
/// `C(n, k) = (-1)^k C(k - n - 1, k)`.
pub fn binom_mod_p(n: i64, k: u64, p: u32) -> u32 {
    if n < 0 {
        let m = (k as i64 - n - 1) as u64;
        let v = binom_nonneg(m, k, p as u64);
        return if k % 2 == 1 && v != 0 { p - v as u32 } else { v as u32 };
    }
    binom_nonneg(n as u64, k, p as u64) as u32
}

fn binom_nonneg(mut n: u64, mut k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// The multinomial coefficient `(Σ parts)! / Π parts!` mod `p`.
pub fn multinomial_mod_p(parts: &[u64], p: u32) -> u32 {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &m in parts {
        total += m;
        acc = acc * binom_mod_p(total as i64, m, p) as u64 % p as u64;
        if acc == 0 {
            break;
        }
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_choose() {
        for p in [2, 3, 5, 7] {
            for n in -20..20 {
                assert_eq!(binom_mod_p(n, 0, p), 1);
            }
        }
    }

    #[test]
    fn negative_convention() {
        // C(-1, k) = (-1)^k
        for k in 0..10 {
            assert_eq!(binom_mod_p(-1, k, 5), if k % 2 == 0 { 1 } else { 4 });
        }
        // C(-2, 3) = -C(4, 3) = -4
        assert_eq!(binom_mod_p(-2, 3, 7), 3);
    }

    #[test]
    fn p_power_plus_one_row() {
        for p in [2u32, 3, 5] {
            for i in 1..4 {
                let pi = (p as i64).pow(i);
                for j in 2..pi {
                    assert_eq!(binom_mod_p(pi + 1, j as u64, p), 0);
                }
            }
        }
    }

    #[test]
    fn multinomial_small() {
        // 4!/(2!1!1!) = 12
        assert_eq!(multinomial_mod_p(&[2, 1, 1], 5), 2);
        assert_eq!(multinomial_mod_p(&[2, 1, 1], 3), 0);
    }
}
