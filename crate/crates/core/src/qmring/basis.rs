use super::poly::Mono;
use crate::algebra::FieldConfig;

/// Monomials `g^b h^c` of weight `w` and type `m`, sorted by `b`.
pub fn modular_basis(w: u64, m: u32, f: FieldConfig) -> Vec<Mono> {
    let q = f.q() as u64;
    let m = m as u64 % (q - 1);
    (0..=w / (q - 1))
        .filter_map(|b| {
            let rest = w - b * (q - 1);
            rest.is_multiple_of(q + 1).then_some((b, rest / (q + 1)))
        })
        .filter(|(_, c)| c % (q - 1) == m)
        .map(|(b, c)| Mono::new(0, b as u32, c as u32))
        .collect()
}

/// Monomials `E^i g^b h^c` with `i <= l` spanning the quasi-modular forms of
/// weight `w`, type `m` and depth at most `l`.
pub fn qm_basis(w: u64, m: u32, l: u32, f: FieldConfig) -> Vec<Mono> {
    let tm = f.q() as i64 - 1;
    (0..=l)
        .take_while(|&i| 2 * i as u64 <= w)
        .flat_map(|i| {
            let mi = (m as i64 - i as i64).rem_euclid(tm) as u32;
            modular_basis(w - 2 * i as u64, mi, f).into_iter().map(move |x| Mono { e: i, ..x })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spaces() {
        for q in [4, 5, 7, 8, 9] {
            let f = FieldConfig::for_q(q).unwrap();
            assert_eq!(modular_basis(0, 0, f), vec![Mono::ONE]);
            for m in 0..q - 1 {
                assert!(modular_basis(2, m, f).is_empty());
            }
            let q64 = q as u64;
            let w = 2 * q64 * q64 + 2;
            let m = ((q64 * q64 + 1) % (q64 - 1)) as u32;
            assert_eq!(modular_basis(w, m, f), vec![Mono::new(0, q - 1, q + 1), Mono::new(0, 2 * q, 2)]);
            assert_eq!(qm_basis(2, 1, 1, f), vec![Mono::E]);
            assert_eq!(qm_basis(q64 + 1, 1, 1, f), vec![Mono::H, Mono::new(1, 1, 0)]);
        }
    }

    #[test]
    fn depth_zero_is_modular() {
        let f = FieldConfig::for_q(5).unwrap();
        for w in 0..60 {
            for m in 0..4 {
                assert_eq!(qm_basis(w, m, 0, f), modular_basis(w, m, f));
            }
        }
    }

    #[test]
    fn gradings_are_correct() {
        let f = FieldConfig::for_q(7).unwrap();
        for w in 0..80 {
            for m in 0..6 {
                for mono in qm_basis(w, m, 5, f) {
                    assert_eq!(mono.weight(7), w);
                    assert_eq!(mono.typ(7), m);
                    assert!(mono.e <= 5);
                }
            }
        }
    }
}
