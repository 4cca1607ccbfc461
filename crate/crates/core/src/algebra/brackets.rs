use super::field::{FieldConfig, FqElem};
use super::poly::PolyT;

/// `[i] = T^(q^i) - T`.
pub fn bracket(i: u32, f: FieldConfig) -> PolyT {
    assert!(i >= 1, "bracket index starts at 1");
    let deg = (f.q() as usize).pow(i);
    &PolyT::monomial(f, FqElem::ONE, deg) - &PolyT::t(f)
}

/// `d_i = [i] [i-1]^q ... [1]^(q^(i-1))`, with `d_0 = 1`.
pub fn d_coeff(i: u32, f: FieldConfig) -> PolyT {
    (1..=i).fold(PolyT::one(f), |acc, j| {
        // Raising to q^(i-j) is an e·(i-j)-fold Frobenius.
        &acc * &bracket(j, f).frobenius(f.e() * (i - j))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_index_values() {
        let f = FieldConfig::for_q(5).unwrap();
        assert_eq!(bracket(1, f).to_string(), "T^5-T");
        assert_eq!(bracket(2, f).degree(), Some(25));
        assert!(d_coeff(0, f).is_one());
        assert_eq!(d_coeff(1, f), bracket(1, f));
        assert_eq!(d_coeff(2, f), &bracket(2, f) * &bracket(1, f).pow(5));
        let f2 = FieldConfig::for_q(2).unwrap();
        assert_eq!(bracket(2, f2).to_string(), "T^4+T");
    }

    #[test]
    fn d3_degree() {
        let f = FieldConfig::for_q(4).unwrap();
        let q = 4usize;
        let d3 = d_coeff(3, f);
        assert_eq!(d3, &(&bracket(3, f) * &bracket(2, f).pow(4)) * &bracket(1, f).pow(16));
        // deg d_i = i q^i
        assert_eq!(d3.degree(), Some(3 * q.pow(3)));
    }
}
