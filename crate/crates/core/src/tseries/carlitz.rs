use crate::algebra::{FieldConfig, PolyT, RatT};

/// The `F_q`-linear polynomial `ρ_a(X) = Σ_j c_j X^(q^j)`, stored as `c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzPoly {
    field: FieldConfig,
    coeffs: Vec<RatT>,
}

impl CarlitzPoly {
    pub fn coeffs(&self) -> &[RatT] {
        &self.coeffs
    }

    /// `ρ_T = T X + X^q`.
    pub fn rho_t(field: FieldConfig) -> Self {
        CarlitzPoly { field, coeffs: vec![RatT::t(field), RatT::one(field)] }
    }

    /// `(u ∘ v)(X) = Σ_{i,j} u_i v_j^(q^i) X^(q^(i+j))`.
    pub fn compose(&self, other: &CarlitzPoly) -> CarlitzPoly {
        let f = self.field;
        let mut out = vec![RatT::zero(f); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, u) in self.coeffs.iter().enumerate() {
            for (j, v) in other.coeffs.iter().enumerate() {
                let term = u * &v.frobenius(f.e() * i as u32);
                out[i + j] = &out[i + j] + &term;
            }
        }
        CarlitzPoly { field: f, coeffs: out }
    }

    fn add(&self, other: &CarlitzPoly) -> CarlitzPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = RatT::zero(self.field);
        let coeffs: Vec<RatT> = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        let mut out = CarlitzPoly { field: self.field, coeffs };
        while out.coeffs.len() > 1 && out.coeffs.last().is_some_and(RatT::is_zero) {
            out.coeffs.pop();
        }
        out
    }
}

/// `ρ_a` for `a ∈ F_q[T]`, as `Σ a_i ρ_T^{∘i}`.
pub fn carlitz_of(a: &PolyT) -> CarlitzPoly {
    let f = a.field();
    let rho_t = CarlitzPoly::rho_t(f);
    let mut power = CarlitzPoly { field: f, coeffs: vec![RatT::one(f)] };
    let mut acc = CarlitzPoly { field: f, coeffs: vec![RatT::zero(f)] };
    for (i, &c) in a.coeffs().iter().enumerate() {
        if i > 0 {
            power = rho_t.compose(&power);
        }
        if !c.is_zero() {
            let scaled = CarlitzPoly { field: f, coeffs: power.coeffs.iter().map(|x| x.scale(c)).collect() };
            acc = acc.add(&scaled);
        }
    }
    acc
}
