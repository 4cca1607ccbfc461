//! Exact linear algebra over `F_q(T)`: rows are cleared of denominators and
//! reduced with fraction-free (Bareiss) elimination over `F_q[T]`.

use super::field::FieldConfig;
use super::poly::PolyT;
use super::rat::RatT;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<RatT>,
    /// Basis of the null space; the vector for free column `c` has a 1 at `c`
    /// and 0 at every other free column.
    pub kernel: Vec<Vec<RatT>>,
}

struct Echelon {
    rows: Vec<Vec<PolyT>>,
    pivots: Vec<usize>,
}

fn lcm(a: &PolyT, b: &PolyT) -> PolyT {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    (a * b).div_exact(&a.gcd(b))
}

/// Clears denominators row by row and reduces `[matrix | rhs]`.
fn echelon(f: FieldConfig, matrix: &[Vec<RatT>], rhs: Option<&[RatT]>, ncols: usize) -> Echelon {
    let width = ncols + usize::from(rhs.is_some());
    let mut rows: Vec<Vec<PolyT>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut entries: Vec<&RatT> = row.iter().collect();
            if let Some(b) = rhs {
                entries.push(&b[i]);
            }
            let l = entries.iter().fold(PolyT::one(f), |acc, r| lcm(&acc, r.den()));
            entries.iter().map(|r| &r.num().clone() * &l.div_exact(r.den())).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = PolyT::one(f);
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, sel);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..width {
                let v = &(pv * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = v.div_exact(&prev);
            }
            row[c] = PolyT::zero(f);
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

/// Back-substitution for the pivot variables given values of the free ones.
fn back_substitute(f: FieldConfig, ech: &Echelon, x: &mut [RatT], rhs_col: Option<usize>) {
    for (r, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[r];
        let mut acc = match rhs_col {
            Some(j) => RatT::from(row[j].clone()),
            None => RatT::zero(f),
        };
        for (j, xj) in x.iter().enumerate().skip(pc + 1) {
            if !xj.is_zero() && !row[j].is_zero() {
                acc = &acc - &(&RatT::from(row[j].clone()) * xj);
            }
        }
        x[pc] = acc.checked_div(&RatT::from(row[pc].clone())).expect("pivot is nonzero");
    }
}

fn kernel_from(f: FieldConfig, ech: &Echelon, ncols: usize) -> Vec<Vec<RatT>> {
    (0..ncols)
        .filter(|c| !ech.pivots.contains(c))
        .map(|free| {
            let mut x = vec![RatT::zero(f); ncols];
            x[free] = RatT::one(f);
            back_substitute(f, ech, &mut x, None);
            x
        })
        .collect()
}

/// Null space of a `rows × ncols` matrix.
pub fn kernel(f: FieldConfig, matrix: &[Vec<RatT>], ncols: usize) -> Vec<Vec<RatT>> {
    let ech = echelon(f, matrix, None, ncols);
    kernel_from(f, &ech, ncols)
}

/// Solves `matrix · x = rhs`, returning one solution (free variables zero)
/// and a kernel basis.
pub fn solve(f: FieldConfig, matrix: &[Vec<RatT>], rhs: &[RatT], ncols: usize) -> Result<Solution> {
    assert_eq!(matrix.len(), rhs.len(), "rhs length must match row count");
    let ech = echelon(f, matrix, Some(rhs), ncols);
    if ech.rows.iter().skip(ech.pivots.len()).any(|row| !row[ncols].is_zero()) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![RatT::zero(f); ncols];
    back_substitute(f, &ech, &mut x, Some(ncols));
    Ok(Solution { particular: x, kernel: kernel_from(f, &ech, ncols) })
}

/// `matrix · x`.
pub fn apply(f: FieldConfig, matrix: &[Vec<RatT>], x: &[RatT]) -> Vec<RatT> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).fold(RatT::zero(f), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldConfig {
        FieldConfig::for_q(5).unwrap()
    }

    fn rat(f: FieldConfig, num: &[i64], den: &[i64]) -> RatT {
        let p = |c: &[i64]| PolyT::from_coeffs(f, c.iter().map(|&x| f.from_int(x)).collect());
        RatT::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn identity_returns_rhs() {
        let f = f5();
        let id: Vec<Vec<RatT>> = (0..3)
            .map(|i| (0..3).map(|j| RatT::from_int(f, (i == j) as i64)).collect())
            .collect();
        let b = vec![rat(f, &[1, 1], &[2]), RatT::t(f), rat(f, &[1], &[0, 1])];
        let s = solve(f, &id, &b, 3).unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let f = f5();
        let z = vec![vec![RatT::zero(f); 4]; 2];
        assert_eq!(kernel(f, &z, 4).len(), 4);
        assert_eq!(kernel(f, &[], 3).len(), 3);
    }

    #[test]
    fn inconsistent_detected() {
        let f = f5();
        let m = vec![vec![RatT::one(f), RatT::t(f)], vec![RatT::from_int(f, 2), &RatT::t(f) * &RatT::from_int(f, 2)]];
        assert_eq!(solve(f, &m, &[RatT::one(f), RatT::one(f)], 2), Err(Error::Inconsistent));
        let s = solve(f, &m, &[RatT::one(f), RatT::from_int(f, 2)], 2).unwrap();
        assert_eq!(s.kernel.len(), 1);
        assert!(apply(f, &m, &s.kernel[0]).iter().all(RatT::is_zero));
    }

    #[test]
    fn two_by_two_multiply_back() {
        let f = f5();
        let m = vec![
            vec![rat(f, &[1, 2], &[0, 1]), rat(f, &[3], &[1, 1])],
            vec![rat(f, &[0, 0, 1], &[4]), rat(f, &[2, 1], &[3, 0, 1])],
        ];
        let b = vec![rat(f, &[1], &[2, 1]), RatT::t(f)];
        let s = solve(f, &m, &b, 2).unwrap();
        assert_eq!(apply(f, &m, &s.particular), b);
    }
}
