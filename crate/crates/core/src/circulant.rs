//! Circulant relation matrices and the abelian groups they present.
//!
//! `circ_n(a_0, ..., a_{n-1})` has first row `a` and each later row is the
//! previous one shifted right by one column. Its determinant and rank are
//! available from the representer polynomial, while the invariant factors
//! come from a Smith normal form of the dense matrix.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::{self, IntPolynomial};

/// First row `(a_0, ..., a_{n-1})` of a circulant relation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    entries: Vec<BigInt>,
}

impl ExponentVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyExponentVector);
        }
        Ok(ExponentVector { entries })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Cyclic shift by `k` places: entry `i` of the result is entry `i + k` of `self`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut entries = self.entries.clone();
        let n = entries.len();
        entries.rotate_left(k % n);
        ExponentVector { entries }
    }

    /// Dense `n x n` matrix with `C[i][j] = a_{(j - i) mod n}`.
    pub fn circulant_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[(j + n - i) % n].clone()).collect())
            .collect()
    }
}

/// `A_0 + Z^betti` with `A_0` given by its invariant factors `d_1 | d_2 | ... | d_k`, each `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub betti: usize,
    pub invariant_factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            betti: 0,
            invariant_factors: Vec::new(),
        }
    }

    /// Builds the group from a Smith normal form diagonal (units dropped, zeros counted as free rank).
    pub fn from_smith_diagonal(diagonal: &[BigUint]) -> Self {
        AbelianGroup {
            betti: diagonal.iter().filter(|d| d.is_zero()).count(),
            invariant_factors: diagonal
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .cloned()
                .collect(),
        }
    }

    /// `Z_m + Z^free_rank`.
    pub fn cyclic_plus_free(m: u64, free_rank: usize) -> Self {
        AbelianGroup {
            betti: free_rank,
            invariant_factors: if m > 1 { vec![BigUint::from(m)] } else { Vec::new() },
        }
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.betti == 0).then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }

    /// Minimum number of generators.
    pub fn min_generators(&self) -> usize {
        self.betti + self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.min_generators() == 0
    }

    /// Dimension of `A / 2A` over the field with two elements.
    pub fn rank_mod_two(&self) -> usize {
        self.betti + self.invariant_factors.iter().filter(|d| d.is_even()).count()
    }

    pub fn has_divisibility_chain(&self) -> bool {
        self.invariant_factors.iter().all(|d| *d >= BigUint::from(2u32))
            && self
                .invariant_factors
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `f(t) = sum a_i t^i`.
pub fn representer_polynomial(v: &ExponentVector) -> IntPolynomial {
    IntPolynomial::new(v.entries.clone())
}

/// `n - deg gcd(f, t^n - 1)`, or 0 for the zero matrix.
pub fn circulant_rank(v: &ExponentVector) -> usize {
    let f = representer_polynomial(v);
    if f.is_zero() {
        return 0;
    }
    let g = IntPolynomial::t_pow_minus_one(v.len());
    let gcd = intpoly::poly_gcd(&f, &g).expect("t^n - 1 is nonzero");
    v.len() - gcd.degree().unwrap_or(0)
}

/// `|det circ_n(a)| = |Res(t^n - 1, f)|`.
pub fn circulant_det_abs(v: &ExponentVector) -> BigUint {
    let f = representer_polynomial(v);
    let g = IntPolynomial::t_pow_minus_one(v.len());
    intpoly::resultant(&g, &f).magnitude().clone()
}

/// Diagonal of the Smith normal form of the circulant matrix.
pub fn smith_normal_form(v: &ExponentVector) -> Vec<BigUint> {
    smith_diagonal(v.circulant_matrix())
}

pub fn abelian_invariants(v: &ExponentVector) -> AbelianGroup {
    AbelianGroup::from_smith_diagonal(&smith_normal_form(v))
}

/// Smith normal form diagonal of an arbitrary integer matrix.
///
/// Returns `min(rows, cols)` non-negative entries with `d_i | d_{i+1}` and
/// all zeros at the end. Pivots are chosen with minimal absolute value.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let size = rows.min(cols);
    let mut diagonal = Vec::with_capacity(size);

    for k in 0..size {
        loop {
            let Some((pi, pj)) = min_abs_entry(&m, k) else {
                diagonal.resize(size, BigUint::zero());
                return diagonal;
            };
            m.swap(k, pi);
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(k, pj);
                }
            }

            let mut clean = true;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = &m[i][k] / &m[k][k];
                let (pivot_row, row) = split_rows(&mut m, k, i);
                for j in k..cols {
                    row[j] -= &q * &pivot_row[j];
                }
                clean &= row[k].is_zero();
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let q = &m[k][j] / &m[k][k];
                for row in m.iter_mut().skip(k) {
                    let sub = &q * &row[k];
                    row[j] -= sub;
                }
                clean &= m[k][j].is_zero();
            }
            if !clean {
                continue;
            }

            // pivot must divide the whole remaining block
            let pivot = m[k][k].clone();
            let offender = (k + 1..rows).find(|&i| m[i][k + 1..].iter().any(|a| !a.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (pivot_row, row) = split_rows(&mut m, k, i);
                    for j in k..cols {
                        pivot_row[j] += &row[j];
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[k][k].magnitude().clone());
    }
    diagonal
}

fn min_abs_entry(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &BigInt)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, a) in row.iter().enumerate().skip(k) {
            if a.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, _, b)| a.magnitude() < b.magnitude()) {
                best = Some((i, j, a));
                if a.magnitude().is_one() {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Mutable access to rows `a < b` at once.
fn split_rows(m: &mut [Vec<BigInt>], a: usize, b: usize) -> (&mut Vec<BigInt>, &mut Vec<BigInt>) {
    debug_assert!(a < b);
    let (head, tail) = m.split_at_mut(b);
    (&mut head[a], &mut tail[0])
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn rational_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            let (pivot_row, row) = split_rows(&mut m, rank, i);
            for j in col + 1..cols {
                let num = &pivot_row[col] * &row[j] - &row[col] * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Absolute determinant of a square matrix by Bareiss elimination.
pub fn bareiss_det_abs(mut m: Vec<Vec<BigInt>>) -> BigUint {
    let n = m.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigUint::zero();
        };
        m.swap(k, p);
        for i in k + 1..n {
            let (pivot_row, row) = split_rows(&mut m, k, i);
            for j in k + 1..n {
                row[j] = (&pivot_row[k] * &row[j] - &row[k] * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigUint::one()
    } else {
        m[n - 1][n - 1].abs().magnitude().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(a: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(a).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn empty_vector_rejected() {
        assert_eq!(ExponentVector::new(vec![]), Err(Error::EmptyExponentVector));
    }

    #[test]
    fn matrix_layout() {
        let c = ev(&[1, 2, 3]).circulant_matrix();
        let as_i64: Vec<Vec<i64>> = c
            .iter()
            .map(|r| r.iter().map(|a| a.try_into().unwrap()).collect())
            .collect();
        assert_eq!(as_i64, vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]]);
    }

    #[test]
    fn representer_examples() {
        assert_eq!(
            representer_polynomial(&ev(&[1, 1, 1, -1, -1])),
            IntPolynomial::from_coeffs([1, 1, 1, -1, -1])
        );
        assert_eq!(representer_polynomial(&ev(&[1, 0])), IntPolynomial::one());
        assert!(representer_polynomial(&ev(&[0, 0, 0])).is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(circulant_rank(&ev(&[1, 1, -1, -1])), 2);
        assert_eq!(circulant_rank(&ev(&[1, 0, 0])), 3);
        assert_eq!(circulant_rank(&ev(&[1, 1, 1])), 1);
        assert_eq!(circulant_rank(&ev(&[0, 0])), 0);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(circulant_det_abs(&ev(&[1, 1, 1, -1, -1])), BigUint::from(16u32));
        assert_eq!(circulant_det_abs(&ev(&[1, 1, 1, -1, -1, 0])), BigUint::from(13u32));
        assert_eq!(circulant_det_abs(&ev(&[1, 1, -1])), BigUint::from(4u32));
        assert!(circulant_det_abs(&ev(&[1, 1, -1, -1])).is_zero());
        assert!(circulant_det_abs(&ev(&[0, 0])).is_zero());
        assert_eq!(circulant_det_abs(&ev(&[3])), BigUint::from(3u32));
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_normal_form(&ev(&[1, 1, -1])), big(&[1, 2, 2]));
        assert_eq!(smith_normal_form(&ev(&[1, 1, -1, -1])), big(&[1, 2, 0, 0]));
        assert_eq!(smith_normal_form(&ev(&[0, 0])), big(&[0, 0]));
    }

    #[test]
    fn smith_needs_divisibility_fixup() {
        // diag(2, 3) is not in normal form; SNF is diag(1, 6)
        let m = vec![
            vec![BigInt::from(2), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(3)],
        ];
        assert_eq!(smith_diagonal(m), big(&[1, 6]));
    }

    #[test]
    fn smith_rectangular() {
        let m = vec![vec![BigInt::from(4), BigInt::from(6), BigInt::from(8)]];
        assert_eq!(smith_diagonal(m), big(&[2]));
    }

    #[test]
    fn invariants_examples() {
        let a = abelian_invariants(&ev(&[1, 1, -1]));
        assert_eq!((a.betti, a.invariant_factors.clone()), (0, big(&[2, 2])));
        assert_eq!(a.order(), Some(BigUint::from(4u32)));
        assert_eq!(a.to_string(), "Z_2 + Z_2");

        let b = abelian_invariants(&ev(&[1, 1, -1, -1]));
        assert_eq!((b.betti, b.invariant_factors.clone()), (2, big(&[2])));
        assert_eq!(b.order(), None);
        assert_eq!(b.min_generators(), 3);

        let c = abelian_invariants(&ev(&[1, 0, 0]));
        assert!(c.is_trivial());
        assert_eq!(c.to_string(), "1");
    }

    #[test]
    fn rational_rank_and_bareiss() {
        let c = ev(&[1, 1, -1, -1]).circulant_matrix();
        assert_eq!(rational_rank(c.clone()), 2);
        assert!(bareiss_det_abs(c).is_zero());
        let c = ev(&[1, 1, 1, -1, -1]).circulant_matrix();
        assert_eq!(bareiss_det_abs(c.clone()), BigUint::from(16u32));
        assert_eq!(rational_rank(c), 5);
    }

    #[test]
    fn rotation_preserves_invariants() {
        let v = ev(&[2, -1, 0, 3, 1, 0]);
        let base = abelian_invariants(&v);
        for k in 1..6 {
            assert_eq!(abelian_invariants(&v.rotated(k)), base);
        }
    }
}
