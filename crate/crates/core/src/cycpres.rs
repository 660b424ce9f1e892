//! Cyclic presentations `G_n(w)` and the generalized Fibonacci groups `H(r,n,s)`.
//!
//! Only abelianized data is computed: a word is reduced to its exponent-sum
//! vector, which is the first row of the circulant relation matrix.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::circulant::{self, AbelianGroup, ExponentVector};
use crate::error::{Error, Result};

/// A generator `x_i` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverted: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverted: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverted: true }
    }

    fn sign(self) -> i64 {
        if self.inverted {
            -1
        } else {
            1
        }
    }
}

/// The word `w(x_0, ..., x_{n-1})` whose shifts `x_i -> x_{i+k}` are the relators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    n: usize,
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyExponentVector);
        }
        if let Some(l) = letters.iter().find(|l| l.generator >= n) {
            return Err(Error::GeneratorOutOfRange { index: l.generator, n });
        }
        Ok(CyclicWord { n, letters })
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverted {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Parameters of `H(r,n,s)`: relators `x_i...x_{i+r-1} = x_{i+r}...x_{i+r+s-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HParams {
    pub r: u64,
    pub n: u64,
    pub s: u64,
}

impl HParams {
    pub fn new(r: u64, n: u64, s: u64) -> Result<Self> {
        if r < 1 || s < 1 || n < 2 {
            return Err(Error::InvalidParams { r, n, s });
        }
        Ok(HParams { r, n, s })
    }

    /// `(r + alpha n, n, s + alpha n)`, which has the same abelianization.
    pub fn shifted(self, alpha: u64) -> Self {
        HParams {
            r: self.r + alpha * self.n,
            n: self.n,
            s: self.s + alpha * self.n,
        }
    }

    /// `(s, n, r)`; `H(r,n,s)` and `H(s,n,r)` are isomorphic.
    pub fn swapped(self) -> Self {
        HParams { r: self.s, n: self.n, s: self.r }
    }
}

impl fmt::Display for HParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{},{})", self.r, self.n, self.s)
    }
}

/// Single relator `x_0 ... x_{r-1} x_{r+s-1}^-1 ... x_r^-1`, indices mod `n`.
pub fn h_word(p: HParams) -> CyclicWord {
    let n = p.n as usize;
    let (r, s) = (p.r as usize, p.s as usize);
    let letters = (0..r)
        .map(|j| Letter::pos(j % n))
        .chain((r..r + s).rev().map(|j| Letter::neg(j % n)))
        .collect();
    CyclicWord { n, letters }
}

pub fn exponent_vector(w: &CyclicWord) -> ExponentVector {
    let mut sums = vec![0i64; w.n];
    for l in &w.letters {
        sums[l.generator] += l.sign();
    }
    ExponentVector::new(sums.into_iter().map(BigInt::from).collect())
        .expect("cyclic word has at least one generator")
}

pub fn abelianization(w: &CyclicWord) -> AbelianGroup {
    circulant::abelian_invariants(&exponent_vector(w))
}

/// `|H(r,n,s)^ab|`, with 0 meaning infinite.
pub fn ab_order(p: HParams) -> BigUint {
    ab_order_any_n(p.r, p.n, p.s)
}

/// Exponent vector of `H(r,n,s)` for any `n >= 1`.
///
/// `n = 1` shows up when halving parameters with `n = 2`.
pub(crate) fn h_exponent_vector(r: u64, n: u64, s: u64) -> ExponentVector {
    assert!(n >= 1);
    let n = n as usize;
    let mut sums = vec![0i64; n];
    for j in 0..r as usize {
        sums[j % n] += 1;
    }
    for j in r as usize..(r + s) as usize {
        sums[j % n] -= 1;
    }
    ExponentVector::new(sums.into_iter().map(BigInt::from).collect()).unwrap()
}

pub(crate) fn ab_order_any_n(r: u64, n: u64, s: u64) -> BigUint {
    circulant::circulant_det_abs(&h_exponent_vector(r, n, s))
}

pub(crate) fn is_perfect_any_n(r: u64, n: u64, s: u64) -> bool {
    ab_order_any_n(r, n, s).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn hp(r: u64, n: u64, s: u64) -> HParams {
        HParams::new(r, n, s).unwrap()
    }

    fn entries(v: &ExponentVector) -> Vec<i64> {
        v.entries().iter().map(|a| a.try_into().unwrap()).collect()
    }

    #[test]
    fn params_validation() {
        assert!(HParams::new(0, 5, 1).is_err());
        assert!(HParams::new(1, 1, 1).is_err());
        assert!(HParams::new(1, 5, 0).is_err());
        assert!(HParams::new(1, 2, 1).is_ok());
    }

    #[test]
    fn word_layout() {
        let w = h_word(hp(3, 5, 2));
        assert_eq!(w.to_string(), "x0 x1 x2 x4^-1 x3^-1");
        assert_eq!(h_word(hp(2, 3, 2)).to_string(), "x0 x1 x0^-1 x2^-1");
    }

    #[test]
    fn word_rejects_bad_index() {
        assert_eq!(
            CyclicWord::new(2, vec![Letter::pos(2)]),
            Err(Error::GeneratorOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn h_word_exponent_vectors() {
        assert_eq!(entries(&exponent_vector(&h_word(hp(3, 5, 2)))), vec![1, 1, 1, -1, -1]);
        assert_eq!(entries(&exponent_vector(&h_word(hp(1, 2, 1)))), vec![1, -1]);
        assert_eq!(entries(&exponent_vector(&h_word(hp(4, 2, 2)))), vec![1, 1]);
        assert_eq!(entries(&exponent_vector(&h_word(hp(2, 5, 2)))), vec![1, 1, -1, -1, 0]);
    }

    #[test]
    fn literal_word_exponents() {
        let w = CyclicWord::new(
            3,
            vec![Letter::pos(0), Letter::pos(1), Letter::neg(1), Letter::neg(2)],
        )
        .unwrap();
        assert_eq!(entries(&exponent_vector(&w)), vec![1, 0, -1]);
        let empty = CyclicWord::new(2, vec![]).unwrap();
        assert_eq!(entries(&exponent_vector(&empty)), vec![0, 0]);
    }

    #[test]
    fn abelianization_examples() {
        let a = abelianization(&h_word(hp(2, 3, 1)));
        assert_eq!(a.betti, 0);
        assert_eq!(a.invariant_factors, vec![BigUint::from(2u32); 2]);
        let b = abelianization(&h_word(hp(2, 5, 2)));
        assert_eq!((b.betti, b.invariant_factors.len()), (1, 0));
        let c = abelianization(&h_word(hp(1, 2, 1)));
        assert_eq!((c.betti, c.invariant_factors.len()), (1, 0));
    }

    #[test]
    fn order_examples() {
        assert_eq!(ab_order(hp(3, 5, 2)), BigUint::from(16u32));
        assert_eq!(ab_order(hp(3, 6, 2)), BigUint::from(13u32));
        assert!(ab_order(hp(2, 4, 2)).is_zero());
    }

    #[test]
    fn halving_to_one_generator() {
        // H(2,1,1): single relator x^1, trivial group
        assert!(is_perfect_any_n(2, 1, 1));
        assert_eq!(ab_order_any_n(3, 1, 1), BigUint::from(2u32));
    }
}
