//! Dense polynomials over `Z` with arbitrary-precision coefficients.
//!
//! Everything here is exact: gcds are taken with a primitive PRS, resultants
//! with the subresultant chain, and cyclotomic polynomials are produced by
//! exact division of binomials `t^d - 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial `sum c_i t^i` stored in ascending order with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t^n - 1`; for `n = 0` this is the zero polynomial.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] += 1;
        coeffs[0] -= 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content(self)`; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar_exact(&c)
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let pp = self.primitive_part();
        match pp.leading_coefficient() {
            Some(lc) if lc.is_negative() => -pp,
            _ => pp,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide each of them.
    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// Quotient `self / divisor` in `Z[t]` if the division is exact, else `None`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        let lb = divisor.leading_coefficient()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < db {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lb);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    ///
    /// Panics if `divisor` is zero.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("pseudo-remainder by zero polynomial");
        let lb = divisor.leading_coefficient().unwrap();
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        let mut unused = da - db + 1;
        let mut top = da;
        loop {
            let c = rem[top].clone();
            let shift = top - db;
            for a in rem.iter_mut() {
                *a *= lb;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * b;
            }
            unused -= 1;
            rem.truncate(top);
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            match rem.len().checked_sub(1) {
                Some(d) if d >= db => top = d,
                _ => break,
            }
        }
        let rem = Self::new(rem);
        if unused > 0 {
            rem.scale(&Pow::pow(lb, unused))
        } else {
            rem
        }
    }

    /// Folds exponents modulo `n`, i.e. reduces modulo `t^n - 1`.
    pub fn reduce_mod_t_pow_minus_one(&self, n: usize) -> Self {
        assert!(n > 0, "reduction modulo t^0 - 1");
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i % n] += c;
        }
        Self::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -self.clone()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Greatest common divisor in `Q[t]`, returned primitive with positive
/// leading coefficient (so a constant gcd is reported as `1`).
pub fn poly_gcd(p: &IntPolynomial, q: &IntPolynomial) -> Result<IntPolynomial> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::GcdOfZero),
        (true, false) => return Ok(unit_if_constant(q.normalized())),
        (false, true) => return Ok(unit_if_constant(p.normalized())),
        _ => {}
    }
    let (mut a, mut b) = (p.primitive_part(), q.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    // primitive PRS
    while !b.is_constant() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
        if b.is_zero() {
            return Ok(unit_if_constant(a.normalized()));
        }
    }
    Ok(IntPolynomial::one())
}

fn unit_if_constant(p: IntPolynomial) -> IntPolynomial {
    if p.is_constant() {
        IntPolynomial::one()
    } else {
        p
    }
}

/// Exact resultant `Res(p, q)` with the Sylvester-matrix sign convention.
///
/// Uses the subresultant chain. If either argument is zero the result is 0.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return BigInt::zero();
    };
    if dq == 0 {
        return Pow::pow(&q.coeffs[0], dp);
    }
    if dp == 0 {
        return Pow::pow(&p.coeffs[0], dq);
    }

    let (cp, cq) = (p.content(), q.content());
    let t = Pow::pow(&cp, dq) * Pow::pow(&cq, dp);
    let mut a = p.primitive_part();
    let mut b = q.primitive_part();
    let mut sign_negative = false;
    if dp < dq {
        std::mem::swap(&mut a, &mut b);
        if dp % 2 == 1 && dq % 2 == 1 {
            sign_negative = true;
        }
    }

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        let divisor = &g * Pow::pow(&h, delta);
        b = r.div_scalar_exact(&divisor);
        g = a.leading_coefficient().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => Pow::pow(&g, delta) / Pow::pow(&h, delta - 1),
        };
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().unwrap();
    let lb = b.coeffs[0].clone();
    let h = Pow::pow(&lb, da) / Pow::pow(&h, da - 1);
    let res = t * h;
    if sign_negative {
        -res
    } else {
        res
    }
}

/// The `m`-th cyclotomic polynomial `Phi_m(t)`.
///
/// Computed as `prod_{d | m} (t^d - 1)^mu(m/d)` with one exact division.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => num = &num * &IntPolynomial::t_pow_minus_one(d as usize),
            -1 => den = &den * &IntPolynomial::t_pow_minus_one(d as usize),
            _ => {}
        }
    }
    num.div_exact(&den)
        .expect("cyclotomic quotient is exact")
}

/// Least `m` such that `Phi_m` divides `p` in `Z[t]`, if any.
///
/// Only `m` with `phi(m) <= deg p` can qualify; all of them satisfy
/// `m <= 2 deg(p)^2`. The zero polynomial is divisible by `Phi_1`.
pub fn has_cyclotomic_factor(p: &IntPolynomial) -> Option<u64> {
    let deg = match p.degree() {
        None => return Some(1),
        Some(0) => return None,
        Some(d) => d as u64,
    };
    (1..=2 * deg * deg)
        .filter(|&m| euler_phi(m) <= deg)
        .find(|&m| p.div_exact(&cyclotomic(m)).is_some())
}

pub(crate) fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m % i == 0 {
            small.push(i);
            if i != m / i {
                large.push(m / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub(crate) fn euler_phi(m: u64) -> u64 {
    prime_factors(m)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

fn mobius(m: u64) -> i8 {
    let f = prime_factors(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}
