//! Exact arithmetic: rationals, polynomials in `q`, cyclotomic integers and
//! the quadratic subring generated by a Gauss sum.

mod cyclotomic;
mod laurent;
mod poly;
mod quadratic;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cyclotomic::CycInt;
pub use laurent::LaurentQ;
pub use poly::{q_integer, to_i64s, PolyQ};
pub use quadratic::{epsilon_of, QuadraticGamma};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `x^k` for any integer `k`; panics on `0^negative`.
pub fn rat_pow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        assert!(!x.is_zero(), "zero to a negative power");
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// The integer value of a rational, if integral.
pub fn rat_to_int(x: &Rational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::NotRationalInteger)
    }
}

/// Commutative ring operations shared by the exact number types.
pub trait Ring:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// Exact quotient, failing when `d` does not divide `self`.
    fn try_div(&self, d: &Self) -> Result<Self>;

    fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            let mut out = Self::one();
            for _ in 0..k {
                out = out * self.clone();
            }
            Ok(out)
        } else {
            Self::one().try_div(&self.powi(-k)?)
        }
    }
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn try_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            Err(Error::ParameterPole)
        } else {
            Ok(self / d)
        }
    }
}

impl Ring for BigInt {
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn try_div(&self, d: &Self) -> Result<Self> {
        use num_integer::Integer;
        if d.is_zero() {
            return Err(Error::ParameterPole);
        }
        let (quo, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(quo)
        } else {
            Err(Error::InexactDivision)
        }
    }
}

impl Ring for PolyQ {
    fn from_int(n: i64) -> Self {
        PolyQ::constant(n)
    }
    fn try_div(&self, d: &Self) -> Result<Self> {
        self.div_exact(d)
    }
}

impl Ring for LaurentQ {
    fn from_int(n: i64) -> Self {
        LaurentQ::constant(n)
    }
    fn try_div(&self, d: &Self) -> Result<Self> {
        self.div_exact(d)
    }
}

/// Dense polynomial product with coefficients in any ring.
pub fn poly_mul<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Drop trailing zero coefficients.
pub fn poly_trim<R: Ring>(mut a: Vec<R>) -> Vec<R> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(Rational::from_int(2).powi(-1).unwrap(), rat(1, 2));
        assert_eq!(LaurentQ::q().powi(-2).unwrap(), LaurentQ::q_pow(-2));
    }
}
