//! Laurent polynomials `q^k * P(q)` with `P` in `Z[q]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{forward_owned, PolyQ};
use super::Rational;
use crate::error::{Error, Result};

/// Element of `Z[q, q^-1]`, normalised so the stored polynomial has a
/// nonzero constant term (or is zero with shift 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentQ {
    shift: i64,
    poly: PolyQ,
}

impl LaurentQ {
    pub fn new(shift: i64, poly: PolyQ) -> Self {
        match poly.valuation() {
            None => LaurentQ::zero(),
            Some(v) => LaurentQ {
                shift: shift + v as i64,
                poly: poly.unshift(v).expect("valuation"),
            },
        }
    }

    pub fn from_poly(poly: PolyQ) -> Self {
        Self::new(0, poly)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    /// `c * q^k` for any integer `k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::new(k, PolyQ::constant(c))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// The indeterminate.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Lowest exponent present, `None` for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    /// The polynomial when no negative powers remain.
    pub fn to_poly(&self) -> Option<PolyQ> {
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        (self.shift >= 0).then(|| self.poly.shift(self.shift as usize))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let base = self.poly.eval(x);
        base * super::rat_pow(x, self.shift)
    }

    /// Inverse of a unit `±q^k`.
    pub fn inv_unit(&self) -> Result<Self> {
        if self.poly.is_constant() && self.poly.coeff(0).abs().is_one() {
            Ok(LaurentQ::monomial(self.poly.coeff(0), -self.shift))
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Exact quotient in `Z[q, q^-1]`.
    pub fn div_exact(&self, d: &LaurentQ) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        let quot = self.poly.div_exact(&d.poly)?;
        Ok(LaurentQ::new(self.shift - d.shift, quot))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentQ::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self^k` for any integer `k`; negative powers need a unit.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv_unit()?.pow((-k) as u32))
        }
    }
}

impl Zero for LaurentQ {
    fn zero() -> Self {
        LaurentQ { shift: 0, poly: PolyQ::zero() }
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl One for LaurentQ {
    fn one() -> Self {
        LaurentQ::constant(1)
    }
}

impl From<i64> for LaurentQ {
    fn from(c: i64) -> Self {
        LaurentQ::constant(c)
    }
}

impl From<PolyQ> for LaurentQ {
    fn from(p: PolyQ) -> Self {
        LaurentQ::from_poly(p)
    }
}

fn align(a: &LaurentQ, b: &LaurentQ) -> (i64, PolyQ, PolyQ) {
    let s = a.shift.min(b.shift);
    (s, a.poly.shift((a.shift - s) as usize), b.poly.shift((b.shift - s) as usize))
}

impl<'a> Add<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn add(self, o: &LaurentQ) -> LaurentQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (s, a, b) = align(self, o);
        LaurentQ::new(s, a + b)
    }
}

impl<'a> Sub<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn sub(self, o: &LaurentQ) -> LaurentQ {
        self + &(-o)
    }
}

impl<'a> Mul<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn mul(self, o: &LaurentQ) -> LaurentQ {
        LaurentQ::new(self.shift + o.shift, &self.poly * &o.poly)
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ { shift: self.shift, poly: -&self.poly }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

forward_owned!(LaurentQ, Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "q^{} * ({})", self.shift, self.poly),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_shift() {
        let x = LaurentQ::new(-2, PolyQ::from_i64s(&[0, 0, 1, 1]));
        assert_eq!(x.to_poly(), Some(PolyQ::from_i64s(&[1, 1])));
        assert_eq!(LaurentQ::q_pow(-1).to_poly(), None);
    }

    #[test]
    fn arithmetic_with_negative_powers() {
        let a = LaurentQ::q_pow(-1);
        let b = LaurentQ::q_pow(3);
        assert_eq!(&a * &b, LaurentQ::q_pow(2));
        let s = &a + &LaurentQ::one();
        let back = &s * &LaurentQ::q();
        assert_eq!(back.to_poly(), Some(PolyQ::from_i64s(&[1, 1])));
        assert_eq!(LaurentQ::monomial(-1, 4).inv_unit().unwrap(), LaurentQ::monomial(-1, -4));
    }

    #[test]
    fn eval_matches_rational() {
        let x = LaurentQ::monomial(3, -2) + LaurentQ::one();
        let v = x.eval(&Rational::from_integer(2.into()));
        assert_eq!(v, Rational::new(7.into(), 4.into()));
    }
}
