//! Dense integer polynomials in one indeterminate `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Element of `Z[q]`. Coefficients are stored low degree first with no
/// trailing zeros, so the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<BigInt>,
}

impl PolyQ {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = PolyQ { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        Self::monomial(1, k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = PolyQ::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    /// Divide by `q^k`, failing if a low coefficient is nonzero.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(PolyQ::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Quotient and remainder over `Z`. Fails when a leading-coefficient
    /// division is not exact.
    pub fn div_rem(&self, d: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let dd = d.degree().ok_or(Error::InexactDivision)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Exact quotient `self / d`; errors unless `d` divides `self` in `Z[q]`.
    pub fn div_exact(&self, d: &PolyQ) -> Result<PolyQ> {
        let (quot, rem) = self.div_rem(d)?;
        if !rem.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(quot)
    }

    /// Divide every coefficient by an integer, exactly.
    pub fn div_int_exact(&self, d: &BigInt) -> Result<PolyQ> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            out.push(quo);
        }
        Ok(PolyQ::new(out))
    }

    pub fn scale(&self, c: &BigInt) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Zero for PolyQ {
    fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolyQ {
    fn one() -> Self {
        PolyQ::constant(1)
    }
}

impl From<i64> for PolyQ {
    fn from(c: i64) -> Self {
        PolyQ::constant(c)
    }
}

impl From<BigInt> for PolyQ {
    fn from(c: BigInt) -> Self {
        PolyQ::constant(c)
    }
}

impl<'a> Add<&'a PolyQ> for &'a PolyQ {
    type Output = PolyQ;
    fn add(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a PolyQ> for &'a PolyQ {
    type Output = PolyQ;
    fn sub(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a PolyQ> for &'a PolyQ {
    type Output = PolyQ;
    fn mul(self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { $tr::$m(&self, &o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t { $tr::$m(&self, o) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(PolyQ, Add add, Sub sub, Mul mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                _ if unit => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `q`-integer `(q^k - 1)/(q - 1)` as a polynomial.
pub fn q_integer(k: usize) -> PolyQ {
    PolyQ::new(vec![BigInt::one(); k])
}

/// Convert small polynomials to `i64` coefficient lists when they fit.
pub fn to_i64s(p: &PolyQ) -> Option<Vec<i64>> {
    p.coeffs().iter().map(|c| c.to_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_i64s(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(PolyQ::zero().degree(), None);
    }

    #[test]
    fn mul_and_eval() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(
            (&a * &b).eval(&Rational::from_integer(3.into())),
            Rational::from_integer(8.into())
        );
    }

    #[test]
    fn exact_division() {
        let num = p(&[-1, 0, 0, 1]);
        let den = p(&[-1, 1]);
        assert_eq!(num.div_exact(&den).unwrap(), p(&[1, 1, 1]));
        assert_eq!(p(&[1, 0, 1]).div_exact(&den), Err(Error::InexactDivision));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[1, 2])), Err(Error::InexactDivision));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2, 1]).to_string(), "q^3 + 2*q^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
    }
}
