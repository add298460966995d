//! Integers of the cyclotomic field `Q(zeta_p)` for a prime `p`.
//!
//! Elements are stored in the integral basis `1, zeta, ..., zeta^(p-2)`;
//! the relation `zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))` keeps the
//! representation unique, so structural equality is ring equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::quadratic::QuadraticGamma;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    fn width(p: u32) -> usize {
        (p as usize - 1).max(1)
    }

    /// From exactly `p - 1` basis coefficients.
    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != Self::width(p) {
            return Err(Error::ShapeMismatch);
        }
        Ok(CycInt { p, coeffs })
    }

    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![BigInt::zero(); Self::width(p)] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    /// `zeta^k`, any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut counts = vec![BigInt::zero(); p as usize];
        counts[k.rem_euclid(p as i64) as usize] = BigInt::one();
        Self::from_power_sums(p, counts)
    }

    /// `sum_k counts[k] * zeta^k` for `k` in `0..p`.
    pub fn from_power_sums(p: u32, mut counts: Vec<BigInt>) -> Self {
        assert_eq!(counts.len(), p as usize, "one count per power of zeta");
        if p == 2 {
            let c1 = counts.pop().unwrap();
            return CycInt { p, coeffs: vec![&counts[0] - c1] };
        }
        let top = counts.pop().unwrap();
        for c in counts.iter_mut() {
            *c -= &top;
        }
        CycInt { p, coeffs: counts }
    }

    /// Same as [`CycInt::from_power_sums`] with machine-word counts.
    pub fn from_counts(p: u32, counts: &[u64]) -> Self {
        Self::from_power_sums(p, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, o: &CycInt) -> Result<()> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(Error::IncompatibleOrder(self.p, o.p))
        }
    }

    pub fn try_add(&self, o: &CycInt) -> Result<CycInt> {
        self.check(o)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &CycInt) -> Result<CycInt> {
        self.check(o)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, o: &CycInt) -> Result<CycInt> {
        self.check(o)?;
        let p = self.p as usize;
        if p == 2 {
            return Ok(CycInt { p: 2, coeffs: vec![&self.coeffs[0] * &o.coeffs[0]] });
        }
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                acc[(i + j) % p] += a * b;
            }
        }
        Ok(Self::from_power_sums(self.p, acc))
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divide by a rational integer; fails unless every coefficient is divisible.
    pub fn div_int_exact(&self, d: &BigInt) -> Result<CycInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            coeffs.push(quo);
        }
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn pow(&self, k: u32) -> CycInt {
        let mut out = CycInt::one(self.p);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Complex conjugation `zeta^k -> zeta^(-k)`.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        if p == 2 {
            return self.clone();
        }
        let mut acc = vec![BigInt::zero(); p];
        for (k, c) in self.coeffs.iter().enumerate() {
            acc[(p - k) % p] += c;
        }
        Self::from_power_sums(self.p, acc)
    }

    /// The value as a rational integer, when it is one.
    pub fn to_int(&self) -> Result<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRationalInteger)
        }
    }

    /// Write `self = a + b*gamma` for the given Gauss sum `gamma`.
    ///
    /// `gamma` must be irrational (odd-degree field); otherwise the
    /// decomposition is not unique and this returns an error.
    pub fn to_quadratic(&self, gamma: &CycInt, q: u64) -> Result<QuadraticGamma> {
        self.check(gamma)?;
        let mut b: Option<BigInt> = None;
        for (x, g) in self.coeffs.iter().zip(&gamma.coeffs).skip(1) {
            if g.is_zero() {
                if !x.is_zero() {
                    return Err(Error::NotInQuadraticSubring);
                }
                continue;
            }
            let (quo, r) = x.div_rem(g);
            if !r.is_zero() {
                return Err(Error::NotInQuadraticSubring);
            }
            match &b {
                Some(prev) if *prev != quo => return Err(Error::NotInQuadraticSubring),
                _ => b = Some(quo),
            }
        }
        let b = b.ok_or(Error::NotInQuadraticSubring)?;
        let a = &self.coeffs[0] - &b * &gamma.coeffs[0];
        Ok(QuadraticGamma::new(a, b, q))
    }
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        self.try_add(o).expect("cyclotomic add")
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        self.try_sub(o).expect("cyclotomic sub")
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        self.try_mul(o).expect("cyclotomic mul")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

super::poly::forward_owned!(CycInt, Add add, Sub sub, Mul mul);

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(n) = self.to_int() {
            return write!(f, "{n}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ => format!("{c}*z{}^{k}", self.p),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_power_relation() {
        let z = CycInt::zeta_pow(5, 1);
        assert_eq!(z.pow(5), CycInt::one(5));
        let s = (0..5).fold(CycInt::zero(5), |acc, k| acc + CycInt::zeta_pow(5, k));
        assert!(s.is_zero());
    }

    #[test]
    fn quadratic_period_at_three() {
        let g = CycInt::zeta_pow(3, 2) - CycInt::zeta_pow(3, 1);
        assert_eq!(&g * &g, CycInt::from_int(3, -3));
        let x = CycInt::from_int(3, 2) + g.scale(&BigInt::from(5));
        let qg = x.to_quadratic(&g, 3).unwrap();
        assert_eq!((qg.a().clone(), qg.b().clone()), (BigInt::from(2), BigInt::from(5)));
        assert_eq!(CycInt::zeta_pow(3, 1).to_quadratic(&g, 3).unwrap_err(), Error::NotInQuadraticSubring);
    }

    #[test]
    fn order_mismatch_and_integrality() {
        let e = CycInt::one(3).try_add(&CycInt::one(5)).unwrap_err();
        assert_eq!(e, Error::IncompatibleOrder(3, 5));
        assert_eq!(CycInt::zeta_pow(7, 3).to_int(), Err(Error::NotRationalInteger));
        assert_eq!(CycInt::zeta_pow(2, 1).to_int(), Ok(BigInt::from(-1)));
    }

    #[test]
    fn conjugation_inverts_zeta() {
        let z = CycInt::zeta_pow(7, 2);
        assert_eq!(&z * &z.conj(), CycInt::one(7));
        assert_eq!(z.conj(), CycInt::zeta_pow(7, 5));
    }
}
