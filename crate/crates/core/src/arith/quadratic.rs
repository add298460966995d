//! The ring `Z[gamma]` with `gamma^2 = eps * q`, `eps = (-1)^((q-1)/2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclotomic::CycInt;

/// `a + b*gamma` where `gamma` is the quadratic Gauss sum of `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticGamma {
    a: BigInt,
    b: BigInt,
    q: u64,
}

/// `+1` when `q = 1 mod 4`, else `-1`.
pub fn epsilon_of(q: u64) -> i64 {
    if q % 4 == 1 {
        1
    } else {
        -1
    }
}

impl QuadraticGamma {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, q: u64) -> Self {
        assert!(q % 2 == 1, "quadratic subring needs odd q");
        QuadraticGamma { a: a.into(), b: b.into(), q }
    }

    pub fn zero(q: u64) -> Self {
        Self::new(0, 0, q)
    }

    pub fn one(q: u64) -> Self {
        Self::new(1, 0, q)
    }

    pub fn int(n: impl Into<BigInt>, q: u64) -> Self {
        Self::new(n, 0, q)
    }

    pub fn gamma(q: u64) -> Self {
        Self::new(0, 1, q)
    }

    /// `gamma^k`, computed as `(eps q)^(k/2) gamma^(k mod 2)`.
    pub fn gamma_pow(k: u32, q: u64) -> Self {
        let base = BigInt::from(epsilon_of(q) * q as i64).pow(k / 2);
        if k.is_multiple_of(2) {
            Self::new(base, 0, q)
        } else {
            Self::new(0, base, q)
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn epsilon(&self) -> i64 {
        epsilon_of(self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Complex conjugate: `conj(gamma) = eps * gamma`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), &self.b * self.epsilon(), self.q)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(&self.a * c, &self.b * c, self.q)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.q);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Embed into `Z[zeta_p]` given the cyclotomic value of `gamma`.
    pub fn to_cyc(&self, gamma: &CycInt) -> CycInt {
        CycInt::from_int(gamma.order(), self.a.clone()) + gamma.scale(&self.b)
    }

    /// Exact division by a rational integer.
    pub fn div_int_exact(&self, d: &BigInt) -> Option<Self> {
        use num_integer::Integer;
        let (a, ra) = self.a.div_rem(d);
        let (b, rb) = self.b.div_rem(d);
        (ra.is_zero() && rb.is_zero()).then(|| Self::new(a, b, self.q))
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.q, o.q, "quadratic subrings of different fields");
    }
}

impl<'a> Add<&'a QuadraticGamma> for &'a QuadraticGamma {
    type Output = QuadraticGamma;
    fn add(self, o: &QuadraticGamma) -> QuadraticGamma {
        self.check(o);
        QuadraticGamma::new(&self.a + &o.a, &self.b + &o.b, self.q)
    }
}

impl<'a> Sub<&'a QuadraticGamma> for &'a QuadraticGamma {
    type Output = QuadraticGamma;
    fn sub(self, o: &QuadraticGamma) -> QuadraticGamma {
        self.check(o);
        QuadraticGamma::new(&self.a - &o.a, &self.b - &o.b, self.q)
    }
}

impl<'a> Mul<&'a QuadraticGamma> for &'a QuadraticGamma {
    type Output = QuadraticGamma;
    fn mul(self, o: &QuadraticGamma) -> QuadraticGamma {
        self.check(o);
        let eq = BigInt::from(self.epsilon() * self.q as i64);
        QuadraticGamma::new(
            &self.a * &o.a + &self.b * &o.b * eq,
            &self.a * &o.b + &self.b * &o.a,
            self.q,
        )
    }
}

impl Neg for &QuadraticGamma {
    type Output = QuadraticGamma;
    fn neg(self) -> QuadraticGamma {
        QuadraticGamma::new(-&self.a, -&self.b, self.q)
    }
}

impl Neg for QuadraticGamma {
    type Output = QuadraticGamma;
    fn neg(self) -> QuadraticGamma {
        -&self
    }
}

super::poly::forward_owned!(QuadraticGamma, Add add, Sub sub, Mul mul);

impl fmt::Display for QuadraticGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "g"),
            (true, false) => write!(f, "{}*g", self.b),
            _ => write!(f, "{} + {}*g", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_squares_to_eps_q() {
        for q in [3u64, 5, 7, 9, 11, 13] {
            let g = QuadraticGamma::gamma(q);
            assert_eq!(&g * &g, QuadraticGamma::int(epsilon_of(q) * q as i64, q));
            assert_eq!(&g * &g.conj(), QuadraticGamma::int(q, q));
            assert_eq!(QuadraticGamma::gamma_pow(5, q), g.pow(5));
        }
    }
}
