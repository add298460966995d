//! Finite fields `F_q`, `q = p^e`, with additive characters and the
//! quadratic character.
//!
//! Elements are indexed by their coefficient vector read as a base-`p`
//! number (constant coefficient least significant), so `0..q` is the
//! enumeration order and `0..p` is the prime subfield. Arithmetic goes
//! through precomputed tables built from polynomial arithmetic modulo the
//! field's defining polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::CycInt;
use crate::error::{Error, Result};

/// Largest field order with precomputed tables.
pub const MAX_FIELD_ORDER: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
    sgn: Vec<i8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, e={}, modulus={:?})", self.q, self.p, self.e, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, o: &Field) -> bool {
        self.p == o.p && self.e == o.e && self.modulus == o.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo a monic polynomial of degree `e`.
fn polymul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut acc = vec![0u64; 2 * e.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (e..acc.len()).rev() {
        let c = acc[k];
        if c == 0 {
            continue;
        }
        acc[k] = 0;
        for (j, &m) in modulus.iter().enumerate().take(e) {
            let idx = k - e + j;
            acc[idx] = (acc[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    acc.truncate(e);
    acc.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo monic `m`, both as coefficient lists over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - c) * mj % p) % p;
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for d in 1..=e / 2 {
        for tail in 0..(p as u64).pow(d as u32) {
            let mut f = digits(tail as u32, p, d as u32);
            f.push(1);
            if poly_rem(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `e`, where the
/// non-leading coefficients are compared as a base-`p` number with the
/// constant term least significant.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    for tail in 0..(p as u64).pow(e) {
        let mut f = digits(tail as u32, p, e);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Build `F_(p^e)`. For `e = 1` the modulus is the placeholder `x`.
pub fn make_field(p: u64, e: u32) -> Result<Arc<Field>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("field degree must be positive".into()));
    }
    let q = p.checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge(p, e))?;
    let (p, q) = (p as u32, q as u32);
    let modulus = if e == 1 { vec![0, 1] } else { smallest_irreducible(p, e) };
    let qs = q as usize;
    let mut add = vec![0u32; qs * qs];
    let mut mul = vec![0u32; qs * qs];
    let vecs: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, e)).collect();
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = undigits(&s, p);
            mul[a * qs + b] = if e == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                undigits(&polymul_mod(&vecs[a], &vecs[b], &modulus, p), p)
            };
        }
    }
    let mut neg = vec![0u32; qs];
    let mut inv = vec![0u32; qs];
    for a in 0..qs {
        neg[a] = (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap();
        if a != 0 {
            inv[a] = (0..q).find(|&b| mul[a * qs + b as usize] == 1).unwrap();
        }
    }
    let mut f = Field { p, e, q, modulus, add, mul, neg, inv, trace: vec![0; qs], sgn: vec![1; qs] };
    for a in 0..q {
        let mut t = FieldElem(0);
        let mut x = FieldElem(a);
        for _ in 0..e {
            t = f.add(t, x);
            x = f.pow(x, p as u64);
        }
        debug_assert!(t.0 < p, "trace lands in the prime field");
        f.trace[a as usize] = t.0;
    }
    if p != 2 {
        for a in 1..q {
            let s = f.pow(FieldElem(a), (q as u64 - 1) / 2);
            f.sgn[a as usize] = if s == FieldElem::ONE { 1 } else { -1 };
        }
    }
    Ok(Arc::new(f))
}

/// Build the field of order `q`, factoring `q` as a prime power.
pub fn make_field_of_order(q: u64) -> Result<Arc<Field>> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    make_field(p, e)
}

impl Field {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter("coefficients outside the field".into()));
        }
        Ok(FieldElem(undigits(coeffs, self.p)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        digits(x.0, self.p, self.e)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (!a.is_zero()).then(|| FieldElem(self.inv[a.index()]))
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.p as u64)
    }

    /// Absolute trace to `F_p`, as a residue in `0..p`.
    #[inline]
    pub fn trace(&self, a: FieldElem) -> u32 {
        self.trace[a.index()]
    }

    fn require_odd(&self) -> Result<()> {
        if self.p == 2 {
            Err(Error::OddCharacteristicRequired)
        } else {
            Ok(())
        }
    }

    /// Quadratic character with `sgn(0) = +1`.
    pub fn sgn(&self, a: FieldElem) -> Result<i8> {
        self.require_odd()?;
        Ok(self.sgn[a.index()])
    }

    #[inline]
    pub(crate) fn sgn_unchecked(&self, a: FieldElem) -> i8 {
        self.sgn[a.index()]
    }

    /// First non-square in enumeration order.
    pub fn delta(&self) -> Result<FieldElem> {
        self.require_odd()?;
        Ok(self.elements().find(|&x| self.sgn[x.index()] == -1).unwrap())
    }

    /// `+1` when `q = 1 mod 4`, else `-1`.
    pub fn epsilon(&self) -> Result<i64> {
        self.require_odd()?;
        Ok(if self.q % 4 == 1 { 1 } else { -1 })
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }
}

/// The additive character `theta_c(x) = zeta_p^Tr(c x)`.
#[derive(Clone, Debug)]
pub struct CharSpec {
    field: Arc<Field>,
    twist: FieldElem,
}

impl CharSpec {
    /// The standard character, twist `c = 1`.
    pub fn standard(field: &Arc<Field>) -> Self {
        CharSpec { field: field.clone(), twist: FieldElem::ONE }
    }

    pub fn twisted(field: &Arc<Field>, twist: FieldElem) -> Result<Self> {
        if twist.is_zero() || twist.0 >= field.q() {
            return Err(Error::InvalidParameter("twist must be a nonzero field element".into()));
        }
        Ok(CharSpec { field: field.clone(), twist })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn twist(&self) -> FieldElem {
        self.twist
    }

    /// Exponent `k` with `theta(x) = zeta_p^k`.
    #[inline]
    pub fn exponent(&self, x: FieldElem) -> u32 {
        self.field.trace(self.field.mul(self.twist, x))
    }

    pub fn theta(&self, x: FieldElem) -> CycInt {
        CycInt::zeta_pow(self.field.p(), self.exponent(x) as i64)
    }

    pub fn theta_conj(&self, x: FieldElem) -> CycInt {
        CycInt::zeta_pow(self.field.p(), -(self.exponent(x) as i64))
    }

    /// `gamma = sum_{a != 0} sgn(a) * conj(theta(a))`.
    pub fn gauss_sum(&self) -> Result<CycInt> {
        let f = &self.field;
        f.require_odd()?;
        let p = f.p() as usize;
        let mut acc = vec![BigInt::zero(); p];
        for a in f.elements().skip(1) {
            let k = (p - self.exponent(a) as usize) % p;
            acc[k] += f.sgn_unchecked(a) as i64;
        }
        Ok(CycInt::from_power_sums(f.p(), acc))
    }

    /// `sum_x conj(theta(x^2))`.
    pub fn conj_square_sum(&self) -> CycInt {
        let f = &self.field;
        let p = f.p() as usize;
        let mut counts = vec![0u64; p];
        for x in f.elements() {
            counts[(p - self.exponent(f.mul(x, x)) as usize) % p] += 1;
        }
        CycInt::from_counts(f.p(), &counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 20).unwrap_err(), Error::FieldTooLarge(2, 20)));
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.sgn(FieldElem::ONE), Err(Error::OddCharacteristicRequired));
    }

    #[test]
    fn moduli_are_smallest_irreducibles() {
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 3), (7, 1)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                if let Some(i) = f.inv(a) {
                    assert_eq!(f.mul(a, i), FieldElem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
                assert_eq!(f.pow(a, f.q() as u64), a);
            }
        }
    }

    #[test]
    fn trace_is_additive_and_frobenius_fixed() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.trace(f.frobenius(a)), f.trace(a));
            for b in f.elements() {
                assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % 3);
            }
        }
    }

    #[test]
    fn quadratic_character_basics() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements().skip(1) {
                for b in f.elements().skip(1) {
                    assert_eq!(f.sgn(f.mul(a, b)).unwrap(), f.sgn(a).unwrap() * f.sgn(b).unwrap());
                }
            }
            assert_eq!(f.sgn(f.neg(FieldElem::ONE)).unwrap() as i64, f.epsilon().unwrap());
            assert_eq!(f.sgn(f.delta().unwrap()).unwrap(), -1);
        }
        assert_eq!(make_field(3, 2).unwrap().delta().unwrap(), FieldElem(4));
        assert_eq!(make_field(7, 1).unwrap().delta().unwrap(), FieldElem(3));
    }

    #[test]
    fn gauss_sum_at_three() {
        let f = make_field(3, 1).unwrap();
        let g = CharSpec::standard(&f).gauss_sum().unwrap();
        assert_eq!(g, CycInt::zeta_pow(3, 2) - CycInt::zeta_pow(3, 1));
    }
}
