//! Pochhammer symbols, Gaussian binomials and the Krawtchouk and affine
//! q-Krawtchouk polynomials, evaluated exactly over the rationals.

use num_traits::{One, Zero};

use crate::arith::{rat_int, rat_pow, PolyQ, Rational};
use crate::error::{Error, Result};

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::NegativeLength);
    }
    Ok((0..k).fold(Rational::one(), |acc, i| acc * (a + rat_int(i))))
}

/// `(a; q)_k = (1 - a)(1 - a q) ... (1 - a q^(k-1))`.
pub fn q_pochhammer(a: &Rational, q: &Rational, k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::NegativeLength);
    }
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= Rational::one() - &term;
        term *= q;
    }
    Ok(acc)
}

/// Gaussian binomial `[n, x]_q`, computed by the q-Pascal rule so that
/// roots of unity (including `q = 1`) need no special casing.
pub fn gauss_binom(n: i64, x: i64, q: &Rational) -> Result<Rational> {
    if n < 0 || x < 0 || x > n {
        return Err(Error::OutOfRange);
    }
    let (n, x) = (n as usize, x as usize);
    let mut row = vec![Rational::zero(); x + 1];
    row[0] = Rational::one();
    for m in 1..=n {
        for j in (1..=x.min(m)).rev() {
            let shifted = rat_pow(q, j as i64) * &row[j];
            row[j] = &row[j - 1] + shifted;
        }
    }
    Ok(row[x].clone())
}

/// `[n, x]_q`, or zero when `x` exceeds `n` (the product form vanishes).
pub fn gauss_binom_or_zero(n: i64, x: i64, q: &Rational) -> Result<Rational> {
    if n >= 0 && x > n {
        return Ok(Rational::zero());
    }
    gauss_binom(n, x, q)
}

/// Gaussian binomial as a polynomial in `q`.
pub fn gauss_binom_poly(n: i64, x: i64) -> Result<PolyQ> {
    if n < 0 || x < 0 || x > n {
        return Err(Error::OutOfRange);
    }
    let (n, x) = (n as usize, x as usize);
    let mut row = vec![PolyQ::zero(); x + 1];
    row[0] = PolyQ::one();
    for m in 1..=n {
        for j in (1..=x.min(m)).rev() {
            row[j] = &row[j - 1] + &row[j].shift(j);
        }
    }
    Ok(row[x].clone())
}

/// `(q^a; q^s)_k` as a polynomial when every exponent stays nonnegative.
pub fn q_pochhammer_poly(a: i64, s: i64, k: i64) -> Result<PolyQ> {
    if k < 0 {
        return Err(Error::NegativeLength);
    }
    let mut acc = PolyQ::one();
    for i in 0..k {
        let e = a + s * i;
        if e < 0 {
            return Err(Error::OutOfRange);
        }
        acc = &acc * &(PolyQ::one() - PolyQ::q_pow(e as usize));
    }
    Ok(acc)
}

/// Krawtchouk polynomial
/// `K_y(x; p, N) = sum_k (-y)_k (-x)_k / ((-N)_k k! p^k)`.
pub fn krawtchouk(y: i64, x: i64, p: &Rational, n: i64) -> Result<Rational> {
    if n < 0 || !(0..=n).contains(&y) || !(0..=n).contains(&x) {
        return Err(Error::OutOfRange);
    }
    if p.is_zero() {
        return Err(Error::ParameterPole);
    }
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for k in 0..=y.min(x) {
        sum += &term;
        // ratio of consecutive terms
        let num = rat_int(-y + k) * rat_int(-x + k);
        let den = rat_int(-n + k) * rat_int(k + 1) * p;
        if den.is_zero() {
            if k < y.min(x) {
                return Err(Error::ParameterPole);
            }
            break;
        }
        term = term * num / den;
    }
    Ok(sum)
}

/// Affine q-Krawtchouk polynomial
/// `K_y(x; a, N; q) = sum_k (q^-y;q)_k (q^-x;q)_k q^k / ((q^-N;q)_k (a;q)_k (q;q)_k)`.
pub fn affine_q_krawtchouk(y: i64, x: i64, a: &Rational, n: i64, q: &Rational) -> Result<Rational> {
    if n < 0 || !(0..=n).contains(&y) || !(0..=n).contains(&x) {
        return Err(Error::OutOfRange);
    }
    if q.is_zero() {
        return Err(Error::ParameterPole);
    }
    let qy = rat_pow(q, -y);
    let qx = rat_pow(q, -x);
    let qn = rat_pow(q, -n);
    let mut sum = Rational::zero();
    for k in 0..=y.min(x) {
        let den = q_pochhammer(&qn, q, k)? * q_pochhammer(a, q, k)? * q_pochhammer(q, q, k)?;
        if den.is_zero() {
            return Err(Error::ParameterPole);
        }
        let num = q_pochhammer(&qy, q, k)? * q_pochhammer(&qx, q, k)? * rat_pow(q, k);
        sum += num / den;
    }
    Ok(sum)
}
