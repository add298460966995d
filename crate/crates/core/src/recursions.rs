//! Two-term recursions for canonical matrices and their closed forms.
//!
//! A Pascal family is a sequence of tables `f_N(y, x)`, `0 <= y, x <= N`,
//! governed by parameters `a, b, c, d, t, sigma`:
//!
//! * backward rule `f_N(y+1, x) = a t^x f_{N-1}(y, x) - b t^(x-1) f_{N-1}(y, x-1)`,
//! * forward rule `f_N(y+1, x) - c f_N(y, x) = -d t^(2N-y-1) f_{N-1}(y, x-1)`,
//! * `f_0 = [[sigma]]`.
//!
//! Together they force the first row
//! `c O_N(x) = a t^x O_{N-1}(x) + (d t^(2N-1) - b t^(x-1)) O_{N-1}(x-1)`,
//! which seeds the backward rule. The vector, rectangular and alternating
//! families are instances with monomial parameters in `q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, poly_mul, poly_trim, rat_int, rat_pow, LaurentQ, PolyQ, Rational, Ring};
use crate::error::{Error, Result};
use crate::field::CharSpec;
use crate::qspecial::{
    affine_q_krawtchouk, gauss_binom, gauss_binom_poly, krawtchouk, q_pochhammer,
    q_pochhammer_poly,
};
use crate::report::Report;
use crate::spaces::{mat_orbit_size_poly, Budget, OrbitLabel, Space, SpaceKind};
use crate::transform::{CanonicalMatrix, Diagram};

#[derive(Clone, Debug, PartialEq)]
pub struct PascalParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub t: S,
    pub sigma: S,
}

/// `tables[N][y][x]` for `N = 0..=n`.
pub type PascalTables<S> = Vec<Vec<Vec<S>>>;

fn get<S: Ring>(row: &[S], x: i64) -> S {
    if x < 0 {
        S::zero()
    } else {
        row.get(x as usize).cloned().unwrap_or_else(S::zero)
    }
}

/// First rows `O_N(x)`, `N = 0..=n`.
pub fn orbit_rows<S: Ring>(p: &PascalParams<S>, n: usize) -> Result<Vec<Vec<S>>> {
    let mut rows = vec![vec![p.sigma.clone()]];
    for big_n in 1..=n as i64 {
        let prev = rows.last().unwrap().clone();
        let mut cur = Vec::new();
        for x in 0..=big_n {
            let mut acc = S::zero();
            let keep = get(&prev, x);
            if !keep.is_zero() {
                acc = acc + p.a.clone() * p.t.powi(x)? * keep;
            }
            let shift = get(&prev, x - 1);
            if !shift.is_zero() {
                let coeff = p.d.clone() * p.t.powi(2 * big_n - 1)? - p.b.clone() * p.t.powi(x - 1)?;
                acc = acc + coeff * shift;
            }
            cur.push(acc.try_div(&p.c)?);
        }
        rows.push(cur);
    }
    Ok(rows)
}

/// Tables from the first rows and the backward rule.
pub fn backward_tables<S: Ring>(p: &PascalParams<S>, n: usize) -> Result<PascalTables<S>> {
    let rows = orbit_rows(p, n)?;
    let mut tables: PascalTables<S> = vec![vec![rows[0].clone()]];
    for big_n in 1..=n {
        let prev = &tables[big_n - 1];
        let mut table = vec![rows[big_n].clone()];
        for y in 0..big_n {
            let mut row = Vec::new();
            for x in 0..=big_n as i64 {
                let mut acc = S::zero();
                let keep = get(&prev[y], x);
                if !keep.is_zero() {
                    acc = acc + p.a.clone() * p.t.powi(x)? * keep;
                }
                let shift = get(&prev[y], x - 1);
                if !shift.is_zero() {
                    acc = acc - p.b.clone() * p.t.powi(x - 1)? * shift;
                }
                row.push(acc);
            }
            table.push(row);
        }
        tables.push(table);
    }
    Ok(tables)
}

/// Whether the forward rule holds on the given tables.
pub fn forward_rule_holds<S: Ring>(p: &PascalParams<S>, tables: &PascalTables<S>) -> Result<bool> {
    for big_n in 1..tables.len() {
        let (cur, prev) = (&tables[big_n], &tables[big_n - 1]);
        for y in 0..big_n {
            for x in 0..=big_n as i64 {
                let lhs = get(&cur[y + 1], x) - p.c.clone() * get(&cur[y], x);
                let rhs = -(p.d.clone() * p.t.powi(2 * big_n as i64 - y as i64 - 1)? * get(&prev[y], x - 1));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Gaussian binomial `[n, k]_t` in any ring, by the t-Pascal rule.
fn ring_gauss_binom<S: Ring>(n: usize, k: usize, t: &S) -> Result<S> {
    if k > n {
        return Ok(S::zero());
    }
    let mut row = vec![S::zero(); k + 1];
    row[0] = S::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = row[j - 1].clone() + t.powi(j as i64)? * row[j].clone();
        }
    }
    Ok(row[k].clone())
}

/// Tables from the forward rule alone, expanded down to first rows:
/// `f_N(y, x) = sum_i c^(y-i) (-d)^i t^(-C(i,2)+2Ni-yi) [y, i]_t O_{N-i}(x-i)`.
pub fn forward_expansion<S: Ring>(p: &PascalParams<S>, n: usize) -> Result<PascalTables<S>> {
    let rows = orbit_rows(p, n)?;
    let mut tables = Vec::new();
    for big_n in 0..=n {
        let bn = big_n as i64;
        let mut table = Vec::new();
        for y in 0..=bn {
            let mut row = Vec::new();
            for x in 0..=bn {
                let mut acc = S::zero();
                for i in 0..=y.min(x) {
                    let o = get(&rows[(bn - i) as usize], x - i);
                    if o.is_zero() {
                        continue;
                    }
                    let e = -(i * (i - 1) / 2) + 2 * bn * i - y * i;
                    let term = p.c.powi(y - i)?
                        * (-p.d.clone()).powi(i)?
                        * p.t.powi(e)?
                        * ring_gauss_binom(y as usize, i as usize, &p.t)?
                        * o;
                    acc = acc + term;
                }
                row.push(acc);
            }
            table.push(row);
        }
        tables.push(table);
    }
    Ok(tables)
}

/// The three parameter regimes with distinct closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PascalCase {
    /// `t = 1`, `b = d`.
    Degenerate,
    /// `t = 1`, `b != d`: Krawtchouk polynomials.
    Krawtchouk,
    /// `t != 1`: affine q-Krawtchouk polynomials.
    AffineQ,
}

pub fn pascal_case(p: &PascalParams<Rational>) -> PascalCase {
    if !p.t.is_one() {
        PascalCase::AffineQ
    } else if p.b == p.d {
        PascalCase::Degenerate
    } else {
        PascalCase::Krawtchouk
    }
}

/// Closed-form tables over the rationals.
pub fn closed_tables(p: &PascalParams<Rational>, n: usize) -> Result<PascalTables<Rational>> {
    let case = pascal_case(p);
    let mut tables = Vec::new();
    for big_n in 0..=n as i64 {
        let orbit = |x: i64| -> Result<Rational> {
            let base = &p.sigma * rat_pow(&p.a, big_n - x) / rat_pow(&p.c, big_n);
            Ok(match case {
                PascalCase::Degenerate => {
                    if x == 0 {
                        base
                    } else {
                        Rational::zero()
                    }
                }
                PascalCase::Krawtchouk => base * rat_pow(&(&p.d - &p.b), x) * rat_int(binomial(big_n, x)),
                PascalCase::AffineQ => {
                    let start = &p.d / &p.b * rat_pow(&p.t, big_n);
                    base * rat_pow(&-p.b.clone(), x)
                        * rat_pow(&p.t, x * (x - 1) / 2)
                        * q_pochhammer(&start, &p.t.recip(), x)?
                        * gauss_binom(big_n, x, &p.t)?
                }
            })
        };
        let mut table = Vec::new();
        for y in 0..=big_n {
            let mut row = Vec::new();
            for x in 0..=big_n {
                let v = match case {
                    PascalCase::Degenerate => {
                        if x <= y {
                            &p.sigma * rat_pow(&p.a, big_n - x) * rat_pow(&-p.b.clone(), x)
                                / rat_pow(&p.c, big_n - y)
                                * rat_int(binomial(y, x))
                        } else {
                            Rational::zero()
                        }
                    }
                    PascalCase::Krawtchouk => {
                        let kp = Rational::one() - &p.b / &p.d;
                        rat_pow(&p.c, y) * orbit(x)? * krawtchouk(y, x, &kp, big_n)?
                    }
                    PascalCase::AffineQ => {
                        let ka = &p.b / &p.d * rat_pow(&p.t, -big_n);
                        rat_pow(&p.c, y) * orbit(x)? * affine_q_krawtchouk(y, x, &ka, big_n, &p.t)?
                    }
                };
                row.push(v);
            }
            table.push(row);
        }
        tables.push(table);
    }
    Ok(tables)
}

/// Solution of a Pascal system with its consistency checks.
#[derive(Clone, Debug)]
pub struct PascalSolution {
    pub case: PascalCase,
    pub tables: PascalTables<Rational>,
    pub report: Report,
}

/// Solve by the recursions and compare with the closed forms and with the
/// forward-only expansion.
pub fn bpr_fpr_solve(p: &PascalParams<Rational>, n: usize) -> Result<PascalSolution> {
    let case = pascal_case(p);
    let tables = backward_tables(p, n)?;
    let mut report = Report::new();
    report.check_result("forward rule on recursive tables", forward_rule_holds(p, &tables), String::new);
    let closed = closed_tables(p, n);
    report.check_result("recursion equals closed form", closed.map(|c| c == tables), || format!("{case:?}"));
    let expanded = forward_expansion(p, n);
    report.check_result("forward expansion equals recursion", expanded.map(|e| e == tables), String::new);
    Ok(PascalSolution { case, tables, report })
}

/// Families with a Pascal structure.
fn family_params(kind: SpaceKind) -> Result<(PascalParams<LaurentQ>, usize)> {
    let one = LaurentQ::one();
    let q = LaurentQ::q;
    let build = |d: LaurentQ, t: LaurentQ| PascalParams {
        a: one.clone(),
        b: one.clone(),
        c: one.clone(),
        d,
        t,
        sigma: one.clone(),
    };
    match kind {
        SpaceKind::VecWreath { n } => Ok((build(q(), one.clone()), n)),
        SpaceKind::MatRect { n, m } if n <= m => Ok((build(LaurentQ::q_pow((m - n) as i64), q()), n)),
        SpaceKind::Alt { n } if n % 2 == 0 => Ok((build(LaurentQ::q_pow(-1), LaurentQ::q_pow(2)), n / 2)),
        SpaceKind::Alt { n } => Ok((build(q(), LaurentQ::q_pow(2)), n / 2)),
        k => Err(Error::Unsupported(format!("{k} has no Pascal recursion"))),
    }
}

/// Canonical matrix with entries in `Z[q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub kind: SpaceKind,
    pub labels: Vec<OrbitLabel>,
    pub entries: Vec<Vec<PolyQ>>,
}

impl SymbolicMatrix {
    pub fn eval(&self, q: &BigInt) -> Vec<Vec<BigInt>> {
        self.entries.iter().map(|r| r.iter().map(|x| x.eval_int(q)).collect()).collect()
    }

    pub fn eval_rational(&self, q: &Rational) -> Vec<Vec<Rational>> {
        self.entries.iter().map(|r| r.iter().map(|x| x.eval(q)).collect()).collect()
    }

    /// Realise at a concrete field.
    pub fn to_canonical(&self, space: &Space, chr: &CharSpec) -> Result<CanonicalMatrix> {
        if space.kind() != self.kind {
            return Err(Error::LabelMismatch);
        }
        CanonicalMatrix::from_integers(space, chr, self.eval(&BigInt::from(space.q())))
    }
}

/// Canonical matrix of a vector, rectangular or alternating space from the
/// family recursions, symbolically in `q`. Fails if an entry is not a
/// polynomial.
pub fn recursion_phi(kind: SpaceKind) -> Result<SymbolicMatrix> {
    let (params, big_n) = family_params(kind)?;
    let tables = backward_tables(&params, big_n)?;
    let top = &tables[big_n];
    let entries = top
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_poly().ok_or_else(|| Error::Invariant(format!("entry {x} is not a polynomial"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymbolicMatrix { kind, labels: kind.labels(), entries })
}

/// Canonical matrix at a concrete (possibly non-prime-power) rational `q`
/// from the Krawtchouk closed forms.
pub fn closed_form_phi(kind: SpaceKind, q: &Rational) -> Result<Vec<Vec<Rational>>> {
    let labels = kind.labels();
    let mut out = Vec::new();
    for s in &labels {
        let mut row = Vec::new();
        for r in &labels {
            let (s, r) = (s.rank as i64, r.rank as i64);
            let v = match kind {
                SpaceKind::VecWreath { n } => {
                    let n = n as i64;
                    let one = Rational::one();
                    rat_pow(&(q - &one), r)
                        * rat_int(binomial(n, r))
                        * krawtchouk(s, r, &((q - &one) / q), n)?
                }
                SpaceKind::MatRect { n, m } => {
                    let (n, m) = (n as i64, m as i64);
                    let sign = if r % 2 == 1 { -Rational::one() } else { Rational::one() };
                    sign * rat_pow(q, r * (r - 1) / 2)
                        * q_pochhammer(&rat_pow(q, m), &q.recip(), r)?
                        * gauss_binom(n, r, q)?
                        * affine_q_krawtchouk(s, r, &rat_pow(q, -m), n, q)?
                }
                SpaceKind::Alt { n } => {
                    let big_n = (n / 2) as i64;
                    let (y, x) = (s / 2, r / 2);
                    let q2 = q * q;
                    let (start, ka) = if n % 2 == 0 {
                        (rat_pow(q, 2 * big_n - 1), rat_pow(q, -2 * big_n + 1))
                    } else {
                        (rat_pow(q, 2 * big_n + 1), rat_pow(q, -2 * big_n - 1))
                    };
                    let sign = if x % 2 == 1 { -Rational::one() } else { Rational::one() };
                    sign * rat_pow(q, x * (x - 1))
                        * q_pochhammer(&start, &q2.recip(), x)?
                        * gauss_binom(big_n, x, &q2)?
                        * affine_q_krawtchouk(y, x, &ka, big_n, &q2)?
                }
                _ => return Err(Error::NoClosedForm),
            };
            row.push(v);
        }
        out.push(row);
    }
    Ok(out)
}

/// Closed canonical matrix at the field of a space.
pub fn closed_form_canonical(space: &Space, chr: &CharSpec) -> Result<CanonicalMatrix> {
    let vals = closed_form_phi(space.kind(), &rat_int(space.q()))?;
    let ints = vals
        .iter()
        .map(|r| r.iter().map(crate::arith::rat_to_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CanonicalMatrix::from_integers(space, chr, ints)
}

/// Compare the hard-coded family coefficients with those read off the
/// pushforward matrix of the standard diagram at a concrete field.
pub fn coefficients_match_pushforward(space: &Space, chr: &CharSpec) -> Result<Report> {
    let (params, big_n) = family_params(space.kind())?;
    let mut rep = Report::new();
    if big_n == 0 {
        rep.skip("recursion coefficients from pushforward", "no diagram below size 0");
        return Ok(rep);
    }
    let d = Diagram::standard(space, chr)?;
    let e = d.pushforward_matrix()?;
    let q = rat_int(space.q());
    let ratio = Rational::from_integer(d.index_ratio());
    let ev = |x: &LaurentQ| x.eval(&q);
    let val = |x: &crate::arith::CycInt| x.to_int().map(Rational::from_integer);
    let bn = big_n as i64;
    let mut ok = true;
    let mut detail = String::new();
    for (g, row) in e.iter().enumerate() {
        for (x, ent) in row.iter().enumerate() {
            let want = if g == x {
                ev(&(params.a.clone() * params.t.powi(x as i64)?))
            } else if g + 1 == x {
                -ev(&(params.b.clone() * params.t.powi(x as i64 - 1)?))
            } else {
                Rational::zero()
            };
            if val(ent)? != want {
                ok = false;
                detail = format!("E({g},{x}) = {ent}, expected {want}");
            }
        }
    }
    rep.check("backward coefficients from pushforward", ok, || detail.clone());
    let mut ok = true;
    for y in 0..bn {
        let (ey, ey1) = (val(&e[y as usize][y as usize])?, val(&e[y as usize][y as usize + 1])?);
        let c = -(&ey / &ey1);
        let dt = -(&ratio / &ey1);
        ok &= c == ev(&params.c) && dt == ev(&(params.d.clone() * params.t.powi(2 * bn - y - 1)?));
    }
    rep.check("forward coefficients from pushforward", ok, String::new);
    Ok(rep)
}

/// Limits at `q = 1`: the matrix becomes `(-1)^x C(y, x)` in the family
/// indices, and that matrix is an involution.
pub fn q1_limit_check(kind: SpaceKind) -> Result<Report> {
    let sym = recursion_phi(kind)?;
    let at_one = sym.eval(&BigInt::one());
    let idx: Vec<i64> = sym
        .labels
        .iter()
        .map(|l| if matches!(kind, SpaceKind::Alt { .. }) { l.rank as i64 / 2 } else { l.rank as i64 })
        .collect();
    let mut rep = Report::new();
    let mut ok = true;
    for (i, y) in idx.iter().enumerate() {
        for (j, x) in idx.iter().enumerate() {
            let sign = if x % 2 == 1 { -1 } else { 1 };
            ok &= at_one[i][j] == binomial(*y, *x) * sign;
        }
    }
    rep.check(format!("{kind} limit at q=1 is signed Pascal matrix"), ok, || format!("{at_one:?}"));
    let n = idx.len();
    let square: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &at_one[i][k] * &at_one[k][j]).sum()).collect())
        .collect();
    let ident = (0..n).all(|i| (0..n).all(|j| square[i][j] == BigInt::from((i == j) as i64)));
    rep.check(format!("{kind} q=1 limit squares to identity"), ident, String::new);
    Ok(rep)
}

type TPoly = Vec<PolyQ>;

fn tpoly_pow(p: &TPoly, k: usize) -> TPoly {
    (0..k).fold(vec![PolyQ::one()], |acc, _| poly_mul(&acc, p))
}

/// Row generating functions of the vector family:
/// `sum_r Phi_n(s, r) t^r = (1 - t)^s (1 + (q-1) t)^(n-s)`, in `Z[q][t]`.
pub fn genfun_vec_holds(n: usize) -> Result<bool> {
    let sym = recursion_phi(SpaceKind::VecWreath { n })?;
    let one_minus_t = vec![PolyQ::one(), -PolyQ::one()];
    let other = vec![PolyQ::one(), PolyQ::q() - PolyQ::one()];
    Ok((0..=n).all(|s| {
        let rhs = poly_trim(poly_mul(&tpoly_pow(&one_minus_t, s), &tpoly_pow(&other, n - s)));
        poly_trim(sym.entries[s].clone()) == rhs
    }))
}

/// Row generating functions of the rectangular family in `Z[q][t]`:
/// `sum_r Phi(s, r) t^r = (t; q)_s sum_u (-1)^u q^(C(u,2)+su) (q^(m-s); q^-1)_u [n-s, u]_q t^u`.
pub fn genfun_mat_holds(n: usize, m: usize) -> Result<bool> {
    let sym = recursion_phi(SpaceKind::MatRect { n, m })?;
    for s in 0..=n {
        let mut tq = vec![PolyQ::one()];
        for j in 0..s {
            tq = poly_mul(&tq, &[PolyQ::one(), -PolyQ::q_pow(j)]);
        }
        let mut inner = Vec::new();
        for u in 0..=(n - s) as i64 {
            let mut c = q_pochhammer_poly((m - s) as i64, -1, u)? * gauss_binom_poly((n - s) as i64, u)?;
            c = c.shift((u * (u - 1) / 2 + s as i64 * u) as usize);
            inner.push(if u % 2 == 1 { -c } else { c });
        }
        if poly_trim(poly_mul(&tq, &inner)) != poly_trim(sym.entries[s].clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same identity for the rectangular family at one concrete `q`.
pub fn genfun_mat_concrete_holds(n: usize, m: usize, q: &Rational) -> Result<bool> {
    let phi = closed_form_phi(SpaceKind::MatRect { n, m }, q)?;
    for s in 0..=n {
        let mut tq = vec![Rational::one()];
        for j in 0..s {
            tq = poly_mul(&tq, &[Rational::one(), -rat_pow(q, j as i64)]);
        }
        let mut inner = Vec::new();
        for u in 0..=(n - s) as i64 {
            let sign = if u % 2 == 1 { -Rational::one() } else { Rational::one() };
            inner.push(
                sign * rat_pow(q, u * (u - 1) / 2 + s as i64 * u)
                    * q_pochhammer(&rat_pow(q, (m - s) as i64), &q.recip(), u)?
                    * gauss_binom((n - s) as i64, u, q)?,
            );
        }
        if poly_trim(poly_mul(&tq, &inner)) != poly_trim(phi[s].clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed right-hand side of the multi-orthogonality relation for the
/// vector and rectangular families. Requires `sum(tuple) <= target`.
pub fn multi_orthogonality_closed(kind: SpaceKind, q: u64, tuple: &[usize], target: usize) -> Result<BigInt> {
    let r: usize = tuple.iter().sum();
    if r > target {
        return Err(Error::InvalidParameter(format!("orbit ranks sum to {r} > {target}")));
    }
    if r < target {
        return Ok(BigInt::zero());
    }
    let qb = BigInt::from(q);
    match kind {
        SpaceKind::VecWreath { n } => {
            if r > n {
                return Ok(BigInt::zero());
            }
            let den: BigInt = tuple.iter().map(|&ri| factorial(ri as u64)).product();
            Ok(factorial(n as u64) / factorial((n - r) as u64) / den
                * (&qb - BigInt::one()).pow(r as u32)
                * qb.pow(n as u32))
        }
        SpaceKind::MatRect { n, m } => {
            let qr = rat_int(q);
            let (ri, ni, mi) = (r as i64, n as i64, m as i64);
            let cross: i64 = (0..tuple.len())
                .flat_map(|i| (i + 1..tuple.len()).map(move |j| (i, j)))
                .map(|(i, j)| (tuple[i] * tuple[j]) as i64)
                .sum();
            let sign = if r % 2 == 1 { -Rational::one() } else { Rational::one() };
            let mut v = sign
                * rat_pow(&qr, ni * mi + ri * (ri - 1) / 2 + cross)
                * q_pochhammer(&rat_pow(&qr, mi), &qr.recip(), ri)?
                * q_pochhammer(&rat_pow(&qr, ni), &qr.recip(), ri)?;
            for &t in tuple {
                v /= q_pochhammer(&qr, &qr, t as i64)?;
            }
            crate::arith::rat_to_int(&v)
        }
        k => Err(Error::Unsupported(format!("no closed multi-orthogonality count for {k}"))),
    }
}

/// Rank-addition count on rectangular matrices: for `rank a = l`,
/// `#{b : rank b = k, rank(a + b) = l + k} = q^(2kl) |O_{n-l, m-l}(k)|`,
/// checked for every `a` of rank `l`.
pub fn counting_lemma_check(space: &Space, budget: &Budget) -> Result<Report> {
    let SpaceKind::MatRect { n, m } = space.kind() else {
        return Err(Error::Unsupported("counting lemma is for rectangular matrices".into()));
    };
    let f = space.field();
    let all: Vec<_> = space.enumerate(budget)?.collect();
    budget.check((all.len() as u128).pow(2))?;
    let mut scratch = Vec::new();
    let ranks: Vec<usize> = all.iter().map(|a| space.classify_with(a, &mut scratch).rank).collect();
    let q = BigInt::from(space.q());
    let mut rep = Report::new();
    for l in 0..=n {
        for k in 0..=n - l {
            let closed = q.pow((2 * k * l) as u32)
                * mat_orbit_size_poly((n - l) as i64, (m - l) as i64, k as i64)?.eval_int(&q);
            let mut ok = true;
            for (ai, a) in all.iter().enumerate() {
                if ranks[ai] != l {
                    continue;
                }
                let count = all
                    .iter()
                    .zip(&ranks)
                    .filter(|(b, &rb)| rb == k && crate::spaces::rank(f, &a.add(b, f)) == l + k)
                    .count();
                ok &= BigInt::from(count) == closed;
            }
            rep.check(format!("{} l={l} k={k} rank-additive count", space.kind()), ok, String::new);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn vector_family_small() {
        let sym = recursion_phi(SpaceKind::VecWreath { n: 1 }).unwrap();
        assert_eq!(sym.entries[0][1], PolyQ::from_i64s(&[-1, 1]));
        assert_eq!(sym.entries[1][1], PolyQ::constant(-1));
    }

    #[test]
    fn rectangular_first_row_is_orbit_sizes() {
        let sym = recursion_phi(SpaceKind::MatRect { n: 1, m: 2 }).unwrap();
        assert_eq!(sym.entries[0][1], PolyQ::from_i64s(&[-1, 0, 1]));
        assert_eq!(sym.entries[1][1], PolyQ::constant(-1));
    }

    #[test]
    fn closed_equals_recursion_at_rational_q() {
        for kind in [
            SpaceKind::VecWreath { n: 4 },
            SpaceKind::MatRect { n: 2, m: 3 },
            SpaceKind::MatRect { n: 3, m: 3 },
            SpaceKind::Alt { n: 4 },
            SpaceKind::Alt { n: 5 },
        ] {
            let sym = recursion_phi(kind).unwrap();
            for q in [rat(7, 2), rat(-2, 3), rat_int(3)] {
                assert_eq!(sym.eval_rational(&q), closed_form_phi(kind, &q).unwrap(), "{kind} at {q}");
            }
        }
    }

    #[test]
    fn degenerate_case_solution() {
        let p = PascalParams {
            a: rat(2, 1),
            b: rat(3, 1),
            c: rat(5, 1),
            d: rat(3, 1),
            t: Rational::one(),
            sigma: rat(1, 2),
        };
        let sol = bpr_fpr_solve(&p, 4).unwrap();
        assert_eq!(sol.case, PascalCase::Degenerate);
        assert!(sol.report.all_passed(), "{}", sol.report);
    }

    #[test]
    fn q_one_limits() {
        for kind in [SpaceKind::VecWreath { n: 3 }, SpaceKind::MatRect { n: 2, m: 3 }, SpaceKind::Alt { n: 5 }] {
            assert!(q1_limit_check(kind).unwrap().all_passed());
        }
    }
}
