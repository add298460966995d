//! Symmetric matrices: the canonical matrix on the rank/sign basis.
//!
//! On `Sym_n` the orbit functions `chi_r` (rank `r`) and `sgn chi_r`
//! (rank `r`, weighted by the discriminant sign) form a basis. The matrix of
//! the transform on these bases splits into four blocks `Psi1..Psi4`:
//! `F(chi_r) = sum_s Psi1(s,r) chi_s + Psi3(s,r) sgn chi_s` and
//! `F(sgn chi_r) = sum_s Psi2(s,r) chi_s + Psi4(s,r) sgn chi_s`.
//! The same change of basis applies to pushforward and pullback matrices
//! and to the scaled action, whose odd ranks carry no sign.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{rat_int, rat_pow, rat_to_int, CycInt, QuadraticGamma, Rational};
use crate::error::{Error, Result};
use crate::field::{CharSpec, Field};
use crate::qspecial::{affine_q_krawtchouk, gauss_binom_or_zero, q_pochhammer};
use crate::report::Report;
use crate::spaces::{Budget, OrbitLabel, Sign, Space, SpaceKind};
use crate::transform::{brute_force_phi, brute_force_phi_bar, diagram_check, CanonicalMatrix, Diagram};

/// A matrix written on rank/sign bases: `b[0]` is chi-rows by chi-columns,
/// `b[1]` chi-rows by sign-columns, `b[2]` sign-rows by chi-columns and
/// `b[3]` sign-rows by sign-columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignBlocks<T> {
    pub row_ranks: Vec<usize>,
    pub row_signed: Vec<usize>,
    pub col_ranks: Vec<usize>,
    pub col_signed: Vec<usize>,
    pub b: [Vec<Vec<T>>; 4],
}

impl<T> SignBlocks<T> {
    fn axes(&self, block: usize) -> (&[usize], &[usize]) {
        let rows = if block < 2 { &self.row_ranks } else { &self.row_signed };
        let cols = if block.is_multiple_of(2) { &self.col_ranks } else { &self.col_signed };
        (rows, cols)
    }

    /// Entry of block `1..=4` at ranks `(s, r)`, if that cell exists.
    pub fn get(&self, block: usize, s: i64, r: i64) -> Option<&T> {
        let (rows, cols) = self.axes(block - 1);
        let i = rows.iter().position(|&x| x as i64 == s)?;
        let j = cols.iter().position(|&x| x as i64 == r)?;
        Some(&self.b[block - 1][i][j])
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<SignBlocks<U>> {
        let mut map = |m: &Vec<Vec<T>>| -> Result<Vec<Vec<U>>> {
            m.iter().map(|r| r.iter().map(&mut f).collect()).collect()
        };
        Ok(SignBlocks {
            row_ranks: self.row_ranks.clone(),
            row_signed: self.row_signed.clone(),
            col_ranks: self.col_ranks.clone(),
            col_signed: self.col_signed.clone(),
            b: [map(&self.b[0])?, map(&self.b[1])?, map(&self.b[2])?, map(&self.b[3])?],
        })
    }

    /// Keep only the given row and column ranks in the sign parts.
    pub fn restrict_signed(&self, keep_row: impl Fn(usize) -> bool, keep_col: impl Fn(usize) -> bool) -> Self
    where
        T: Clone,
    {
        let ri: Vec<usize> = (0..self.row_signed.len()).filter(|&i| keep_row(self.row_signed[i])).collect();
        let ci: Vec<usize> = (0..self.col_signed.len()).filter(|&j| keep_col(self.col_signed[j])).collect();
        let all_r: Vec<usize> = (0..self.row_ranks.len()).collect();
        let all_c: Vec<usize> = (0..self.col_ranks.len()).collect();
        let pick = |m: &Vec<Vec<T>>, rs: &[usize], cs: &[usize]| -> Vec<Vec<T>> {
            rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect()
        };
        SignBlocks {
            row_ranks: self.row_ranks.clone(),
            row_signed: ri.iter().map(|&i| self.row_signed[i]).collect(),
            col_ranks: self.col_ranks.clone(),
            col_signed: ci.iter().map(|&j| self.col_signed[j]).collect(),
            b: [
                pick(&self.b[0], &all_r, &all_c),
                pick(&self.b[1], &all_r, &ci),
                pick(&self.b[2], &ri, &all_c),
                pick(&self.b[3], &ri, &ci),
            ],
        }
    }
}

impl<T: fmt::Display> fmt::Display for SignBlocks<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.b.iter().enumerate() {
            let (rows, cols) = self.axes(k);
            writeln!(f, "block {} (rows {rows:?}, cols {cols:?})", k + 1)?;
            for row in m {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

/// All ranks, and the ranks carrying a sign, in a label list.
fn rank_axes(labels: &[OrbitLabel]) -> (Vec<usize>, Vec<usize>) {
    let mut ranks: Vec<usize> = labels.iter().map(|l| l.rank).collect();
    ranks.dedup();
    let mut signed: Vec<usize> = labels.iter().filter(|l| l.sign.is_some()).map(|l| l.rank).collect();
    signed.dedup();
    (ranks, signed)
}

fn half(x: CycInt) -> Result<CycInt> {
    x.div_int_exact(&BigInt::from(2)).map_err(|_| Error::Invariant("sign-basis entry is not integral".into()))
}

/// Rewrite a matrix on canonical label bases (`m[row][col]`) on rank/sign
/// bases: columns `chi_r = sum chi_(r^+-)`, `sgn chi_r = chi_(r^+) - chi_(r^-)`,
/// rows by the dual rule `chi_(s^+-) = (chi_s +- sgn chi_s) / 2`.
pub fn to_sign_basis(rows: &[OrbitLabel], cols: &[OrbitLabel], m: &[Vec<CycInt>]) -> Result<SignBlocks<CycInt>> {
    if m.len() != rows.len() || m.iter().any(|r| r.len() != cols.len()) {
        return Err(Error::ShapeMismatch);
    }
    let p = m.first().and_then(|r| r.first()).map(|x| x.order()).unwrap_or(2);
    let (row_ranks, row_signed) = rank_axes(rows);
    let (col_ranks, col_signed) = rank_axes(cols);
    let find = |ls: &[OrbitLabel], rank: usize, sign: Option<Sign>| ls.iter().position(|l| l.rank == rank && l.sign == sign);
    let cell = |i: usize, r: usize, sgn: bool| -> CycInt {
        match (find(cols, r, None), sgn) {
            (Some(j), false) => m[i][j].clone(),
            (Some(_), true) => CycInt::zero(p),
            (None, _) => {
                let (jp, jm) = (find(cols, r, Some(Sign::Plus)).unwrap(), find(cols, r, Some(Sign::Minus)).unwrap());
                if sgn {
                    &m[i][jp] - &m[i][jm]
                } else {
                    &m[i][jp] + &m[i][jm]
                }
            }
        }
    };
    let row = |s: usize, sgn_row: bool, r: usize, sgn_col: bool| -> Result<CycInt> {
        match find(rows, s, None) {
            Some(i) => Ok(cell(i, r, sgn_col)),
            None => {
                let (ip, im) = (find(rows, s, Some(Sign::Plus)).unwrap(), find(rows, s, Some(Sign::Minus)).unwrap());
                let (a, b) = (cell(ip, r, sgn_col), cell(im, r, sgn_col));
                half(if sgn_row { a - b } else { a + b })
            }
        }
    };
    let block = |rs: &[usize], sr: bool, cs: &[usize], sc: bool| -> Result<Vec<Vec<CycInt>>> {
        rs.iter().map(|&s| cs.iter().map(|&r| row(s, sr, r, sc)).collect()).collect()
    };
    Ok(SignBlocks {
        b: [
            block(&row_ranks, false, &col_ranks, false)?,
            block(&row_ranks, false, &col_signed, true)?,
            block(&row_signed, true, &col_ranks, false)?,
            block(&row_signed, true, &col_signed, true)?,
        ],
        row_ranks,
        row_signed,
        col_ranks,
        col_signed,
    })
}

/// Inverse of [`to_sign_basis`]:
/// `M(s^a, r^b) = (B1 + b B2 + a B3 + a b B4)(s, r) / 2`, with the unsigned
/// cases `M(s, r^b) = (B1 + b B2) / 2` and `M(s^a, r) = B1 + a B3`.
pub fn from_sign_basis(rows: &[OrbitLabel], cols: &[OrbitLabel], blocks: &SignBlocks<CycInt>) -> Result<Vec<Vec<CycInt>>> {
    let get = |k: usize, s: usize, r: usize| -> Result<CycInt> {
        blocks.get(k, s as i64, r as i64).cloned().ok_or(Error::LabelMismatch)
    };
    let sg = |x: CycInt, s: Option<Sign>| if s == Some(Sign::Minus) { -x } else { x };
    rows.iter()
        .map(|mu| {
            cols.iter()
                .map(|la| {
                    let (s, r) = (mu.rank, la.rank);
                    let mut v = get(1, s, r)?;
                    if mu.sign.is_some() {
                        v = v + sg(get(3, s, r)?, mu.sign);
                    }
                    if la.sign.is_none() {
                        return Ok(v);
                    }
                    let mut w = get(2, s, r)?;
                    if mu.sign.is_some() {
                        w = w + sg(get(4, s, r)?, mu.sign);
                    }
                    half(v + sg(w, la.sign))
                })
                .collect()
        })
        .collect()
}

/// The blocks `Psi1..Psi4` of a symmetric space of size `n` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiBlocks<T> {
    pub n: usize,
    pub q: u64,
    pub blocks: SignBlocks<T>,
}

impl<T> PsiBlocks<T> {
    pub fn get(&self, block: usize, s: i64, r: i64) -> Option<&T> {
        self.blocks.get(block, s, r)
    }
}

impl PsiBlocks<CycInt> {
    /// Split every entry as `a + b gamma`; fails when `gamma` is rational.
    pub fn to_quadratic(&self, gamma: &CycInt) -> Result<PsiBlocks<QuadraticGamma>> {
        let q = self.q;
        let blocks = self.blocks.try_map(|x| match x.to_int() {
            Ok(a) => Ok(QuadraticGamma::int(a, q)),
            Err(_) => x.to_quadratic(gamma, q),
        })?;
        Ok(PsiBlocks { n: self.n, q, blocks })
    }

    pub fn conj(&self) -> Self {
        PsiBlocks { n: self.n, q: self.q, blocks: self.blocks.try_map(|x| Ok(x.conj())).unwrap() }
    }
}

impl PsiBlocks<QuadraticGamma> {
    pub fn to_cyc(&self, gamma: &CycInt) -> PsiBlocks<CycInt> {
        PsiBlocks { n: self.n, q: self.q, blocks: self.blocks.try_map(|x| Ok(x.to_cyc(gamma))).unwrap() }
    }
}

fn sym_space(field: &std::sync::Arc<Field>, n: usize) -> Result<Space> {
    Space::new(SpaceKind::SymGL { n }, field)
}

/// `Psi` from the brute-force canonical matrix of `Sym_n`.
pub fn psi_brute(field: &std::sync::Arc<Field>, chr: &CharSpec, n: usize, budget: &Budget) -> Result<PsiBlocks<CycInt>> {
    let space = sym_space(field, n)?;
    let phi = brute_force_phi(&space, chr, budget)?;
    psi_from_phi(&phi)
}

pub fn psi_from_phi(phi: &CanonicalMatrix) -> Result<PsiBlocks<CycInt>> {
    let SpaceKind::SymGL { n } = phi.space.kind() else {
        return Err(Error::Unsupported("sign blocks need a symmetric space under congruence".into()));
    };
    let blocks = to_sign_basis(&phi.labels, &phi.labels, &phi.entries)?;
    Ok(PsiBlocks { n, q: phi.space.q(), blocks })
}

/// Sign-labelled canonical matrix from the blocks.
pub fn phi_from_psi(psi: &PsiBlocks<CycInt>, space: &Space, chr: &CharSpec) -> Result<CanonicalMatrix> {
    if space.kind() != (SpaceKind::SymGL { n: psi.n }) {
        return Err(Error::LabelMismatch);
    }
    let labels = space.labels();
    let entries = from_sign_basis(&labels, &labels, &psi.blocks)?;
    Ok(CanonicalMatrix { space: space.clone(), chr: chr.clone(), labels, entries })
}

/// Closed forms for the blocks in `Z[q] + Z[q] gamma`.
pub fn psi_closed(n: usize, q: u64) -> Result<PsiBlocks<QuadraticGamma>> {
    if q.is_multiple_of(2) {
        return Err(Error::OddCharacteristicRequired);
    }
    let qr = rat_int(q);
    let q2 = &qr * &qr;
    let eps = crate::arith::epsilon_of(q);
    let ni = n as i64;
    let sgn_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let neg1 = |k: i64| if k.rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
    let epow = |k: i64| if eps == -1 { neg1(k) } else { Rational::one() };
    let qp = |k: i64| rat_pow(&qr, k);
    // (q^start; q^-2)_x [N, x]_{q^2} K^Aff_y(x; q^kexp, N; q^2), zero past the top.
    let core = |start: i64, kexp: i64, big_n: i64, y: i64, x: i64| -> Result<Rational> {
        if x > big_n || y > big_n || big_n < 0 {
            return Ok(Rational::zero());
        }
        Ok(q_pochhammer(&qp(start), &q2.recip(), x)?
            * gauss_binom_or_zero(big_n, x, &q2)?
            * affine_q_krawtchouk(y, x, &qp(kexp), big_n, &q2)?)
    };
    let int = |v: Rational| -> Result<BigInt> { rat_to_int(&v) };

    let ranks: Vec<usize> = (0..=n).collect();
    let signed: Vec<usize> = (1..=n).collect();
    let mut b1 = vec![vec![QuadraticGamma::zero(q); n + 1]; n + 1];
    for s in 0..=ni {
        for r in 0..=ni {
            let v = if s == 0 {
                let x = r / 2;
                let den = q_pochhammer(&q2, &q2, x)?;
                if r % 2 == 0 {
                    neg1(x) * qp(x * (x + 1)) * q_pochhammer(&qp(ni), &qr.recip(), 2 * x)? / den
                } else {
                    neg1(x + 1) * qp(x * (x + 1)) * q_pochhammer(&qp(ni), &qr.recip(), 2 * x + 1)? / den
                }
            } else {
                let (big_n, y, x) = ((ni - 1).div_euclid(2), (s - 1) / 2, r / 2);
                neg1(r + x) * qp(x * (x + 1)) * core(2 * big_n + sgn_n, -2 * big_n - sgn_n, big_n, y, x)?
            };
            b1[s as usize][r as usize] = QuadraticGamma::int(int(v)?, q);
        }
    }
    let mut b2 = vec![vec![QuadraticGamma::zero(q); n]; n + 1];
    for s in 0..=ni {
        for r in (2..=ni).step_by(2) {
            let (big_n, y, x) = (ni / 2, s / 2, r / 2);
            let v = neg1(x) * epow(x) * qp(x * x)
                * core(2 * big_n - sgn_n, -2 * big_n + sgn_n, big_n, y, x)?;
            b2[s as usize][r as usize - 1] = QuadraticGamma::int(int(v)?, q);
        }
    }
    let mut b3 = vec![vec![QuadraticGamma::zero(q); n + 1]; n];
    for s in (2..=ni).step_by(2) {
        for r in 1..=ni {
            let (big_n, y, x) = ((ni - 2).div_euclid(2), (s - 2) / 2, (r - 1) / 2);
            let v = neg1(r + x + 1) * epow(y + 1) * qp(ni + x * x + x - y - 1)
                * core(2 * big_n - sgn_n, -2 * big_n + sgn_n, big_n, y, x)?;
            b3[s as usize - 1][r as usize] = QuadraticGamma::int(int(v)?, q);
        }
    }
    let mut b4 = vec![vec![QuadraticGamma::zero(q); n]; n];
    for s in (1..=ni).step_by(2) {
        for r in (1..=ni).step_by(2) {
            let (big_n, y, x) = ((ni - 1).div_euclid(2), (s - 1) / 2, (r - 1) / 2);
            let v = neg1(x) * epow(x + y) * qp(ni + x * x - y - 1)
                * core(2 * big_n + sgn_n, -2 * big_n - sgn_n, big_n, y, x)?;
            b4[s as usize - 1][r as usize - 1] = QuadraticGamma::new(0, int(v)?, q);
        }
    }
    Ok(PsiBlocks {
        n,
        q,
        blocks: SignBlocks {
            row_ranks: ranks.clone(),
            row_signed: signed.clone(),
            col_ranks: ranks,
            col_signed: signed,
            b: [b1, b2, b3, b4],
        },
    })
}

/// Blocks of the scaled action: sign rows and columns of odd rank removed.
pub fn scaled_restriction<T: Clone>(psi: &PsiBlocks<T>) -> SignBlocks<T> {
    psi.blocks.restrict_signed(|s| s % 2 == 0, |r| r % 2 == 0)
}

/// Brute-force scaled-action matrix on the rank/sign bases.
pub fn scaled_brute(field: &std::sync::Arc<Field>, chr: &CharSpec, n: usize, budget: &Budget) -> Result<SignBlocks<CycInt>> {
    let space = Space::new(SpaceKind::SymScaledGL { n }, field)?;
    let phi = brute_force_phi(&space, chr, budget)?;
    to_sign_basis(&phi.labels, &phi.labels, &phi.entries)
}

/// Exact arithmetic context for relation checks.
struct Ctx {
    p: u32,
    q: BigInt,
    eps: i64,
    gamma: CycInt,
}

impl Ctx {
    fn int(&self, n: impl Into<BigInt>) -> CycInt {
        CycInt::from_int(self.p, n)
    }
    fn qp(&self, k: i64) -> CycInt {
        assert!(k >= 0, "negative power of q in a polynomial relation");
        self.int(self.q.pow(k as u32))
    }
    fn g(&self, k: i64) -> CycInt {
        self.gamma.pow(k as u32)
    }
    fn gb(&self, k: i64) -> CycInt {
        self.gamma.conj().pow(k as u32)
    }
    fn eps(&self, x: CycInt) -> CycInt {
        if self.eps == 1 {
            x
        } else {
            -x
        }
    }
}

/// Collects the first failing coordinate of an identity.
#[derive(Default)]
struct Tally {
    ok: bool,
    count: usize,
    detail: String,
}

impl Tally {
    fn new() -> Self {
        Tally { ok: true, count: 0, detail: String::new() }
    }
    fn eq(&mut self, lhs: CycInt, rhs: CycInt, at: impl FnOnce() -> String) {
        self.count += 1;
        if self.ok && lhs != rhs {
            self.ok = false;
            self.detail = format!("{}: {lhs} != {rhs}", at());
        }
    }
    fn zero(&mut self, v: Option<&CycInt>, at: impl FnOnce() -> String) {
        if let Some(v) = v {
            self.eq(v.clone(), CycInt::zero(v.order()), at);
        }
    }
    fn record(self, rep: &mut Report, name: impl Into<String>) {
        let name = name.into();
        if self.count == 0 {
            rep.skip(name, "no admissible indices");
        } else {
            let d = self.detail;
            rep.check(name, self.ok, || d);
        }
    }
}

/// Value of a block, zero outside its range.
fn at(psi: &PsiBlocks<CycInt>, p: u32, k: usize, s: i64, r: i64) -> CycInt {
    psi.get(k, s, r).cloned().unwrap_or_else(|| CycInt::zero(p))
}

/// Identities internal to one size: structural zeros, the first column,
/// neighbour equalities, sign symmetries and invariance of odd sign
/// functions.
pub fn single_size_checks(psi: &PsiBlocks<CycInt>, phi: &CanonicalMatrix) -> Result<Report> {
    let n = psi.n as i64;
    let p = phi.order();
    let a = |k, s, r| at(psi, p, k, s, r);
    let mut rep = Report::new();

    let mut t = Tally::new();
    for s in 0..=n {
        t.eq(a(1, s, 0), CycInt::one(p), || format!("chi block ({s},0)"));
        if s >= 1 {
            t.eq(a(3, s, 0), CycInt::zero(p), || format!("sign-row block ({s},0)"));
        }
    }
    t.record(&mut rep, "column of the constant function");

    let mut t = Tally::new();
    for s in 0..=n {
        for r in (1..=n).step_by(2) {
            t.zero(psi.get(2, s, r), || format!("({s},{r})"));
        }
    }
    t.record(&mut rep, "sign-column block vanishes at odd columns");
    let mut t = Tally::new();
    for s in (1..=n).step_by(2) {
        for r in 0..=n {
            t.zero(psi.get(3, s, r), || format!("({s},{r})"));
        }
    }
    t.record(&mut rep, "sign-row block vanishes at odd rows");
    let mut t = Tally::new();
    for s in 1..=n {
        for r in 1..=n {
            if s % 2 == 0 || r % 2 == 0 {
                t.zero(psi.get(4, s, r), || format!("({s},{r})"));
            }
        }
    }
    t.record(&mut rep, "sign-sign block vanishes unless both ranks are odd");

    let gamma_free = psi.blocks.b[..3].iter().flatten().flatten().all(|x| x.to_int().is_ok());
    rep.check("only the sign-sign block involves non-integers", gamma_free, String::new);

    let mut t = Tally::new();
    for s in (1..n).step_by(2) {
        for r in 0..=n {
            t.eq(a(1, s, r), a(1, s + 1, r), || format!("({s},{r})"));
        }
    }
    t.record(&mut rep, "chi block: odd row equals the next row");
    let mut t = Tally::new();
    for s in 1..=n {
        for r in (0..=n).step_by(2) {
            t.eq(a(1, s, r), -a(1, s, r + 1), || format!("({s},{r})"));
        }
    }
    t.record(&mut rep, "chi block: even column is minus the next column");
    let mut t = Tally::new();
    for s in (0..n).step_by(2) {
        for r in 1..=n {
            t.eq(a(2, s, r), a(2, s + 1, r), || format!("({s},{r})"));
        }
    }
    t.record(&mut rep, "sign-column block: even row equals the next row");
    let mut t = Tally::new();
    for s in 1..=n {
        for r in (1..=n).step_by(2) {
            t.eq(a(3, s, r), -a(3, s, r + 1), || format!("({s},{r})"));
        }
    }
    t.record(&mut rep, "sign-row block: odd column is minus the next column");

    // Sign symmetries on the canonical matrix.
    let get = |s: usize, ss: Option<Sign>, r: usize, rs: Option<Sign>| -> Result<CycInt> {
        let mu = OrbitLabel { rank: s, sign: ss };
        let la = OrbitLabel { rank: r, sign: rs };
        phi.get(&mu, &la).cloned()
    };
    let (pl, mi) = (Some(Sign::Plus), Some(Sign::Minus));
    let nu = n as usize;
    let mut sym = [Tally::new(), Tally::new(), Tally::new(), Tally::new()];
    for s in 1..=nu {
        for r in 1..=nu {
            for (b, nb) in [(pl, mi), (mi, pl)] {
                let at = || format!("({s},{r})");
                match (s % 2, r % 2) {
                    (1, 1) => sym[0].eq(get(s, pl, r, b)?, get(s, mi, r, nb)?, at),
                    (1, 0) => sym[1].eq(get(s, pl, r, b)?, get(s, mi, r, b)?, at),
                    (0, 1) => {
                        let (sa, _) = (b, nb);
                        sym[2].eq(get(s, sa, r, pl)?, get(s, sa, r, mi)?, at)
                    }
                    _ => {}
                }
            }
        }
    }
    for r in (1..=nu).step_by(2) {
        sym[3].eq(get(0, None, r, pl)?, get(0, None, r, mi)?, || format!("(0,{r})"));
    }
    let names = [
        "odd row, odd column: flipping both signs",
        "odd row, even column: row sign is irrelevant",
        "even row, odd column: column sign is irrelevant",
        "zero row, odd column: column sign is irrelevant",
    ];
    for (t, name) in sym.into_iter().zip(names) {
        t.record(&mut rep, format!("sign symmetry, {name}"));
    }

    let mut t = Tally::new();
    for r in (1..=n).step_by(2) {
        for s in 0..=n {
            t.zero(psi.get(2, s, r), || format!("chi row {s}, column {r}"));
            if s % 2 == 0 {
                t.zero(psi.get(4, s, r), || format!("sign row {s}, column {r}"));
            }
        }
    }
    t.record(&mut rep, "odd sign functions transform into odd sign functions");
    Ok(rep)
}

/// Relations between sizes `n` and `n - 1` from the corner diagram.
pub fn one_step_relations(upper: &PsiBlocks<CycInt>, lower: &PsiBlocks<CycInt>, gamma: &CycInt) -> Report {
    let n = upper.n as i64;
    let p = gamma.order();
    let c = Ctx { p, q: BigInt::from(upper.q), eps: crate::arith::epsilon_of(upper.q), gamma: gamma.clone() };
    let a = |k, s, r| at(upper, p, k, s, r);
    let b = |k, s, r| at(lower, p, k, s, r);
    // Lower blocks with the conventions used by the relations.
    let b2e = |v, r| if r == 0 { c.int(1) } else { b(2, v, r) };
    let b3e = |u, s| if u == 0 { b(1, 0, s) } else { b(3, u, s) };
    let mut rep = Report::new();
    let qn = c.qp(n);

    let mut t = [Tally::new(), Tally::new(), Tally::new(), Tally::new(), Tally::new()];
    for r in 1..=n {
        for v in 0..n {
            t[0].eq(a(1, v + 1, r), c.g(r) * b2e(v, r) - c.g(r - 1) * b2e(v, r - 1), || format!("v={v} r={r}"));
        }
        for v in 1..n {
            t[1].eq(a(3, v + 1, r), c.g(r) * b(4, v, r) - c.g(r - 1) * b(4, v, r - 1), || format!("v={v} r={r}"));
        }
        t[2].eq(a(2, 1, r) + a(4, 1, r), c.g(r) * (b(1, 0, r) + b(1, 0, r - 1)), || format!("r={r}"));
        for v in 1..n {
            t[3].eq(a(2, v + 1, r), c.g(r) * (b(1, v, r) + b(1, v, r - 1)), || format!("v={v} r={r}"));
            t[4].eq(a(4, v + 1, r), c.g(r) * (b(3, v, r) + b(3, v, r - 1)), || format!("v={v} r={r}"));
        }
    }
    let names = [
        "corner forward relation, rank function onto rank rows",
        "corner forward relation, rank function onto sign rows",
        "corner forward relation, sign function at row 1",
        "corner forward relation, sign function onto rank rows",
        "corner forward relation, sign function onto sign rows",
    ];
    for (t, name) in t.into_iter().zip(names) {
        t.record(&mut rep, name);
    }

    let mut t = [Tally::new(), Tally::new(), Tally::new(), Tally::new(), Tally::new()];
    for s in 1..=n {
        for u in 1..n {
            t[0].eq(c.gb(u + 1) * a(3, u + 1, s) + c.gb(u) * a(3, u, s), &qn * &b(1, u, s - 1), || format!("u={u} s={s}"));
        }
        for u in 0..n {
            t[1].eq(c.gb(u) * (a(1, u + 1, s) - a(1, u, s)), -(&qn * &b3e(u, s - 1)), || format!("u={u} s={s}"));
        }
        t[2].eq(a(2, 1, s) - a(2, 0, s) - c.gb(1) * a(4, 1, s), -(&qn * &b2e(0, s - 1)), || format!("s={s}"));
        for u in 1..n {
            t[3].eq(c.gb(u + 1) * a(4, u + 1, s) + c.gb(u) * a(4, u, s), &qn * &b2e(u, s - 1), || format!("u={u} s={s}"));
            t[4].eq(c.gb(u) * (a(2, u + 1, s) - a(2, u, s)), -(&qn * &b(4, u, s - 1)), || format!("u={u} s={s}"));
        }
    }
    let names = [
        "corner inverse relation, rank function onto sign rows",
        "corner inverse relation, rank function onto rank rows",
        "corner inverse relation, sign function at row 1",
        "corner inverse relation, sign function onto sign rows",
        "corner inverse relation, sign function onto rank rows",
    ];
    for (t, name) in t.into_iter().zip(names) {
        t.record(&mut rep, name);
    }
    rep
}

/// Relations between sizes `n` and `n - 2` from the hyperbolic-plane diagram.
pub fn two_step_relations(upper: &PsiBlocks<CycInt>, lower: &PsiBlocks<CycInt>, gamma: &CycInt) -> Report {
    let n = upper.n as i64;
    let p = gamma.order();
    let c = Ctx { p, q: BigInt::from(upper.q), eps: crate::arith::epsilon_of(upper.q), gamma: gamma.clone() };
    let a = |k, s, r| at(upper, p, k, s, r);
    let low = |k: usize, s: i64, r: i64| lower.get(k, s, r).cloned();
    // `coef(e) * value`, dropped when the value lies outside the block.
    let term = |e: i64, v: Option<CycInt>| v.map(|v| c.qp(e) * v).unwrap_or_else(|| c.int(0));
    let qm1 = c.qp(1) - c.int(1);
    let fwd = |k: usize, v: i64, r: i64| {
        -term(r - 1, low(k, v, r - 2)) + &qm1 * &term(r - 1, low(k, v, r - 1)) + term(r, low(k, v, r))
    };
    let l2e = |v: i64, r: i64| if r == 0 { Some(c.int(1)) } else { low(2, v, r) };
    let q2n = c.qp(2 * n - 1);
    let mut rep = Report::new();

    let mut t = [Tally::new(), Tally::new(), Tally::new(), Tally::new()];
    for r in 0..=n {
        t[0].eq(a(1, 2, r) + c.eps(a(3, 2, r)), fwd(1, 0, r), || format!("r={r}"));
        for v in 1..=n - 2 {
            t[1].eq(a(1, v + 2, r), fwd(1, v, r), || format!("v={v} r={r}"));
        }
        for v in (2..=n - 2).step_by(2) {
            t[2].eq(c.eps(a(3, v + 2, r)), fwd(3, v, r), || format!("v={v} r={r}"));
        }
    }
    for r in (2..=n).step_by(2) {
        for v in 0..=n - 2 {
            let rhs = -c.eps(term(r - 1, l2e(v, r - 2))) + term(r, low(2, v, r));
            t[3].eq(a(2, v + 2, r), rhs, || format!("v={v} r={r}"));
        }
    }
    let names = [
        "hyperbolic forward relation at row 2",
        "hyperbolic forward relation onto rank rows",
        "hyperbolic forward relation onto sign rows",
        "hyperbolic forward relation for sign functions",
    ];
    for (t, name) in t.into_iter().zip(names) {
        t.record(&mut rep, name);
    }

    let mut t = [Tally::new(), Tally::new(), Tally::new(), Tally::new()];
    for s in 0..=n {
        let lhs = a(1, 0, s) - a(1, 2, s) - c.eps(c.qp(1) * a(3, 2, s));
        t[0].eq(lhs, &q2n * &low(1, 0, s - 2).unwrap_or_else(|| c.int(0)), || format!("s={s}"));
        for u in 1..=n - 2 {
            let lhs = c.qp(u) * a(1, u, s) + c.qp(u) * &qm1 * a(1, u + 1, s) - c.qp(u + 1) * a(1, u + 2, s);
            t[1].eq(lhs, &q2n * &low(1, u, s - 2).unwrap_or_else(|| c.int(0)), || format!("u={u} s={s}"));
        }
        for u in (2..=n - 2).step_by(2) {
            let lhs = c.qp(u) * a(3, u, s) - c.eps(c.qp(u + 1) * a(3, u + 2, s));
            t[2].eq(lhs, &q2n * &low(3, u, s - 2).unwrap_or_else(|| c.int(0)), || format!("u={u} s={s}"));
        }
    }
    for s in (2..=n).step_by(2) {
        for u in 0..=n - 2 {
            let lhs = c.qp(u) * a(2, u, s) + c.qp(u) * &qm1 * a(2, u + 1, s) - c.qp(u + 1) * a(2, u + 2, s);
            let rhs = c.eps(&q2n * &l2e(u, s - 2).unwrap_or_else(|| c.int(0)));
            t[3].eq(lhs, rhs, || format!("u={u} s={s}"));
        }
    }
    let names = [
        "hyperbolic inverse relation at row 2",
        "hyperbolic inverse relation onto rank rows",
        "hyperbolic inverse relation onto sign rows",
        "hyperbolic inverse relation for sign functions",
    ];
    for (t, name) in t.into_iter().zip(names) {
        t.record(&mut rep, name);
    }

    let mut t = Tally::new();
    for r in (0..=n).step_by(2) {
        let rhs = term(r, low(1, 0, r)) + (c.qp(2 * n - 1) - c.qp(r)) * low(1, 0, r - 2).unwrap_or_else(|| c.int(0));
        t.eq(a(1, 0, r), rhs, || format!("r={r}"));
    }
    t.record(&mut rep, "first row two-step recursion at even columns");
    rep
}

/// `q^(r+1) (Psi1_n(0,r) + Psi1_n(0,r+1)) = eps Psi3_(n+2)(2, r+1)` for even `r`.
pub fn first_row_neighbour_relation(psi: &PsiBlocks<CycInt>, psi_plus2: &PsiBlocks<CycInt>) -> Report {
    let p = psi.blocks.b[0][0][0].order();
    let n = psi.n as i64;
    let q = BigInt::from(psi.q);
    let eps = crate::arith::epsilon_of(psi.q);
    let mut t = Tally::new();
    for r in (0..=n).step_by(2) {
        let lhs = (at(psi, p, 1, 0, r) + at(psi, p, 1, 0, r + 1)).scale(&q.pow((r + 1) as u32));
        let rhs = at(psi_plus2, p, 3, 2, r + 1).scale(&BigInt::from(eps));
        t.eq(lhs, rhs, || format!("r={r}"));
    }
    let mut rep = Report::new();
    t.record(&mut rep, "first-row neighbour sum against size n+2");
    rep
}

/// Run every relation at size `n`, computing the neighbouring sizes the
/// relations need. Sizes over budget are reported as skipped.
pub fn relation_suite(field: &std::sync::Arc<Field>, chr: &CharSpec, n: usize, budget: &Budget) -> Result<Report> {
    let gamma = chr.gauss_sum()?;
    let mut cache: BTreeMap<usize, Option<PsiBlocks<CycInt>>> = BTreeMap::new();
    let mut phis = BTreeMap::new();
    let lo = n.saturating_sub(2);
    for k in lo..=n + 2 {
        let space = sym_space(field, k)?;
        match brute_force_phi(&space, chr, budget) {
            Ok(phi) => {
                cache.insert(k, Some(psi_from_phi(&phi)?));
                phis.insert(k, phi);
            }
            Err(Error::BudgetExceeded { .. }) => {
                cache.insert(k, None);
            }
            Err(e) => return Err(e),
        }
    }
    let mut rep = Report::new();
    let tag = format!("sym({n}) q={}", field.q());
    let Some(main) = cache[&n].clone() else {
        rep.skip(format!("{tag} relations"), "size over budget");
        return Ok(rep);
    };
    rep.extend(single_size_checks(&main, &phis[&n])?.prefixed(&tag));
    if n >= 1 {
        match &cache[&(n - 1)] {
            Some(low) => rep.extend(one_step_relations(&main, low, &gamma).prefixed(&tag)),
            None => rep.skip(format!("{tag} corner relations"), "lower size over budget"),
        }
    }
    if n >= 2 {
        match &cache[&(n - 2)] {
            Some(low) => rep.extend(two_step_relations(&main, low, &gamma).prefixed(&tag)),
            None => rep.skip(format!("{tag} hyperbolic relations"), "lower size over budget"),
        }
    }
    match &cache[&(n + 2)] {
        Some(up) => rep.extend(first_row_neighbour_relation(&main, up).prefixed(&tag)),
        None => rep.skip(format!("{tag} first-row neighbour sum against size n+2"), "size n+2 over budget"),
    }
    let eps = field.epsilon()?;
    let q = BigInt::from(field.q());
    rep.check(format!("{tag} gauss sum squares to eps q"), gamma.pow(2) == CycInt::from_int(field.p(), q * eps), String::new);
    if n == 2 {
        let v = at(&main, field.p(), 3, 2, 1);
        rep.check(format!("{tag} sign-row block at (2,1) equals eps q"), v == CycInt::from_int(field.p(), eps * field.q() as i64), || v.to_string());
    }
    Ok(rep)
}

/// Compare brute and closed blocks in `Z[zeta_p]`.
pub fn psi_closed_check(field: &std::sync::Arc<Field>, chr: &CharSpec, n: usize, budget: &Budget) -> Result<Report> {
    let gamma = chr.gauss_sum()?;
    let brute = psi_brute(field, chr, n, budget)?;
    let closed = psi_closed(n, field.q() as u64)?.to_cyc(&gamma);
    let mut rep = Report::new();
    for k in 1..=4 {
        let m = &brute.blocks.b[k - 1];
        let mut detail = String::new();
        let ok = m == &closed.blocks.b[k - 1];
        if !ok {
            let (rows, cols) = brute.blocks.axes(k - 1);
            'outer: for (i, s) in rows.iter().enumerate() {
                for (j, r) in cols.iter().enumerate() {
                    if m[i][j] != closed.blocks.b[k - 1][i][j] {
                        detail = format!("({s},{r}): brute {} closed {}", m[i][j], closed.blocks.b[k - 1][i][j]);
                        break 'outer;
                    }
                }
            }
        }
        rep.check(format!("sym({n}) q={} block {k} closed form", field.q()), ok, || detail);
    }
    Ok(rep)
}

/// Matrices of one symmetric-matrix diagram on the rank/sign bases.
#[derive(Clone, Debug)]
pub struct SymDiagramMatrices {
    pub pi_hat: Vec<OrbitLabel>,
    pub pi_hat_expected: Vec<OrbitLabel>,
    pub e: SignBlocks<CycInt>,
    pub e_expected: SignBlocks<CycInt>,
    pub delta: SignBlocks<CycInt>,
    pub delta_expected: SignBlocks<CycInt>,
    /// Pushforward on canonical bases, rows lower labels.
    pub e_canonical: Vec<Vec<CycInt>>,
}

impl SymDiagramMatrices {
    pub fn matches_patterns(&self) -> bool {
        self.pi_hat == self.pi_hat_expected && self.e == self.e_expected && self.delta == self.delta_expected
    }
}

fn zero_blocks_like(rows: &[OrbitLabel], cols: &[OrbitLabel], p: u32) -> SignBlocks<CycInt> {
    let (row_ranks, row_signed) = rank_axes(rows);
    let (col_ranks, col_signed) = rank_axes(cols);
    let z = |a: &[usize], b: &[usize]| vec![vec![CycInt::zero(p); b.len()]; a.len()];
    SignBlocks {
        b: [z(&row_ranks, &col_ranks), z(&row_ranks, &col_signed), z(&row_signed, &col_ranks), z(&row_signed, &col_signed)],
        row_ranks,
        row_signed,
        col_ranks,
        col_signed,
    }
}

fn set(m: &mut SignBlocks<CycInt>, k: usize, s: usize, r: usize, v: CycInt) {
    let (rows, cols) = m.axes(k - 1);
    if let (Some(i), Some(j)) = (rows.iter().position(|&x| x == s), cols.iter().position(|&x| x == r)) {
        m.b[k - 1][i][j] = v;
    }
}

/// Pushforward and pullback matrices of the corner diagram (`which = 1`,
/// `Sym_n -> Sym_(n-1)` under congruence) or the hyperbolic-plane diagram
/// (`which = 2`, `Sym_n -> Sym_(n-2)` under scaled congruence), brute-force
/// and as predicted.
pub fn sym_diagram_matrices<R: Rng>(
    field: &std::sync::Arc<Field>,
    chr: &CharSpec,
    n: usize,
    which: u8,
    rng: &mut R,
) -> Result<(Diagram, SymDiagramMatrices)> {
    let kind = match which {
        1 => SpaceKind::SymGL { n },
        2 => SpaceKind::SymScaledGL { n },
        _ => return Err(Error::InvalidParameter(format!("diagram {which} does not exist"))),
    };
    let upper = Space::new(kind, field)?;
    let d = Diagram::standard(&upper, chr)?;
    let p = field.p();
    let gamma = chr.gauss_sum()?;
    let eps = field.epsilon()?;
    let delta_inv = field.inv(field.delta()?).unwrap();
    let (ul, ll) = (d.upper.labels(), d.lower.labels());
    let pi_hat = d.pi_hat(rng, 4)?;
    let e_canonical = ll
        .iter()
        .map(|l| d.pushforward_row(&d.lower.representative_with(l, delta_inv)?))
        .collect::<Result<Vec<_>>>()?;
    let e = to_sign_basis(&ll, &ul, &e_canonical)?;
    let delta_can: Vec<Vec<CycInt>> = pi_hat
        .iter()
        .map(|w| ul.iter().map(|m| CycInt::from_int(p, (w == m) as i64)).collect())
        .collect();
    let delta = to_sign_basis(&ll, &ul, &delta_can)?;

    let int = |x: i64| CycInt::from_int(p, x);
    let qi = field.q() as i64;
    let qp = |k: usize| CycInt::from_int(p, BigInt::from(qi).pow(k as u32));
    let mut ee = zero_blocks_like(&ll, &ul, p);
    let mut de = zero_blocks_like(&ll, &ul, p);
    let expected_pi: Vec<OrbitLabel>;
    if which == 1 {
        expected_pi = ll
            .iter()
            .map(|l| match l.sign {
                None => OrbitLabel::plus(1),
                Some(s) => OrbitLabel::signed(l.rank + 1, s),
            })
            .collect();
        set(&mut ee, 1, 0, 0, int(1));
        set(&mut ee, 1, 0, 1, int(-1));
        for u in 0..n {
            set(&mut ee, 2, u, u, gamma.pow(u as u32));
            set(&mut ee, 2, u, u + 1, gamma.pow(u as u32 + 1));
        }
        for u in 1..n {
            set(&mut ee, 3, u, u, gamma.pow(u as u32));
            set(&mut ee, 3, u, u + 1, -gamma.pow(u as u32));
        }
        for v in 0..n {
            set(&mut de, 1, v, v + 1, int(1));
            set(&mut de, 4, v, v + 1, int(1));
        }
        set(&mut de, 2, 0, 1, int(1));
    } else {
        expected_pi = ll
            .iter()
            .map(|l| match (l.rank, l.sign) {
                (0, _) => OrbitLabel::signed(2, Sign::Plus.times(eps)),
                (r, None) => OrbitLabel::rank(r + 2),
                (r, Some(s)) => OrbitLabel::signed(r + 2, s.times(eps)),
            })
            .collect();
        for u in 0..=n - 2 {
            set(&mut ee, 1, u, u, qp(u));
            set(&mut ee, 1, u, u + 1, qp(u) * (qp(1) - int(1)));
            set(&mut ee, 1, u, u + 2, -qp(u + 1));
            set(&mut de, 1, u, u + 2, int(1));
        }
        set(&mut ee, 2, 0, 2, int(-eps) * qp(1));
        set(&mut de, 2, 0, 2, int(eps));
        for u in (2..=n - 2).step_by(2) {
            set(&mut ee, 4, u, u, qp(u));
            set(&mut ee, 4, u, u + 2, int(-eps) * qp(u + 1));
            set(&mut de, 4, u, u + 2, int(eps));
        }
    }
    Ok((
        d,
        SymDiagramMatrices {
            pi_hat,
            pi_hat_expected: expected_pi,
            e,
            e_expected: ee,
            delta,
            delta_expected: de,
            e_canonical,
        },
    ))
}

/// Diagram transfer identities and the predicted sparse patterns for one
/// symmetric-matrix diagram.
pub fn sym_diagram_report<R: Rng>(
    field: &std::sync::Arc<Field>,
    chr: &CharSpec,
    n: usize,
    which: u8,
    budget: &Budget,
    rng: &mut R,
) -> Result<Report> {
    let (d, m) = sym_diagram_matrices(field, chr, n, which, rng)?;
    let phi_a = brute_force_phi(&d.upper, chr, budget)?;
    let phi_b = brute_force_phi(&d.lower, chr, budget)?;
    let tag = format!("{} -> {} q={}", d.upper.kind(), d.lower.kind(), field.q());
    let mut rep = diagram_check(&d, &phi_a, &phi_b, &m.e_canonical, &m.pi_hat, rng).prefixed(&tag);
    rep.check(format!("{tag} induced label map as predicted"), m.pi_hat == m.pi_hat_expected, || format!("{:?}", m.pi_hat));
    rep.check(format!("{tag} pushforward blocks as predicted"), m.e == m.e_expected, || m.e.to_string());
    rep.check(format!("{tag} pullback blocks as predicted"), m.delta == m.delta_expected, || m.delta.to_string());
    Ok(rep)
}

/// `|A|` times the inverse transform, on the rank/sign bases, equals the
/// conjugate of the forward blocks.
pub fn bar_change_holds(field: &std::sync::Arc<Field>, chr: &CharSpec, n: usize, budget: &Budget) -> Result<bool> {
    let space = sym_space(field, n)?;
    let phi = brute_force_phi(&space, chr, budget)?;
    let bar = brute_force_phi_bar(&space, chr, budget)?;
    let labels = space.labels();
    let psi_bar = to_sign_basis(&labels, &labels, &bar)?;
    Ok(psi_bar == psi_from_phi(&phi)?.conj().blocks)
}

/// Effect of replacing the character by its twist with a non-square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistEffect {
    Unchanged,
    /// Rows of odd rank exchange their `+` and `-` labels.
    OddRowSignsSwap,
    Other,
}

impl fmt::Display for TwistEffect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistEffect::Unchanged => "canonical matrix unchanged",
            TwistEffect::OddRowSignsSwap => "odd-rank rows exchange signs",
            TwistEffect::Other => "canonical matrix changes irregularly",
        })
    }
}

/// Recompute the canonical matrix with the character twisted by the
/// distinguished non-square and classify the change.
pub fn twist_effect(field: &std::sync::Arc<Field>, n: usize, budget: &Budget) -> Result<TwistEffect> {
    let space = sym_space(field, n)?;
    let base = brute_force_phi(&space, &CharSpec::standard(field), budget)?;
    let tw = brute_force_phi(&space, &CharSpec::twisted(field, field.delta()?)?, budget)?;
    if base.entries == tw.entries {
        return Ok(TwistEffect::Unchanged);
    }
    let swapped: Vec<usize> = base
        .labels
        .iter()
        .map(|l| match l.sign {
            Some(s) if l.rank % 2 == 1 => base.labels.iter().position(|m| m.rank == l.rank && m.sign == Some(s.flip())).unwrap(),
            _ => base.labels.iter().position(|m| m == l).unwrap(),
        })
        .collect();
    let ok = swapped.iter().enumerate().all(|(i, &j)| tw.entries[i] == base.entries[j]);
    Ok(if ok { TwistEffect::OddRowSignsSwap } else { TwistEffect::Other })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field_of_order;

    #[test]
    fn base_change_round_trip() {
        let f = make_field_of_order(3).unwrap();
        let chr = CharSpec::standard(&f);
        let space = sym_space(&f, 2).unwrap();
        let phi = brute_force_phi(&space, &chr, &Budget::default()).unwrap();
        let psi = psi_from_phi(&phi).unwrap();
        assert_eq!(phi_from_psi(&psi, &space, &chr).unwrap(), phi);
    }

    #[test]
    fn scaled_size_one() {
        let f = make_field_of_order(5).unwrap();
        let b = scaled_restriction(&psi_closed(1, 5).unwrap());
        let ints: Vec<Vec<BigInt>> = b.b[0].iter().map(|r| r.iter().map(|x| x.a().clone()).collect()).collect();
        assert_eq!(ints, vec![vec![BigInt::from(1), BigInt::from(4)], vec![BigInt::from(1), BigInt::from(-1)]]);
        assert!(b.row_signed.is_empty());
        let brute = scaled_brute(&f, &CharSpec::standard(&f), 1, &Budget::default()).unwrap();
        assert_eq!(brute.b[0][1][1], CycInt::from_int(5, -1));
    }
}
