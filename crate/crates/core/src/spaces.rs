//! The five matrix spaces with their group actions, orbit labels,
//! classification, representatives and orbit sizes.
//!
//! Every element is stored as a dense row-major matrix (a vector is a
//! `1 x n` matrix). The free coordinates of a space are the positions that
//! may be chosen independently: all entries for vectors and rectangular
//! matrices, the strict upper triangle for alternating matrices and the
//! upper triangle with diagonal for symmetric matrices. Elements are
//! enumerated by reading an index in base `q` over the free coordinates,
//! first coordinate least significant.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{binomial, PolyQ};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::qspecial::{gauss_binom_poly, q_pochhammer_poly};

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "INVFOURIER_BUDGET";
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Upper bound on the number of elements a brute-force routine may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        let v = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok());
        Budget(v.unwrap_or(DEFAULT_BUDGET))
    }
}

impl Budget {
    pub fn check(&self, size: u128) -> Result<()> {
        if size > self.0 as u128 {
            Err(Error::BudgetExceeded { size, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `F^n` under `(F^x)^n` scaling and coordinate permutations.
    VecWreath { n: usize },
    /// `n x m` matrices, `n <= m`, under `(g, h): a -> g a h^t`.
    MatRect { n: usize, m: usize },
    /// Alternating `n x n` matrices under `g a g^t`.
    Alt { n: usize },
    /// Symmetric `n x n` matrices under `g a g^t`.
    SymGL { n: usize },
    /// Symmetric matrices under `(c, g): a -> c g a g^t`.
    SymScaledGL { n: usize },
}

impl SpaceKind {
    pub fn n(&self) -> usize {
        match *self {
            SpaceKind::VecWreath { n }
            | SpaceKind::MatRect { n, .. }
            | SpaceKind::Alt { n }
            | SpaceKind::SymGL { n }
            | SpaceKind::SymScaledGL { n } => n,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match *self {
            SpaceKind::VecWreath { n } => (1, n),
            SpaceKind::MatRect { n, m } => (n, m),
            SpaceKind::Alt { n } | SpaceKind::SymGL { n } | SpaceKind::SymScaledGL { n } => (n, n),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. })
    }

    /// Short family name used in reports and serialised output.
    pub fn family(&self) -> &'static str {
        match self {
            SpaceKind::VecWreath { .. } => "vec",
            SpaceKind::MatRect { .. } => "mat",
            SpaceKind::Alt { .. } => "alt",
            SpaceKind::SymGL { .. } => "sym",
            SpaceKind::SymScaledGL { .. } => "symscaled",
        }
    }

    /// Orbit labels in ascending order.
    pub fn labels(&self) -> Vec<OrbitLabel> {
        let n = self.n();
        match *self {
            SpaceKind::VecWreath { .. } | SpaceKind::MatRect { .. } => (0..=n).map(OrbitLabel::rank).collect(),
            SpaceKind::Alt { .. } => (0..=n).step_by(2).map(OrbitLabel::rank).collect(),
            SpaceKind::SymGL { .. } => std::iter::once(OrbitLabel::rank(0))
                .chain((1..=n).flat_map(|r| [OrbitLabel::plus(r), OrbitLabel::minus(r)]))
                .collect(),
            SpaceKind::SymScaledGL { .. } => {
                let mut out = vec![OrbitLabel::rank(0)];
                for r in 1..=n {
                    if r % 2 == 1 {
                        out.push(OrbitLabel::rank(r));
                    } else {
                        out.extend([OrbitLabel::plus(r), OrbitLabel::minus(r)]);
                    }
                }
                out
            }
        }
    }

    fn free_positions(&self) -> Vec<(usize, usize)> {
        let (r, c) = self.shape();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let keep = match self {
                    SpaceKind::Alt { .. } => i < j,
                    SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. } => i <= j,
                    _ => true,
                };
                if keep {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::MatRect { n, m } => write!(f, "mat({n},{m})"),
            k => write!(f, "{}({})", k.family(), k.n()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        if s >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, eps: i64) -> Sign {
        if eps >= 0 {
            self
        } else {
            self.flip()
        }
    }
}

/// Orbit label: a rank (or weight) with an optional discriminant sign.
/// Ordering is ascending rank with `+` before `-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub rank: usize,
    pub sign: Option<Sign>,
}

impl OrbitLabel {
    pub fn rank(rank: usize) -> Self {
        OrbitLabel { rank, sign: None }
    }

    pub fn signed(rank: usize, sign: Sign) -> Self {
        OrbitLabel { rank, sign: Some(sign) }
    }

    pub fn plus(rank: usize) -> Self {
        Self::signed(rank, Sign::Plus)
    }

    pub fn minus(rank: usize) -> Self {
        Self::signed(rank, Sign::Minus)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::IllegalLabel(s.to_string());
        let (digits, sign) = match s.strip_suffix('+') {
            Some(d) => (d, Some(Sign::Plus)),
            None => match s.strip_suffix('-') {
                Some(d) => (d, Some(Sign::Minus)),
                None => (s, None),
            },
        };
        Ok(OrbitLabel { rank: digits.parse().map_err(|_| bad())?, sign })
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            None => write!(f, "{}", self.rank),
            Some(Sign::Plus) => write!(f, "{}+", self.rank),
            Some(Sign::Minus) => write!(f, "{}-", self.rank),
        }
    }
}

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceElem {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldElem>,
}

impl SpaceElem {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SpaceElem { rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> SpaceElem {
        let mut t = SpaceElem::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, o: &SpaceElem, f: &Field) -> SpaceElem {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        SpaceElem { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: FieldElem, f: &Field) -> SpaceElem {
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        SpaceElem { rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, o: &SpaceElem, f: &Field) -> SpaceElem {
        assert_eq!(self.cols, o.rows);
        let mut out = SpaceElem::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn identity(n: usize) -> SpaceElem {
        let mut out = SpaceElem::zeros(n, n);
        for i in 0..n {
            out.set(i, i, FieldElem::ONE);
        }
        out
    }
}

/// Rank by Gaussian elimination; the buffer is overwritten.
pub fn rank_in_place(f: &Field, rows: usize, cols: usize, m: &mut [FieldElem]) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(m[rank * cols + c]).unwrap();
        for r in rank + 1..rows {
            let x = m[r * cols + c];
            if x.is_zero() {
                continue;
            }
            let fac = f.neg(f.mul(x, inv));
            for j in c..cols {
                let v = f.add(m[r * cols + j], f.mul(fac, m[rank * cols + j]));
                m[r * cols + j] = v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(f: &Field, a: &SpaceElem) -> usize {
    let mut buf = a.data.clone();
    rank_in_place(f, a.rows, a.cols, &mut buf)
}

/// Rank and discriminant sign of a symmetric matrix by congruence
/// diagonalisation (odd characteristic). The sign is the quadratic
/// character of the product of the nonzero diagonal entries; it is `+1`
/// for the zero matrix.
pub fn sym_rank_sign_in_place(f: &Field, n: usize, m: &mut [FieldElem]) -> (usize, i8) {
    let idx = |i: usize, j: usize| i * n + j;
    let mut disc = FieldElem::ONE;
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&i| !m[idx(i, i)].is_zero());
        let piv = match diag {
            Some(i) => i,
            None => {
                let Some((i, j)) =
                    (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !m[idx(i, j)].is_zero())
                else {
                    break;
                };
                // row_i += row_j and col_i += col_j makes the (i, i) entry 2 m_ij.
                for c in 0..n {
                    let v = f.add(m[idx(i, c)], m[idx(j, c)]);
                    m[idx(i, c)] = v;
                }
                for r in 0..n {
                    let v = f.add(m[idx(r, i)], m[idx(r, j)]);
                    m[idx(r, i)] = v;
                }
                i
            }
        };
        if piv != k {
            for c in 0..n {
                m.swap(idx(piv, c), idx(k, c));
            }
            for r in 0..n {
                m.swap(idx(r, piv), idx(r, k));
            }
        }
        let d = m[idx(k, k)];
        let inv = f.inv(d).expect("nonzero pivot");
        for i in k + 1..n {
            let x = m[idx(i, k)];
            if x.is_zero() {
                continue;
            }
            let fac = f.neg(f.mul(x, inv));
            for c in k..n {
                let v = f.add(m[idx(i, c)], f.mul(fac, m[idx(k, c)]));
                m[idx(i, c)] = v;
            }
            for r in k..n {
                let v = f.add(m[idx(r, i)], f.mul(fac, m[idx(r, k)]));
                m[idx(r, i)] = v;
            }
        }
        disc = f.mul(disc, d);
        k += 1;
    }
    (k, f.sgn_unchecked(disc))
}

/// Rank and discriminant sign of a symmetric matrix.
pub fn sym_sign(f: &Field, a: &SpaceElem) -> Result<(usize, i8)> {
    if f.p() == 2 {
        return Err(Error::OddCharacteristicRequired);
    }
    if a.rows != a.cols || a.transpose() != *a {
        return Err(Error::InvalidParameter("matrix is not symmetric".into()));
    }
    let mut buf = a.data.clone();
    Ok(sym_rank_sign_in_place(f, a.rows, &mut buf))
}

/// A space: a kind together with its field.
#[derive(Clone, Debug)]
pub struct Space {
    kind: SpaceKind,
    field: Arc<Field>,
    free: Vec<(usize, usize)>,
}

impl PartialEq for Space {
    fn eq(&self, o: &Space) -> bool {
        self.kind == o.kind && *self.field == *o.field
    }
}

impl Space {
    pub fn new(kind: SpaceKind, field: &Arc<Field>) -> Result<Self> {
        match kind {
            SpaceKind::MatRect { n, m } if n > m => {
                return Err(Error::InvalidSpace(format!("rectangular matrices need n <= m, got n={n} m={m}")))
            }
            SpaceKind::Alt { .. } | SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. } if field.p() == 2 => {
                return Err(Error::OddCharacteristicRequired)
            }
            _ => {}
        }
        Ok(Space { kind, field: field.clone(), free: kind.free_positions() })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn shape(&self) -> (usize, usize) {
        self.kind.shape()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn free_positions(&self) -> &[(usize, usize)] {
        &self.free
    }

    /// `q^dim`.
    pub fn cardinality(&self) -> u128 {
        (self.q() as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    pub fn cardinality_big(&self) -> BigInt {
        BigInt::from(self.q()).pow(self.dim() as u32)
    }

    pub fn zero(&self) -> SpaceElem {
        let (r, c) = self.shape();
        SpaceElem::zeros(r, c)
    }

    /// Write `x` into free position `(i, j)`, keeping the symmetry.
    #[inline]
    fn put(&self, a: &mut SpaceElem, i: usize, j: usize, x: FieldElem) {
        a.set(i, j, x);
        match self.kind {
            SpaceKind::Alt { .. } => a.set(j, i, self.field.neg(x)),
            SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. } => a.set(j, i, x),
            _ => {}
        }
    }

    pub fn from_free(&self, coords: &[FieldElem]) -> Result<SpaceElem> {
        if coords.len() != self.dim() {
            return Err(Error::ShapeMismatch);
        }
        let mut a = self.zero();
        for (&(i, j), &x) in self.free.iter().zip(coords) {
            self.put(&mut a, i, j, x);
        }
        Ok(a)
    }

    pub fn free_coords(&self, a: &SpaceElem) -> Vec<FieldElem> {
        self.free.iter().map(|&(i, j)| a.get(i, j)).collect()
    }

    /// Overwrite `buf` with the element of enumeration index `k`.
    pub fn decode_into(&self, mut k: u64, buf: &mut SpaceElem) {
        let q = self.q();
        for &(i, j) in &self.free {
            let x = FieldElem((k % q) as u32);
            k /= q;
            self.put(buf, i, j, x);
        }
    }

    /// Visit the elements with indices in `range`, in order, reusing one buffer.
    pub fn for_each_in_range(&self, range: std::ops::Range<u64>, mut visit: impl FnMut(&SpaceElem)) {
        if range.is_empty() {
            return;
        }
        let q = self.field.q();
        let mut buf = self.zero();
        self.decode_into(range.start, &mut buf);
        let mut digits = self.free_coords(&buf);
        for _ in range {
            visit(&buf);
            for (d, &(i, j)) in digits.iter_mut().zip(&self.free) {
                d.0 += 1;
                if d.0 < q {
                    self.put(&mut buf, i, j, *d);
                    break;
                }
                d.0 = 0;
                self.put(&mut buf, i, j, FieldElem::ZERO);
            }
        }
    }

    pub fn element(&self, k: u64) -> SpaceElem {
        let mut a = self.zero();
        self.decode_into(k, &mut a);
        a
    }

    /// All elements in enumeration order.
    pub fn enumerate(&self, budget: &Budget) -> Result<impl Iterator<Item = SpaceElem> + '_> {
        budget.check(self.cardinality())?;
        Ok((0..self.cardinality() as u64).map(move |k| self.element(k)))
    }

    /// Check shape and symmetry constraints.
    pub fn contains(&self, a: &SpaceElem) -> bool {
        if (a.rows, a.cols) != self.shape() || a.data.iter().any(|x| x.0 >= self.field.q()) {
            return false;
        }
        match self.kind {
            SpaceKind::Alt { n } => (0..n).all(|i| {
                a.get(i, i).is_zero() && (0..n).all(|j| a.get(j, i) == self.field.neg(a.get(i, j)))
            }),
            SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. } => a.transpose() == *a,
            _ => true,
        }
    }

    /// Trace form `<a|b> = sum_ij a_ij b_ij`.
    pub fn pairing(&self, a: &SpaceElem, b: &SpaceElem) -> FieldElem {
        let f = &*self.field;
        a.data.iter().zip(&b.data).fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    /// Orbit label of an element, using `scratch` as working storage.
    pub fn classify_with(&self, a: &SpaceElem, scratch: &mut Vec<FieldElem>) -> OrbitLabel {
        let f = &*self.field;
        scratch.clear();
        scratch.extend_from_slice(&a.data);
        match self.kind {
            SpaceKind::VecWreath { .. } => OrbitLabel::rank(a.data.iter().filter(|x| !x.is_zero()).count()),
            SpaceKind::MatRect { .. } | SpaceKind::Alt { .. } => {
                OrbitLabel::rank(rank_in_place(f, a.rows, a.cols, scratch))
            }
            SpaceKind::SymGL { n } => match sym_rank_sign_in_place(f, n, scratch) {
                (0, _) => OrbitLabel::rank(0),
                (r, s) => OrbitLabel::signed(r, Sign::from_i8(s)),
            },
            SpaceKind::SymScaledGL { n } => match sym_rank_sign_in_place(f, n, scratch) {
                (r, _) if r % 2 == 1 || r == 0 => OrbitLabel::rank(r),
                (r, s) => OrbitLabel::signed(r, Sign::from_i8(s)),
            },
        }
    }

    pub fn classify(&self, a: &SpaceElem) -> Result<OrbitLabel> {
        if !self.contains(a) {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.classify_with(a, &mut Vec::new()))
    }

    /// Orbit labels in ascending order.
    pub fn labels(&self) -> Vec<OrbitLabel> {
        self.kind.labels()
    }

    pub fn label_index(&self, label: &OrbitLabel) -> Result<usize> {
        self.labels().iter().position(|l| l == label).ok_or_else(|| Error::IllegalLabel(label.to_string()))
    }

    /// Canonical representative of an orbit.
    pub fn orbit_representative(&self, label: &OrbitLabel) -> Result<SpaceElem> {
        self.label_index(label)?;
        self.representative_with(label, self.field.delta().unwrap_or(FieldElem::ONE))
    }

    /// Representative whose last nonzero diagonal slot carries `minus_entry`
    /// for negative discriminant labels.
    pub fn representative_with(&self, label: &OrbitLabel, minus_entry: FieldElem) -> Result<SpaceElem> {
        self.label_index(label)?;
        let f = &*self.field;
        let r = label.rank;
        let mut a = self.zero();
        match self.kind {
            SpaceKind::VecWreath { .. } => (0..r).for_each(|j| a.set(0, j, FieldElem::ONE)),
            SpaceKind::MatRect { .. } => (0..r).for_each(|i| a.set(i, i, FieldElem::ONE)),
            SpaceKind::Alt { .. } => (0..r / 2).for_each(|b| {
                a.set(2 * b, 2 * b + 1, FieldElem::ONE);
                a.set(2 * b + 1, 2 * b, f.neg(FieldElem::ONE));
            }),
            SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. } => {
                (0..r).for_each(|i| a.set(i, i, FieldElem::ONE));
                if label.sign == Some(Sign::Minus) {
                    if f.sgn_unchecked(minus_entry) != -1 {
                        return Err(Error::InvalidParameter("minus representative needs a non-square".into()));
                    }
                    a.set(r - 1, r - 1, minus_entry);
                }
            }
        }
        Ok(a)
    }

    /// Orbit sizes by enumeration.
    pub fn orbit_sizes(&self, budget: &Budget) -> Result<BTreeMap<OrbitLabel, u64>> {
        budget.check(self.cardinality())?;
        let mut out: BTreeMap<OrbitLabel, u64> = self.labels().into_iter().map(|l| (l, 0)).collect();
        let mut buf = self.zero();
        let mut scratch = Vec::new();
        for k in 0..self.cardinality() as u64 {
            self.decode_into(k, &mut buf);
            *out.get_mut(&self.classify_with(&buf, &mut scratch)).expect("label") += 1;
        }
        Ok(out)
    }

    /// Elements grouped by orbit.
    pub fn orbit_partition(&self, budget: &Budget) -> Result<BTreeMap<OrbitLabel, Vec<SpaceElem>>> {
        let mut out: BTreeMap<OrbitLabel, Vec<SpaceElem>> =
            self.labels().into_iter().map(|l| (l, Vec::new())).collect();
        let mut scratch = Vec::new();
        for a in self.enumerate(budget)? {
            let l = self.classify_with(&a, &mut scratch);
            out.get_mut(&l).expect("label").push(a);
        }
        Ok(out)
    }

    /// A uniformly random group element.
    pub fn random_group_element<R: Rng>(&self, rng: &mut R) -> GroupElem {
        let f = &*self.field;
        let q = f.q();
        let unit = |rng: &mut R| FieldElem(rng.gen_range(1..q));
        match self.kind {
            SpaceKind::VecWreath { n } => {
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                GroupElem::Monomial { perm, scalars: (0..n).map(|_| unit(rng)).collect() }
            }
            SpaceKind::MatRect { n, m } => GroupElem::Pair { g: random_invertible(f, n, rng), h: random_invertible(f, m, rng) },
            SpaceKind::Alt { n } | SpaceKind::SymGL { n } => GroupElem::Congruence { g: random_invertible(f, n, rng) },
            SpaceKind::SymScaledGL { n } => {
                GroupElem::ScaledCongruence { c: unit(rng), g: random_invertible(f, n, rng) }
            }
        }
    }

    /// Apply a group element.
    pub fn act(&self, g: &GroupElem, a: &SpaceElem) -> SpaceElem {
        let f = &*self.field;
        match g {
            GroupElem::Monomial { perm, scalars } => {
                let mut out = a.clone();
                for j in 0..a.cols {
                    out.set(0, j, f.mul(scalars[j], a.get(0, perm[j])));
                }
                out
            }
            GroupElem::Pair { g, h } => g.matmul(a, f).matmul(&h.transpose(), f),
            GroupElem::Congruence { g } => g.matmul(a, f).matmul(&g.transpose(), f),
            GroupElem::ScaledCongruence { c, g } => g.matmul(a, f).matmul(&g.transpose(), f).scale(*c, f),
        }
    }

    /// Closed-form orbit size as a polynomial in `q`.
    pub fn orbit_size_closed(&self, label: &OrbitLabel) -> Result<PolyQ> {
        self.label_index(label)?;
        orbit_size_poly(self.kind, label)
    }
}

/// Closed-form orbit size for the kinds that have one.
pub fn orbit_size_poly(kind: SpaceKind, label: &OrbitLabel) -> Result<PolyQ> {
    let r = label.rank as i64;
    match kind {
        SpaceKind::VecWreath { n } => {
            Ok((PolyQ::q() - PolyQ::one()).pow(r as u32).scale(&binomial(n as i64, r)))
        }
        SpaceKind::MatRect { n, m } => mat_orbit_size_poly(n as i64, m as i64, r),
        SpaceKind::Alt { n } => {
            let x = r / 2;
            let num = q_pochhammer_poly(n as i64, -1, 2 * x)?;
            let den = q_pochhammer_poly(2, 2, x)?;
            let v = num.div_exact(&den)?.shift((x * (x - 1)) as usize);
            Ok(if x % 2 == 1 { -v } else { v })
        }
        SpaceKind::SymGL { .. } | SpaceKind::SymScaledGL { .. } => Err(Error::NoClosedForm),
    }
}

/// Number of rank-`r` matrices of shape `n x m`:
/// `(-1)^r q^C(r,2) (q^m; q^-1)_r [n, r]_q`.
pub fn mat_orbit_size_poly(n: i64, m: i64, r: i64) -> Result<PolyQ> {
    if r < 0 || r > n.min(m) {
        return Ok(PolyQ::zero());
    }
    let v = (&q_pochhammer_poly(m, -1, r)? * &gauss_binom_poly(n, r)?).shift((r * (r - 1) / 2) as usize);
    Ok(if r % 2 == 1 { -v } else { v })
}

/// Group elements for the five actions.
#[derive(Clone, Debug)]
pub enum GroupElem {
    Monomial { perm: Vec<usize>, scalars: Vec<FieldElem> },
    Pair { g: SpaceElem, h: SpaceElem },
    Congruence { g: SpaceElem },
    ScaledCongruence { c: FieldElem, g: SpaceElem },
}

/// Random invertible `n x n` matrix by rejection sampling.
pub fn random_invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> SpaceElem {
    loop {
        let data: Vec<FieldElem> = (0..n * n).map(|_| FieldElem(rng.gen_range(0..f.q()))).collect();
        let g = SpaceElem { rows: n, cols: n, data };
        if rank(f, &g) == n {
            return g;
        }
    }
}

/// `|A|` as a big integer, for spaces too large to enumerate as well.
pub fn space_order(q: u64, dim: usize) -> BigInt {
    BigInt::from(q).pow(dim as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(kind: SpaceKind, p: u64, e: u32) -> Space {
        Space::new(kind, &make_field(p, e).unwrap()).unwrap()
    }

    #[test]
    fn rejects_invalid_spaces() {
        let f = make_field(3, 1).unwrap();
        assert!(matches!(Space::new(SpaceKind::MatRect { n: 3, m: 2 }, &f), Err(Error::InvalidSpace(_))));
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(Space::new(SpaceKind::SymGL { n: 2 }, &f2).unwrap_err(), Error::OddCharacteristicRequired);
    }

    #[test]
    fn label_orders() {
        let s = space(SpaceKind::SymGL { n: 2 }, 3, 1);
        let names: Vec<String> = s.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["0", "1+", "1-", "2+", "2-"]);
        let s = space(SpaceKind::SymScaledGL { n: 3 }, 3, 1);
        let names: Vec<String> = s.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["0", "1", "2+", "2-", "3"]);
        let s = space(SpaceKind::Alt { n: 5 }, 3, 1);
        assert_eq!(s.labels(), vec![OrbitLabel::rank(0), OrbitLabel::rank(2), OrbitLabel::rank(4)]);
        assert_eq!(OrbitLabel::parse("2-").unwrap(), OrbitLabel::minus(2));
    }

    #[test]
    fn representatives_classify_to_their_label() {
        for kind in [
            SpaceKind::VecWreath { n: 3 },
            SpaceKind::MatRect { n: 2, m: 3 },
            SpaceKind::Alt { n: 5 },
            SpaceKind::SymGL { n: 3 },
            SpaceKind::SymScaledGL { n: 3 },
        ] {
            for (p, e) in [(3, 1), (5, 1), (3, 2)] {
                let s = space(kind, p, e);
                for l in s.labels() {
                    let a = s.orbit_representative(&l).unwrap();
                    assert_eq!(s.classify(&a).unwrap(), l, "{kind} q={}", s.q());
                }
            }
        }
        let f = make_field(3, 1).unwrap();
        let s = Space::new(SpaceKind::SymGL { n: 2 }, &f).unwrap();
        let a = s.orbit_representative(&OrbitLabel::minus(2)).unwrap();
        assert_eq!(a.data, vec![FieldElem(1), FieldElem(0), FieldElem(0), FieldElem(2)]);
    }

    #[test]
    fn sym_sign_examples() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = make_field(p, e).unwrap();
            let eps = f.epsilon().unwrap() as i8;
            let one = FieldElem::ONE;
            let anti = SpaceElem { rows: 2, cols: 2, data: vec![FieldElem::ZERO, one, one, FieldElem::ZERO] };
            assert_eq!(sym_sign(&f, &anti).unwrap(), (2, eps));
            let d = f.delta().unwrap();
            for a in f.elements().skip(1) {
                let x = SpaceElem { rows: 1, cols: 1, data: vec![f.mul(d, a)] };
                assert_eq!(sym_sign(&f, &x).unwrap().1, -f.sgn(a).unwrap());
            }
        }
    }

    #[test]
    fn orbit_sizes_match_closed_forms() {
        let b = Budget(1 << 24);
        for kind in [
            SpaceKind::VecWreath { n: 3 },
            SpaceKind::MatRect { n: 2, m: 3 },
            SpaceKind::MatRect { n: 1, m: 2 },
            SpaceKind::Alt { n: 4 },
            SpaceKind::Alt { n: 5 },
        ] {
            for q in [3u64, 5] {
                let s = space(kind, q, 1);
                let sizes = s.orbit_sizes(&b).unwrap();
                let total: u64 = sizes.values().sum();
                assert_eq!(total as u128, s.cardinality());
                for (l, c) in sizes {
                    let closed = s.orbit_size_closed(&l).unwrap().eval_int(&BigInt::from(q));
                    assert_eq!(closed, BigInt::from(c), "{kind} q={q} {l}");
                }
            }
        }
        let s = space(SpaceKind::MatRect { n: 1, m: 2 }, 3, 1);
        assert_eq!(s.orbit_size_closed(&OrbitLabel::rank(1)).unwrap(), PolyQ::from_i64s(&[-1, 0, 1]));
        let s = space(SpaceKind::SymGL { n: 2 }, 3, 1);
        assert_eq!(s.orbit_size_closed(&OrbitLabel::plus(1)), Err(Error::NoClosedForm));
    }

    #[test]
    fn classification_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in [
            SpaceKind::VecWreath { n: 3 },
            SpaceKind::MatRect { n: 2, m: 3 },
            SpaceKind::Alt { n: 4 },
            SpaceKind::SymGL { n: 3 },
            SpaceKind::SymScaledGL { n: 3 },
        ] {
            for (p, e) in [(3, 1), (5, 1), (3, 2)] {
                let s = space(kind, p, e);
                for _ in 0..200 {
                    let k = rng.gen_range(0..s.cardinality() as u64);
                    let a = s.element(k);
                    let g = s.random_group_element(&mut rng);
                    let b = s.act(&g, &a);
                    assert!(s.contains(&b));
                    assert_eq!(s.classify(&a).unwrap(), s.classify(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_dimensional_space() {
        let s = space(SpaceKind::VecWreath { n: 0 }, 3, 1);
        assert_eq!(s.cardinality(), 1);
        assert_eq!(s.labels(), vec![OrbitLabel::rank(0)]);
        assert_eq!(s.orbit_sizes(&Budget(10)).unwrap()[&OrbitLabel::rank(0)], 1);
    }
}
