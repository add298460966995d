//! Canonical matrices of invariant Fourier transforms and the identities
//! they satisfy.
//!
//! For a space `A` with orbit labels `L`, the canonical matrix is
//! `Phi(mu, lambda) = sum_{a in O(lambda)} conj(theta(<rep(mu) | a>))`,
//! rows indexed by character orbits (identified with orbits through the
//! pairing) and columns by orbits. Row `0` is the row of orbit sizes.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::arith::{CycInt, Rational};
use crate::error::{Error, Result};
use crate::field::{CharSpec, FieldElem};
use crate::report::Report;
use crate::spaces::{Budget, OrbitLabel, Space, SpaceElem, SpaceKind};

#[derive(Clone, Debug)]
pub struct CanonicalMatrix {
    pub space: Space,
    pub chr: CharSpec,
    pub labels: Vec<OrbitLabel>,
    /// `entries[row][col]`.
    pub entries: Vec<Vec<CycInt>>,
}

impl PartialEq for CanonicalMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.space == o.space && self.labels == o.labels && self.entries == o.entries
    }
}

impl CanonicalMatrix {
    /// Build from rational-integer entries.
    pub fn from_integers(space: &Space, chr: &CharSpec, entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let labels = space.labels();
        if entries.len() != labels.len() || entries.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::ShapeMismatch);
        }
        let p = space.field().p();
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(|x| CycInt::from_int(p, x)).collect())
            .collect();
        Ok(CanonicalMatrix { space: space.clone(), chr: chr.clone(), labels, entries })
    }

    pub fn order(&self) -> u32 {
        self.space.field().p()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, l: &OrbitLabel) -> Result<usize> {
        self.labels.iter().position(|x| x == l).ok_or_else(|| Error::IllegalLabel(l.to_string()))
    }

    pub fn get(&self, row: &OrbitLabel, col: &OrbitLabel) -> Result<&CycInt> {
        Ok(&self.entries[self.index(row)?][self.index(col)?])
    }

    /// `|O(lambda)|` for each column, read from the row of the zero orbit.
    pub fn orbit_sizes(&self) -> Vec<BigInt> {
        self.entries[0].iter().map(|x| x.to_int().expect("orbit sizes are integers")).collect()
    }

    pub fn space_order(&self) -> BigInt {
        self.space.cardinality_big()
    }

    /// Entries as rational integers, when all are.
    pub fn to_integers(&self) -> Result<Vec<Vec<BigInt>>> {
        self.entries.iter().map(|r| r.iter().map(CycInt::to_int).collect()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.to_integers().is_ok()
    }
}

/// Rows for the brute-force kernel: sparse vectors `c * rep` as
/// `(flat index, value)` pairs.
fn sparse_rows(space: &Space, chr: &CharSpec, reps: &[SpaceElem]) -> Vec<Vec<(usize, FieldElem)>> {
    let f = space.field();
    reps.iter()
        .map(|r| {
            r.data
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, &x)| (i, f.mul(chr.twist(), x)))
                .collect()
        })
        .collect()
}

fn chunks(total: u64) -> Vec<Range<u64>> {
    let parts = (rayon::current_num_threads() as u64 * 8).clamp(1, total.max(1));
    let step = total.div_ceil(parts).max(1);
    (0..parts).map(|i| (i * step).min(total)..((i + 1) * step).min(total)).filter(|r| !r.is_empty()).collect()
}

/// Count, for every row vector `r`, orbit label `l` of `a` and residue `k`,
/// the elements `a` with `Tr(<r|a>) = k` (or `-k` when `conj`).
fn brute_counts(space: &Space, rows: &[Vec<(usize, FieldElem)>], conj: bool, budget: &Budget) -> Result<Vec<u64>> {
    budget.check(space.cardinality())?;
    let labels = space.labels();
    let index: BTreeMap<OrbitLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let f = space.field();
    let p = f.p() as usize;
    let (nr, nl) = (rows.len(), labels.len());
    let total = space.cardinality() as u64;
    let tally = |range: Range<u64>| {
        let mut counts = vec![0u64; nr * nl * p];
        let mut scratch = Vec::new();
        space.for_each_in_range(range, |a| {
            let l = index[&space.classify_with(a, &mut scratch)];
            for (ri, row) in rows.iter().enumerate() {
                let s = row.iter().fold(FieldElem::ZERO, |acc, &(i, v)| f.add(acc, f.mul(v, a.data[i])));
                let t = f.trace(s) as usize;
                let k = if conj { (p - t) % p } else { t };
                counts[(ri * nl + l) * p + k] += 1;
            }
        });
        counts
    };
    let parts = chunks(total);
    Ok(parts.into_par_iter().map(tally).reduce(
        || vec![0u64; nr * nl * p],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    ))
}

fn counts_to_matrix(counts: &[u64], nr: usize, nl: usize, p: u32) -> Vec<Vec<CycInt>> {
    let ps = p as usize;
    (0..nr)
        .map(|r| (0..nl).map(|l| CycInt::from_counts(p, &counts[(r * nl + l) * ps..(r * nl + l + 1) * ps])).collect())
        .collect()
}

/// Canonical matrix by direct orbit sums.
pub fn brute_force_phi(space: &Space, chr: &CharSpec, budget: &Budget) -> Result<CanonicalMatrix> {
    let labels = space.labels();
    let reps: Vec<SpaceElem> = labels.iter().map(|l| space.orbit_representative(l)).collect::<Result<_>>()?;
    let rows = sparse_rows(space, chr, &reps);
    let counts = brute_counts(space, &rows, true, budget)?;
    let entries = counts_to_matrix(&counts, labels.len(), labels.len(), space.field().p());
    Ok(CanonicalMatrix { space: space.clone(), chr: chr.clone(), labels, entries })
}

/// Brute-force matrix with arbitrary row vectors: entry `(i, lambda)` is
/// `sum_{a in O(lambda)} conj(theta(<rows[i] | a>))`, or without the
/// conjugation when `conj` is false.
pub fn brute_orbit_sums(
    space: &Space,
    chr: &CharSpec,
    rows: &[SpaceElem],
    conj: bool,
    budget: &Budget,
) -> Result<Vec<Vec<CycInt>>> {
    let sparse = sparse_rows(space, chr, rows);
    let counts = brute_counts(space, &sparse, conj, budget)?;
    Ok(counts_to_matrix(&counts, rows.len(), space.labels().len(), space.field().p()))
}

/// Matrix of `|A|` times the inverse transform on the canonical bases,
/// computed directly: entry `(lambda, mu) = sum_{b in O(mu)} theta(<b | rep(lambda)>)`.
pub fn brute_force_phi_bar(space: &Space, chr: &CharSpec, budget: &Budget) -> Result<Vec<Vec<CycInt>>> {
    let reps: Vec<SpaceElem> = space.labels().iter().map(|l| space.orbit_representative(l)).collect::<Result<_>>()?;
    brute_orbit_sums(space, chr, &reps, false, budget)
}

/// Orbit-constant function, one value per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFunction {
    pub labels: Vec<OrbitLabel>,
    pub values: Vec<CycInt>,
}

impl InvariantFunction {
    pub fn from_integers(labels: Vec<OrbitLabel>, p: u32, values: &[i64]) -> Self {
        InvariantFunction { labels, values: values.iter().map(|&v| CycInt::from_int(p, v)).collect() }
    }
}

/// `psi(mu) = sum_lambda Phi(mu, lambda) phi(lambda)`.
pub fn forward_transform(phi: &CanonicalMatrix, f: &InvariantFunction) -> Result<InvariantFunction> {
    if f.labels != phi.labels {
        return Err(Error::LabelMismatch);
    }
    let p = phi.order();
    let values = phi
        .entries
        .iter()
        .map(|row| row.iter().zip(&f.values).fold(CycInt::zero(p), |acc, (a, b)| acc + a * b))
        .collect();
    Ok(InvariantFunction { labels: f.labels.clone(), values })
}

/// `phi(lambda) = (1/|A|) sum_mu (|P_mu| / |O_lambda|) conj(Phi(mu, lambda)) psi(mu)`.
/// The division must be exact in `Z[zeta]`.
pub fn inverse_transform(phi: &CanonicalMatrix, psi: &InvariantFunction) -> Result<InvariantFunction> {
    if psi.labels != phi.labels {
        return Err(Error::LabelMismatch);
    }
    let p = phi.order();
    let sizes = phi.orbit_sizes();
    let order = phi.space_order();
    let mut values = Vec::with_capacity(phi.size());
    for (j, size_l) in sizes.iter().enumerate() {
        let mut acc = CycInt::zero(p);
        for (i, size_m) in sizes.iter().enumerate() {
            acc = acc + (phi.entries[i][j].conj() * &psi.values[i]).scale(size_m);
        }
        let den = size_l * &order;
        values.push(acc.div_int_exact(&den).map_err(|_| Error::Invariant("inverse transform not integral".into()))?);
    }
    Ok(InvariantFunction { labels: psi.labels.clone(), values })
}

/// Rational-valued function scaled by `1/sqrt(q)` when `sqrt_q_denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatFunction {
    pub labels: Vec<OrbitLabel>,
    pub values: Vec<Rational>,
    pub sqrt_q_denominator: bool,
}

/// `phi -> (1/sqrt|A|) Phi phi`, for real canonical matrices.
pub fn hat_involution(phi: &CanonicalMatrix, f: &HatFunction) -> Result<HatFunction> {
    if f.labels != phi.labels {
        return Err(Error::LabelMismatch);
    }
    let ints = phi.to_integers().map_err(|_| Error::NotReal)?;
    let half_powers = phi.space.dim() + f.sqrt_q_denominator as usize;
    let scale = Rational::from_integer(BigInt::from(phi.space.q()).pow((half_powers / 2) as u32));
    let values = ints
        .iter()
        .map(|row| row.iter().zip(&f.values).fold(Rational::zero(), |acc, (a, b)| acc + b * a) / &scale)
        .collect();
    Ok(HatFunction { labels: f.labels.clone(), values, sqrt_q_denominator: half_powers % 2 == 1 })
}

/// Element of `Q(zeta_p)` as `num / den`, `den > 0`.
#[derive(Clone, Debug)]
pub struct ZonalValue {
    pub num: CycInt,
    pub den: BigInt,
}

impl ZonalValue {
    pub fn new(num: CycInt, den: BigInt) -> Self {
        assert!(den.is_positive());
        let g = num.coeffs().iter().fold(den.clone(), |g, c| g.gcd(c));
        if g.is_one() {
            ZonalValue { num, den }
        } else {
            ZonalValue { num: num.div_int_exact(&g).unwrap(), den: den / g }
        }
    }
}

impl PartialEq for ZonalValue {
    fn eq(&self, o: &Self) -> bool {
        self.num.scale(&o.den) == o.num.scale(&self.den)
    }
}

/// Zonal spherical values `omega_P(O) = conj(Phi(P, O)) / |O|`.
pub fn zonal_spherical(phi: &CanonicalMatrix) -> Vec<Vec<ZonalValue>> {
    let sizes = phi.orbit_sizes();
    phi.entries
        .iter()
        .map(|row| row.iter().zip(&sizes).map(|(x, s)| ZonalValue::new(x.conj(), s.clone())).collect())
        .collect()
}

/// Zonal values from their definition, `(1/|P|) sum_{xi in P} xi(rep O)`;
/// entry `[P][O]`.
pub fn zonal_direct(space: &Space, chr: &CharSpec, budget: &Budget) -> Result<Vec<Vec<ZonalValue>>> {
    let bar = brute_force_phi_bar(space, chr, budget)?;
    let sizes: Vec<BigInt> = space.orbit_sizes(budget)?.values().map(|&c| BigInt::from(c)).collect();
    let n = sizes.len();
    Ok((0..n).map(|pi| (0..n).map(|oi| ZonalValue::new(bar[oi][pi].clone(), sizes[pi].clone())).collect()).collect())
}

/// `Phi(mu, lambda) |mu| == Phi(lambda, mu) |lambda|` for all pairs.
pub fn symmetry_holds(phi: &CanonicalMatrix) -> bool {
    let s = phi.orbit_sizes();
    let n = phi.size();
    (0..n).all(|i| (0..n).all(|j| phi.entries[i][j].scale(&s[i]) == phi.entries[j][i].scale(&s[j])))
}

/// `sum_P |P| Phi(P, O) conj(Phi(P, O')) == delta(O, O') |O| |A|`.
pub fn orthogonality_holds(phi: &CanonicalMatrix) -> bool {
    let s = phi.orbit_sizes();
    let order = phi.space_order();
    let p = phi.order();
    let n = phi.size();
    (0..n).all(|j| {
        (0..n).all(|k| {
            let lhs = (0..n).fold(CycInt::zero(p), |acc, i| {
                acc + (&phi.entries[i][j] * &phi.entries[i][k].conj()).scale(&s[i])
            });
            let rhs = if j == k { CycInt::from_int(p, &s[j] * &order) } else { CycInt::zero(p) };
            lhs == rhs
        })
    })
}

/// Left side of the multi-orthogonality relation,
/// `sum_P |P| Phi(P, l_1) ... Phi(P, l_k) conj(Phi(P, l))`.
pub fn multi_orthogonality_lhs(phi: &CanonicalMatrix, tuple: &[OrbitLabel], target: &OrbitLabel) -> Result<CycInt> {
    let s = phi.orbit_sizes();
    let p = phi.order();
    let cols: Vec<usize> = tuple.iter().map(|l| phi.index(l)).collect::<Result<_>>()?;
    let t = phi.index(target)?;
    let mut acc = CycInt::zero(p);
    for (i, size) in s.iter().enumerate() {
        let prod = cols.iter().fold(CycInt::one(p), |x, &c| x * &phi.entries[i][c]);
        acc = acc + (prod * phi.entries[i][t].conj()).scale(size);
    }
    Ok(acc)
}

/// `#{(a_1, ..., a_k) in O(l_1) x ... x O(l_k) : a_1 + ... + a_k in O(l)}`
/// by iterated convolution of orbit indicators.
pub fn multi_orthogonality_count(
    space: &Space,
    tuple: &[OrbitLabel],
    target: &OrbitLabel,
    budget: &Budget,
) -> Result<BigInt> {
    let size = space.cardinality();
    budget.check(size.saturating_mul(size))?;
    let all: Vec<SpaceElem> = space.enumerate(budget)?.collect();
    let index: BTreeMap<Vec<FieldElem>, usize> = all.iter().enumerate().map(|(i, a)| (a.data.clone(), i)).collect();
    let mut scratch = Vec::new();
    let labels: Vec<OrbitLabel> = all.iter().map(|a| space.classify_with(a, &mut scratch)).collect();
    let f = space.field();
    let mut dist = vec![BigInt::zero(); all.len()];
    dist[0] = BigInt::one();
    for l in tuple {
        let mut next = vec![BigInt::zero(); all.len()];
        for (x, c) in dist.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (y, ly) in labels.iter().enumerate() {
                if ly == l {
                    next[index[&all[x].add(&all[y], f).data]] += c;
                }
            }
        }
        dist = next;
    }
    Ok(dist.iter().zip(&labels).filter(|(_, l)| *l == target).map(|(c, _)| c).sum())
}

/// Projection diagram `A -> B` onto the leading block, with the character
/// `zeta = theta(<e | .>)` used to twist fibres.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub upper: Space,
    pub lower: Space,
    pub e: SpaceElem,
    pub chr: CharSpec,
    /// For each lower free coordinate, the matching upper free coordinate.
    keep: Vec<usize>,
    /// Upper free coordinates spanning the kernel of the projection.
    kernel: Vec<usize>,
}

impl Diagram {
    pub fn new(upper: &Space, lower: &Space, e: SpaceElem, chr: &CharSpec) -> Result<Self> {
        if upper.field() != lower.field() || !upper.contains(&e) {
            return Err(Error::InvalidSpace("diagram spaces must share a field and contain e".into()));
        }
        let (lr, lc) = lower.shape();
        let (ur, uc) = upper.shape();
        if lr > ur || lc > uc {
            return Err(Error::InvalidSpace("lower space must be a leading block".into()));
        }
        let up = upper.free_positions();
        let mut keep = Vec::new();
        for pos in lower.free_positions() {
            keep.push(up.iter().position(|x| x == pos).ok_or_else(|| {
                Error::InvalidSpace("lower free coordinates must be upper free coordinates".into())
            })?);
        }
        let kernel = (0..up.len()).filter(|i| !keep.contains(i)).collect();
        Ok(Diagram { upper: upper.clone(), lower: lower.clone(), e, chr: chr.clone(), keep, kernel })
    }

    /// The diagram used for each family's recursion: drop the last
    /// coordinate (vectors), the last row and column (rectangular and
    /// symmetric matrices) or the last two (alternating and scaled
    /// symmetric matrices), with `e` the unit in the dropped corner.
    pub fn standard(upper: &Space, chr: &CharSpec) -> Result<Self> {
        let f = upper.field();
        let one = FieldElem::ONE;
        let mut e = upper.zero();
        let lower_kind = match upper.kind() {
            SpaceKind::VecWreath { n } if n >= 1 => {
                e.set(0, n - 1, one);
                SpaceKind::VecWreath { n: n - 1 }
            }
            SpaceKind::MatRect { n, m } if n >= 1 => {
                e.set(n - 1, m - 1, one);
                SpaceKind::MatRect { n: n - 1, m: m - 1 }
            }
            SpaceKind::Alt { n } if n >= 2 => {
                e.set(n - 2, n - 1, one);
                e.set(n - 1, n - 2, f.neg(one));
                SpaceKind::Alt { n: n - 2 }
            }
            SpaceKind::SymGL { n } if n >= 1 => {
                e.set(n - 1, n - 1, one);
                SpaceKind::SymGL { n: n - 1 }
            }
            SpaceKind::SymScaledGL { n } if n >= 2 => {
                e.set(n - 2, n - 1, one);
                e.set(n - 1, n - 2, one);
                SpaceKind::SymScaledGL { n: n - 2 }
            }
            k => return Err(Error::InvalidSpace(format!("{k} has no standard diagram"))),
        };
        Diagram::new(upper, &Space::new(lower_kind, f)?, e, chr)
    }

    pub fn project(&self, a: &SpaceElem) -> SpaceElem {
        let coords = self.upper.free_coords(a);
        self.lower.from_free(&self.keep.iter().map(|&i| coords[i]).collect::<Vec<_>>()).unwrap()
    }

    /// Adjoint of the projection: extend by zeros.
    pub fn embed(&self, b: &SpaceElem) -> SpaceElem {
        let mut coords = vec![FieldElem::ZERO; self.upper.dim()];
        for (bi, &ui) in self.lower.free_coords(b).into_iter().zip(&self.keep) {
            coords[ui] = bi;
        }
        self.upper.from_free(&coords).unwrap()
    }

    /// `|A| / |B|`.
    pub fn index_ratio(&self) -> BigInt {
        BigInt::from(self.upper.q()).pow(self.kernel.len() as u32)
    }

    /// Induced label map `omega -> class(embed(rep omega) + e)`, checking
    /// that it does not depend on the representative over `trials` random
    /// orbit mates.
    pub fn pi_hat<R: Rng>(&self, rng: &mut R, trials: usize) -> Result<Vec<OrbitLabel>> {
        let f = self.upper.field();
        let mut out = Vec::new();
        for l in self.lower.labels() {
            let b = self.lower.orbit_representative(&l)?;
            let image = self.upper.classify(&self.embed(&b).add(&self.e, f))?;
            for _ in 0..trials {
                let g = self.lower.random_group_element(rng);
                let b2 = self.lower.act(&g, &b);
                if self.upper.classify(&self.embed(&b2).add(&self.e, f))? != image {
                    return Err(Error::Invariant(format!("induced label map depends on representative of {l}")));
                }
            }
            out.push(image);
        }
        Ok(out)
    }

    /// `sum_{a in fibre(b)} chi_lambda(a) conj(zeta(a))` for every upper label.
    pub fn pushforward_row(&self, b: &SpaceElem) -> Result<Vec<CycInt>> {
        let f = self.upper.field();
        let labels = self.upper.labels();
        let p = f.p() as usize;
        let q = f.q() as u64;
        let base = self.embed(b);
        let mut coords = self.upper.free_coords(&base);
        let mut counts = vec![vec![0u64; p]; labels.len()];
        let mut scratch = Vec::new();
        let eset = sparse_rows(&self.upper, &self.chr, std::slice::from_ref(&self.e)).pop().unwrap();
        for k in 0..q.pow(self.kernel.len() as u32) {
            let mut r = k;
            for &ci in &self.kernel {
                coords[ci] = FieldElem((r % q) as u32);
                r /= q;
            }
            let a = self.upper.from_free(&coords)?;
            let l = labels.iter().position(|x| *x == self.upper.classify_with(&a, &mut scratch)).unwrap();
            let s = eset.iter().fold(FieldElem::ZERO, |acc, &(i, v)| f.add(acc, f.mul(v, a.data[i])));
            counts[l][(p - f.trace(s) as usize) % p] += 1;
        }
        Ok(counts.iter().map(|c| CycInt::from_counts(f.p(), c)).collect())
    }

    /// Matrix `E(gamma, lambda)` of the pushforward on canonical bases.
    pub fn pushforward_matrix(&self) -> Result<Vec<Vec<CycInt>>> {
        self.lower.labels().iter().map(|l| self.pushforward_row(&self.lower.orbit_representative(l)?)).collect()
    }

    /// Whether `zeta` is trivial on the kernel of the projection.
    pub fn twist_trivial_on_kernel(&self) -> bool {
        self.kernel.iter().all(|&i| {
            let mut coords = vec![FieldElem::ZERO; self.upper.dim()];
            coords[i] = FieldElem::ONE;
            let a = self.upper.from_free(&coords).unwrap();
            self.upper.pairing(&self.e, &a).is_zero()
        })
    }
}

/// Check the two transfer identities of a diagram:
/// `Phi_A(pi_hat(w), l) = sum_g E(g, l) Phi_B(w, g)` and
/// `sum_l conj(E(g, l)) Phi_A(l, m) = (|A|/|B|) sum_{pi_hat(w) = m} Phi_B(g, w)`,
/// together with representative independence of `E` and, when `zeta` is
/// nontrivial on the kernel, vanishing row sums of `E`.
pub fn diagram_check<R: Rng>(
    d: &Diagram,
    phi_a: &CanonicalMatrix,
    phi_b: &CanonicalMatrix,
    e: &[Vec<CycInt>],
    pi_hat: &[OrbitLabel],
    rng: &mut R,
) -> Report {
    let mut rep = Report::new();
    let p = phi_a.order();
    let (la, lb) = (&phi_a.labels, &phi_b.labels);
    let ia: Vec<usize> = pi_hat.iter().map(|l| phi_a.index(l).expect("label")).collect();

    let mut ok = true;
    let mut detail = String::new();
    for (w, &wi) in ia.iter().enumerate() {
        for (l, lab) in la.iter().enumerate() {
            let rhs = (0..lb.len()).fold(CycInt::zero(p), |acc, g| acc + &e[g][l] * &phi_b.entries[w][g]);
            if phi_a.entries[wi][l] != rhs {
                ok = false;
                detail = format!("row {} col {lab}: {} vs {rhs}", lb[w], phi_a.entries[wi][l]);
            }
        }
    }
    rep.check("forward transfer through pushforward", ok, || detail.clone());

    let ratio = d.index_ratio();
    let mut ok = true;
    let mut detail = String::new();
    for g in 0..lb.len() {
        for (m, mlab) in la.iter().enumerate() {
            let lhs = (0..la.len()).fold(CycInt::zero(p), |acc, l| acc + e[g][l].conj() * &phi_a.entries[l][m]);
            let rhs = (0..lb.len())
                .filter(|&w| ia[w] == m)
                .fold(CycInt::zero(p), |acc, w| acc + &phi_b.entries[g][w])
                .scale(&ratio);
            if lhs != rhs {
                ok = false;
                detail = format!("gamma {} mu {mlab}: {lhs} vs {rhs}", lb[g]);
            }
        }
    }
    rep.check("inverse transfer through pushforward", ok, || detail.clone());

    let mut ok = true;
    for _ in 0..3 {
        for (gi, l) in d.lower.labels().iter().enumerate() {
            let b = d.lower.orbit_representative(l).unwrap();
            let b2 = d.lower.act(&d.lower.random_group_element(rng), &b);
            ok &= d.pushforward_row(&b2).map(|r| r == e[gi]).unwrap_or(false);
        }
    }
    rep.check("pushforward independent of representative", ok, String::new);

    if d.twist_trivial_on_kernel() {
        rep.skip("pushforward rows sum to zero", "twist trivial on kernel");
    } else {
        let ok = e.iter().all(|row| row.iter().fold(CycInt::zero(p), |a, x| a + x).is_zero());
        rep.check("pushforward rows sum to zero", ok, String::new);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn ints(m: &CanonicalMatrix) -> Vec<Vec<i64>> {
        m.to_integers().unwrap().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
    }

    #[test]
    fn golden_one_dimensional() {
        for q in [2u64, 3, 4, 5, 9] {
            let f = crate::field::make_field_of_order(q).unwrap();
            let s = Space::new(SpaceKind::VecWreath { n: 1 }, &f).unwrap();
            let phi = brute_force_phi(&s, &CharSpec::standard(&f), &Budget(1000)).unwrap();
            assert_eq!(ints(&phi), vec![vec![1, q as i64 - 1], vec![1, -1]]);
        }
        let f = make_field(3, 1).unwrap();
        let s = Space::new(SpaceKind::VecWreath { n: 0 }, &f).unwrap();
        assert_eq!(ints(&brute_force_phi(&s, &CharSpec::standard(&f), &Budget(10)).unwrap()), vec![vec![1]]);
    }

    #[test]
    fn inverse_and_hat() {
        let f = make_field(3, 1).unwrap();
        let s = Space::new(SpaceKind::MatRect { n: 2, m: 2 }, &f).unwrap();
        let phi = brute_force_phi(&s, &CharSpec::standard(&f), &Budget(1000)).unwrap();
        let g = InvariantFunction::from_integers(phi.labels.clone(), 3, &[2, -1, 5]);
        let back = inverse_transform(&phi, &forward_transform(&phi, &g).unwrap()).unwrap();
        assert_eq!(back, g);
        let h = HatFunction {
            labels: phi.labels.clone(),
            values: vec![Rational::one(), Rational::zero(), Rational::from_integer(3.into())],
            sqrt_q_denominator: false,
        };
        assert_eq!(hat_involution(&phi, &hat_involution(&phi, &h).unwrap()).unwrap(), h);
        assert!(symmetry_holds(&phi) && orthogonality_holds(&phi));
    }

    #[test]
    fn multi_orthogonality_example() {
        let f = make_field(3, 1).unwrap();
        let s = Space::new(SpaceKind::VecWreath { n: 2 }, &f).unwrap();
        let phi = brute_force_phi(&s, &CharSpec::standard(&f), &Budget(1000)).unwrap();
        let (one, two) = (OrbitLabel::rank(1), OrbitLabel::rank(2));
        let count = multi_orthogonality_count(&s, &[one, one], &two, &Budget(1000)).unwrap();
        assert_eq!(count, BigInt::from(8));
        let lhs = multi_orthogonality_lhs(&phi, &[one, one], &two).unwrap();
        assert_eq!(lhs, CycInt::from_int(3, 72));
    }
}
