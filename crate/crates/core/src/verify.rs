//! Named verification suites over a grid of spaces and fields.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{rat_int, CycInt, Rational};
use crate::error::{Error, Result};
use crate::field::{make_field_of_order, CharSpec, Field};
use crate::recursions::{
    closed_form_canonical, coefficients_match_pushforward, counting_lemma_check, genfun_mat_concrete_holds,
    genfun_mat_holds, genfun_vec_holds, multi_orthogonality_closed, q1_limit_check, recursion_phi,
};
use crate::report::Report;
use crate::spaces::{Budget, OrbitLabel, Space, SpaceKind};
use crate::symspace::{
    bar_change_holds, psi_brute, psi_closed_check, relation_suite, scaled_brute, scaled_restriction,
    sym_diagram_report, twist_effect,
};
use crate::transform::{
    brute_force_phi, diagram_check, forward_transform, hat_involution, inverse_transform,
    multi_orthogonality_count, multi_orthogonality_lhs, orthogonality_holds, symmetry_holds, zonal_direct,
    zonal_spherical, CanonicalMatrix, Diagram, HatFunction, InvariantFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Orthogonality,
    Multi,
    Genfun,
    Diagrams,
    SymRelations,
    Gauss,
    Limits,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Oracle,
        Suite::Orthogonality,
        Suite::Multi,
        Suite::Genfun,
        Suite::Diagrams,
        Suite::SymRelations,
        Suite::Gauss,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Orthogonality => "orthogonality",
            Suite::Multi => "multi",
            Suite::Genfun => "genfun",
            Suite::Diagrams => "diagrams",
            Suite::SymRelations => "sym-relations",
            Suite::Gauss => "gauss",
            Suite::Limits => "limits",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s}")))
    }
}

/// One space over one field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub kind: SpaceKind,
    pub q: u64,
}

/// Spaces for the per-space suites and field orders for the per-field ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub cells: Vec<Cell>,
    pub qs: Vec<u64>,
}

const DEFAULT_MAX_SIZE: u128 = 2_000_000;

fn legal(kind: SpaceKind, q: u64) -> bool {
    !(matches!(kind, SpaceKind::Alt { .. }) || kind.is_symmetric()) || q % 2 == 1
}

impl Grid {
    /// `q` in {2, 3, 4, 5, 9}, odd only for alternating and symmetric
    /// matrices; vectors up to length 3, rectangular matrices up to 3 x 4,
    /// alternating up to 5, symmetric up to 3; spaces larger than two
    /// million elements dropped.
    pub fn default_grid() -> Self {
        let qs = [2u64, 3, 4, 5, 9];
        let mut kinds = Vec::new();
        kinds.extend((1..=3).map(|n| SpaceKind::VecWreath { n }));
        for n in 1..=3 {
            kinds.extend((n..=4).map(|m| SpaceKind::MatRect { n, m }));
        }
        kinds.extend((2..=5).map(|n| SpaceKind::Alt { n }));
        kinds.extend((1..=3).map(|n| SpaceKind::SymGL { n }));
        kinds.extend((1..=3).map(|n| SpaceKind::SymScaledGL { n }));
        let mut cells = Vec::new();
        for kind in kinds {
            for q in qs {
                let dim = kind_dim(kind);
                if legal(kind, q) && (q as u128).checked_pow(dim as u32).is_some_and(|s| s <= DEFAULT_MAX_SIZE) {
                    cells.push(Cell { kind, q });
                }
            }
        }
        Grid { cells, qs: vec![3, 5, 7, 9, 11, 13] }
    }

    /// Every kind at every listed `q`, dropping illegal combinations.
    pub fn from_kinds(kinds: &[SpaceKind], qs: &[u64]) -> Self {
        let cells = kinds
            .iter()
            .flat_map(|&kind| qs.iter().map(move |&q| Cell { kind, q }))
            .filter(|c| legal(c.kind, c.q))
            .collect();
        Grid { cells, qs: qs.to_vec() }
    }
}

fn kind_dim(kind: SpaceKind) -> usize {
    let (r, c) = kind.shape();
    match kind {
        SpaceKind::Alt { n } => n * (n.saturating_sub(1)) / 2,
        SpaceKind::SymGL { n } | SpaceKind::SymScaledGL { n } => n * (n + 1) / 2,
        _ => r * c,
    }
}

fn field(q: u64) -> Result<Arc<Field>> {
    make_field_of_order(q)
}

fn tag(c: &Cell) -> String {
    format!("{} q={}", c.kind, c.q)
}

/// Brute-force matrix, or a skip line when the space is over budget.
fn brute_or_skip(space: &Space, chr: &CharSpec, budget: &Budget, rep: &mut Report, name: &str) -> Result<Option<CanonicalMatrix>> {
    match brute_force_phi(space, chr, budget) {
        Ok(m) => Ok(Some(m)),
        Err(Error::BudgetExceeded { size, budget }) => {
            rep.skip(name.to_string(), format!("{size} elements over budget {budget}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Brute force, recursion and closed form agree.
pub fn oracle_cell(c: &Cell, budget: &Budget) -> Result<Report> {
    let f = field(c.q)?;
    let chr = CharSpec::standard(&f);
    let t = tag(c);
    let mut rep = Report::new();
    match c.kind {
        SpaceKind::SymGL { n } => match psi_closed_check(&f, &chr, n, budget) {
            Ok(r) => rep.extend(r),
            Err(Error::BudgetExceeded { .. }) => rep.skip(format!("{t} closed blocks"), "over budget"),
            Err(e) => return Err(e),
        },
        SpaceKind::SymScaledGL { n } => {
            let (brute, psi) = match (scaled_brute(&f, &chr, n, budget), psi_brute(&f, &chr, n, budget)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(Error::BudgetExceeded { .. }), _) | (_, Err(Error::BudgetExceeded { .. })) => {
                    rep.skip(format!("{t} restriction of symmetric blocks"), "over budget");
                    return Ok(rep);
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            rep.check(format!("{t} blocks are the even-rank restriction of the congruence blocks"), scaled_restriction(&psi) == brute, || brute.to_string());
        }
        kind => {
            let space = Space::new(kind, &f)?;
            let Some(brute) = brute_or_skip(&space, &chr, budget, &mut rep, &format!("{t} brute force"))? else {
                return Ok(rep);
            };
            let rec = recursion_phi(kind)?.to_canonical(&space, &chr)?;
            let closed = closed_form_canonical(&space, &chr)?;
            rep.check(format!("{t} recursion equals brute force"), rec == brute, String::new);
            rep.check(format!("{t} closed form equals brute force"), closed == brute, String::new);
        }
    }
    Ok(rep)
}

fn test_function(labels: &[OrbitLabel], p: u32) -> InvariantFunction {
    let vals: Vec<i64> = (0..labels.len() as i64).map(|i| i * i - 2 * i + 3).collect();
    InvariantFunction::from_integers(labels.to_vec(), p, &vals)
}

/// Orthogonality, symmetry, forward/inverse round trip, the hat involution
/// (real matrices) and zonal values against their definition.
pub fn laws_cell(c: &Cell, budget: &Budget) -> Result<Report> {
    let f = field(c.q)?;
    let chr = CharSpec::standard(&f);
    let t = tag(c);
    let space = Space::new(c.kind, &f)?;
    let mut rep = Report::new();
    let Some(phi) = brute_or_skip(&space, &chr, budget, &mut rep, &format!("{t} transform laws"))? else {
        return Ok(rep);
    };
    rep.check(format!("{t} orthogonality"), orthogonality_holds(&phi), String::new);
    rep.check(format!("{t} size-weighted symmetry"), symmetry_holds(&phi), String::new);
    let fun = test_function(&phi.labels, phi.order());
    let back = inverse_transform(&phi, &forward_transform(&phi, &fun)?)?;
    rep.check(format!("{t} inverse undoes forward"), back == fun, String::new);
    if phi.is_integral() {
        let h = HatFunction {
            labels: phi.labels.clone(),
            values: (0..phi.size() as i64).map(|i| rat_int(i - 1)).collect(),
            sqrt_q_denominator: false,
        };
        let hh = hat_involution(&phi, &hat_involution(&phi, &h)?)?;
        rep.check(format!("{t} normalised transform is an involution"), hh == h, String::new);
    }
    rep.check(format!("{t} zonal values match their definition"), zonal_spherical(&phi) == zonal_direct(&space, &chr, budget)?, String::new);
    Ok(rep)
}

fn tuples(labels: &[OrbitLabel], k: usize) -> Vec<Vec<OrbitLabel>> {
    (0..k).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|t| labels.iter().map(move |l| [t.clone(), vec![*l]].concat())).collect()
    })
}

const MULTI_MAX_SIZE: u128 = 1000;

/// Multi-orthogonality against tuple counting for `k` in {1, 2}, and the
/// closed counts on vectors and rectangular matrices; the rank-additive
/// count on small rectangular matrices.
pub fn multi_cell(c: &Cell, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new();
    let t = tag(c);
    let f = field(c.q)?;
    let space = Space::new(c.kind, &f)?;
    if space.cardinality() > MULTI_MAX_SIZE {
        rep.skip(format!("{t} multi-orthogonality"), "space too large for tuple counting");
        return Ok(rep);
    }
    let chr = CharSpec::standard(&f);
    let phi = brute_force_phi(&space, &chr, budget)?;
    let order = phi.space_order();
    let closed_family = matches!(c.kind, SpaceKind::VecWreath { .. } | SpaceKind::MatRect { .. });
    for k in 1..=2 {
        let (mut ok, mut ok_closed, mut detail) = (true, true, String::new());
        for tuple in tuples(&phi.labels, k) {
            for target in &phi.labels {
                let count = multi_orthogonality_count(&space, &tuple, target, budget)?;
                let lhs = multi_orthogonality_lhs(&phi, &tuple, target)?;
                let rhs = CycInt::from_int(phi.order(), &count * &order);
                if lhs != rhs {
                    ok = false;
                    detail = format!("{tuple:?} -> {target}: {lhs} vs {rhs}");
                }
                let ranks: Vec<usize> = tuple.iter().map(|l| l.rank).collect();
                if closed_family && ranks.iter().sum::<usize>() <= target.rank {
                    ok_closed &= multi_orthogonality_closed(c.kind, c.q, &ranks, target.rank)? == &count * &order;
                }
            }
        }
        rep.check(format!("{t} multi-orthogonality with {k}-tuples matches counting"), ok, || detail);
        if closed_family {
            rep.check(format!("{t} closed multi-orthogonality counts with {k}-tuples"), ok_closed, String::new);
        }
    }
    if let SpaceKind::MatRect { n, m } = c.kind {
        if n <= 2 && m <= 2 && c.q <= 3 {
            rep.extend(counting_lemma_check(&space, budget)?);
        }
    }
    Ok(rep)
}

/// Row generating functions of the vector and rectangular families.
pub fn genfun_report() -> Result<Report> {
    let mut rep = Report::new();
    for n in 0..=4 {
        rep.check_result(format!("vec({n}) row generating function in Z[q][t]"), genfun_vec_holds(n), String::new);
    }
    for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        rep.check_result(format!("mat({n},{m}) row generating function in Z[q][t]"), genfun_mat_holds(n, m), String::new);
    }
    rep.check_result("mat(2,2) row generating function at q=3", genfun_mat_concrete_holds(2, 2, &Rational::from_integer(BigInt::from(3))), String::new);
    Ok(rep)
}

/// Integer polynomiality in `q` and the limit at `q = 1` for each family
/// with a recursion.
pub fn limits_report(kinds: &[SpaceKind]) -> Result<Report> {
    let mut rep = Report::new();
    let mut seen = Vec::new();
    for &k in kinds {
        if k.is_symmetric() || seen.contains(&k) {
            continue;
        }
        seen.push(k);
        match recursion_phi(k) {
            Ok(_) => rep.pass(format!("{k} entries are integer polynomials in q")),
            Err(e) => {
                rep.fail(format!("{k} entries are integer polynomials in q"), e.to_string());
                continue;
            }
        }
        rep.extend(q1_limit_check(k)?);
    }
    Ok(rep)
}

/// `gamma^2 = eps q`, `gamma conj(gamma) = q` and the square-sum form.
pub fn gauss_report(q: u64) -> Result<Report> {
    let mut rep = Report::new();
    if q.is_multiple_of(2) {
        rep.skip(format!("q={q} gauss sum"), "even characteristic");
        return Ok(rep);
    }
    let f = field(q)?;
    let chr = CharSpec::standard(&f);
    let g = chr.gauss_sum()?;
    let p = f.p();
    let eps = f.epsilon()?;
    rep.check(format!("q={q} gauss sum squares to eps q"), g.pow(2) == CycInt::from_int(p, eps * q as i64), || g.pow(2).to_string());
    rep.check(format!("q={q} gauss sum times its conjugate is q"), &g * &g.conj() == CycInt::from_int(p, q as i64), String::new);
    rep.check(format!("q={q} gauss sum equals the conjugate square sum"), chr.conj_square_sum() == g, String::new);
    Ok(rep)
}

fn family_diagram(kind: SpaceKind, q: u64, budget: &Budget, seed: u64) -> Result<Report> {
    let f = field(q)?;
    let chr = CharSpec::standard(&f);
    let upper = Space::new(kind, &f)?;
    let d = Diagram::standard(&upper, &chr)?;
    let t = format!("{} -> {} q={q}", d.upper.kind(), d.lower.kind());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi_a = brute_force_phi(&d.upper, &chr, budget)?;
    let phi_b = brute_force_phi(&d.lower, &chr, budget)?;
    let e = d.pushforward_matrix()?;
    let pi_hat = d.pi_hat(&mut rng, 4)?;
    let mut rep = diagram_check(&d, &phi_a, &phi_b, &e, &pi_hat, &mut rng).prefixed(&t);
    let step = if matches!(kind, SpaceKind::Alt { .. }) { 2 } else { 1 };
    let shift = pi_hat.iter().zip(d.lower.labels()).all(|(w, l)| w.rank == l.rank + step && w.sign.is_none());
    rep.check(format!("{t} induced label map raises rank by {step}"), shift, || format!("{pi_hat:?}"));
    rep.extend(coefficients_match_pushforward(&upper, &chr)?.prefixed(&t));
    Ok(rep)
}

/// Diagram transfer identities and predicted pushforward patterns.
pub fn diagrams_report(q: u64, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new();
    let kinds = [
        SpaceKind::VecWreath { n: 3 },
        SpaceKind::VecWreath { n: 2 },
        SpaceKind::MatRect { n: 2, m: 3 },
        SpaceKind::Alt { n: 4 },
    ];
    for (i, k) in kinds.into_iter().enumerate() {
        rep.extend(family_diagram(k, q, budget, i as u64)?);
    }
    if q % 2 == 1 {
        let f = field(q)?;
        let chr = CharSpec::standard(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        rep.extend(sym_diagram_report(&f, &chr, 3, 1, budget, &mut rng)?);
        rep.extend(sym_diagram_report(&f, &chr, 3, 2, budget, &mut rng)?);
    }
    Ok(rep)
}

/// Relations of the sign blocks, conjugation under inversion and the effect
/// of twisting the character.
pub fn sym_relations_cell(c: &Cell, budget: &Budget) -> Result<Report> {
    let SpaceKind::SymGL { n } = c.kind else {
        return Ok(Report::new());
    };
    let f = field(c.q)?;
    let chr = CharSpec::standard(&f);
    let t = tag(c);
    let mut rep = relation_suite(&f, &chr, n, budget)?;
    match bar_change_holds(&f, &chr, n, budget) {
        Ok(ok) => rep.check(format!("{t} inverse-transform blocks are conjugate blocks"), ok, String::new),
        Err(Error::BudgetExceeded { .. }) => rep.skip(format!("{t} inverse-transform blocks"), "over budget"),
        Err(e) => return Err(e),
    }
    match twist_effect(&f, n, budget) {
        Ok(e) => rep.info(format!("{t} twisting the character by a non-square"), e.to_string()),
        Err(Error::BudgetExceeded { .. }) => rep.skip(format!("{t} twisting the character"), "over budget"),
        Err(e) => return Err(e),
    }
    Ok(rep)
}

fn per_cell(grid: &Grid, budget: &Budget, f: impl Fn(&Cell, &Budget) -> Result<Report> + Sync) -> Result<Report> {
    let parts: Vec<Result<Report>> = grid.cells.par_iter().map(|c| f(c, budget)).collect();
    let mut rep = Report::new();
    for p in parts {
        rep.extend(p?);
    }
    Ok(rep)
}

fn per_q(grid: &Grid, f: impl Fn(u64) -> Result<Report> + Sync) -> Result<Report> {
    let parts: Vec<Result<Report>> = grid.qs.par_iter().map(|&q| f(q)).collect();
    let mut rep = Report::new();
    for p in parts {
        rep.extend(p?);
    }
    Ok(rep)
}

/// Run a suite; output order depends only on the grid.
pub fn run_suite(suite: Suite, grid: &Grid, budget: &Budget) -> Result<Report> {
    match suite {
        Suite::Oracle => per_cell(grid, budget, oracle_cell),
        Suite::Orthogonality => per_cell(grid, budget, laws_cell),
        Suite::Multi => {
            let g = Grid {
                cells: grid.cells.iter().copied().filter(|c| !c.kind.is_symmetric()).collect(),
                qs: grid.qs.clone(),
            };
            per_cell(&g, budget, multi_cell)
        }
        Suite::Genfun => genfun_report(),
        Suite::Diagrams => {
            let qs: Vec<u64> = grid.qs.iter().copied().filter(|&q| q <= 5).collect();
            per_q(&Grid { cells: vec![], qs }, |q| diagrams_report(q, budget))
        }
        Suite::SymRelations => per_cell(grid, budget, sym_relations_cell),
        Suite::Gauss => per_q(grid, gauss_report),
        Suite::Limits => limits_report(&grid.cells.iter().map(|c| c.kind).collect::<Vec<_>>()),
        Suite::All => {
            let mut rep = Report::new();
            for s in Suite::ALL {
                rep.extend(run_suite(s, grid, budget)?);
            }
            Ok(rep)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_respects_size_cap() {
        let g = Grid::default_grid();
        assert!(g.cells.iter().all(|c| (c.q as u128).pow(kind_dim(c.kind) as u32) <= DEFAULT_MAX_SIZE));
        assert!(g.cells.contains(&Cell { kind: SpaceKind::Alt { n: 5 }, q: 3 }));
        assert!(g.cells.iter().all(|c| legal(c.kind, c.q)));
        assert!(!legal(SpaceKind::Alt { n: 2 }, 4));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn gauss_small() {
        assert!(gauss_report(9).unwrap().all_passed());
    }
}
