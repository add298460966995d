use invfourier::arith::{rat, rat_int, CycInt};
use invfourier::field::{make_field_of_order, CharSpec};
use invfourier::recursions::*;
use invfourier::spaces::{Budget, OrbitLabel, Space, SpaceKind};
use invfourier::transform::{brute_force_phi, multi_orthogonality_lhs};
use proptest::prelude::*;

fn spaces() -> Vec<(SpaceKind, u64)> {
    vec![
        (SpaceKind::VecWreath { n: 3 }, 3),
        (SpaceKind::VecWreath { n: 2 }, 4),
        (SpaceKind::MatRect { n: 2, m: 2 }, 2),
        (SpaceKind::MatRect { n: 1, m: 3 }, 3),
        (SpaceKind::MatRect { n: 2, m: 3 }, 2),
        (SpaceKind::Alt { n: 4 }, 3),
        (SpaceKind::Alt { n: 3 }, 5),
    ]
}

#[test]
fn recursion_matches_brute_force() {
    for (kind, q) in spaces() {
        let f = make_field_of_order(q).unwrap();
        let space = Space::new(kind, &f).unwrap();
        let chr = CharSpec::standard(&f);
        let brute = brute_force_phi(&space, &chr, &Budget(10_000_000)).unwrap();
        let rec = recursion_phi(kind).unwrap().to_canonical(&space, &chr).unwrap();
        assert_eq!(brute, rec, "{kind} q={q}");
        assert_eq!(closed_form_canonical(&space, &chr).unwrap(), brute, "{kind} q={q}");
    }
}

#[test]
fn family_coefficients_agree_with_pushforward() {
    for (kind, q) in spaces() {
        let f = make_field_of_order(q).unwrap();
        let space = Space::new(kind, &f).unwrap();
        let rep = coefficients_match_pushforward(&space, &CharSpec::standard(&f)).unwrap();
        assert!(rep.all_passed(), "{kind} q={q}\n{rep}");
    }
}

#[test]
fn generating_functions() {
    for n in 0..5 {
        assert!(genfun_vec_holds(n).unwrap());
    }
    for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 4)] {
        assert!(genfun_mat_holds(n, m).unwrap(), "{n} {m}");
    }
    assert!(genfun_mat_concrete_holds(2, 2, &rat_int(3)).unwrap());
}

#[test]
fn multi_orthogonality_closed_matches_lhs() {
    for (kind, q) in [(SpaceKind::VecWreath { n: 3 }, 3u64), (SpaceKind::MatRect { n: 2, m: 2 }, 3)] {
        let f = make_field_of_order(q).unwrap();
        let space = Space::new(kind, &f).unwrap();
        let phi = brute_force_phi(&space, &CharSpec::standard(&f), &Budget::default()).unwrap();
        let n = kind.n();
        for r1 in 0..=n {
            for r2 in 0..=n - r1 {
                for target in r1 + r2..=n {
                    let tuple = [OrbitLabel::rank(r1), OrbitLabel::rank(r2)];
                    let lhs = multi_orthogonality_lhs(&phi, &tuple, &OrbitLabel::rank(target)).unwrap();
                    let rhs = multi_orthogonality_closed(kind, q, &[r1, r2], target).unwrap();
                    assert_eq!(lhs, CycInt::from_int(f.p(), rhs), "{kind} ({r1},{r2}) -> {target}");
                }
            }
        }
    }
}

#[test]
fn rank_additive_counts() {
    let f = make_field_of_order(2).unwrap();
    for kind in [SpaceKind::MatRect { n: 2, m: 2 }, SpaceKind::MatRect { n: 2, m: 3 }] {
        let rep = counting_lemma_check(&Space::new(kind, &f).unwrap(), &Budget::default()).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }
}

#[test]
fn random_pascal_systems() {
    let mut n = 0;
    for (a, b, c, d, t) in [
        (rat(2, 3), rat(5, 1), rat(-7, 2), rat(3, 4), rat(2, 5)),
        (rat(1, 1), rat(2, 1), rat(3, 1), rat(5, 1), rat(1, 1)),
        (rat(-3, 1), rat(4, 7), rat(1, 9), rat(4, 7), rat(1, 1)),
    ] {
        let p = PascalParams { a, b, c, d, t, sigma: rat(3, 2) };
        let s = bpr_fpr_solve(&p, 4).unwrap();
        assert!(s.report.all_passed(), "{}", s.report);
        n += 1;
    }
    assert_eq!(n, 3);
}

fn nz() -> impl Strategy<Value = invfourier::arith::Rational> {
    (-9i64..=9, 1i64..=5).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

fn solved(p: PascalParams<invfourier::arith::Rational>, case: PascalCase) -> Result<(), TestCaseError> {
    match bpr_fpr_solve(&p, 4) {
        Ok(s) => {
            prop_assert_eq!(s.case, case);
            prop_assert!(s.report.all_passed(), "{}", s.report);
        }
        Err(invfourier::Error::ParameterPole) => {}
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn pascal_degenerate_case(a in nz(), b in nz(), c in nz(), sigma in nz()) {
        let one = rat(1, 1);
        solved(PascalParams { a, b: b.clone(), c, d: b, t: one, sigma }, PascalCase::Degenerate)?;
    }

    #[test]
    fn pascal_krawtchouk_case(a in nz(), b in nz(), c in nz(), d in nz(), sigma in nz()) {
        prop_assume!(b != d);
        solved(PascalParams { a, b, c, d, t: rat(1, 1), sigma }, PascalCase::Krawtchouk)?;
    }

    #[test]
    fn pascal_affine_case(a in nz(), b in nz(), c in nz(), d in nz(), t in nz(), sigma in nz()) {
        prop_assume!(t != rat(1, 1) && t != rat(-1, 1));
        solved(PascalParams { a, b, c, d, t, sigma }, PascalCase::AffineQ)?;
    }

    #[test]
    fn symbolic_recursion_matches_closed_form(num in -12i64..=12, den in 1i64..=6, which in 0usize..4) {
        let q = rat(num, den);
        prop_assume!(q != rat(0, 1) && q != rat(1, 1) && q != rat(-1, 1));
        let kind = [SpaceKind::VecWreath { n: 3 }, SpaceKind::MatRect { n: 2, m: 3 }, SpaceKind::Alt { n: 4 }, SpaceKind::Alt { n: 5 }][which];
        let sym = recursion_phi(kind).unwrap();
        prop_assert_eq!(sym.eval_rational(&q), closed_form_phi(kind, &q).unwrap());
    }
}
