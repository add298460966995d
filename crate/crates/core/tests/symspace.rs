use invfourier::arith::CycInt;
use invfourier::field::{make_field_of_order, CharSpec};
use invfourier::spaces::Budget;
use invfourier::symspace::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const QS: [u64; 3] = [3, 5, 7];

#[test]
fn closed_blocks_match_brute_force() {
    for q in QS {
        let f = make_field_of_order(q).unwrap();
        let chr = CharSpec::standard(&f);
        for n in 1..=3 {
            let rep = psi_closed_check(&f, &chr, n, &Budget::default()).unwrap();
            assert!(rep.all_passed(), "{rep}");
        }
    }
}

#[test]
fn relations_hold() {
    for q in QS {
        let f = make_field_of_order(q).unwrap();
        let chr = CharSpec::standard(&f);
        for n in 1..=3 {
            let rep = relation_suite(&f, &chr, n, &Budget(2_000_000)).unwrap();
            assert!(rep.all_passed(), "{rep}");
        }
    }
}

#[test]
fn sign_sign_entry_at_size_two() {
    let f = make_field_of_order(3).unwrap();
    let psi = psi_brute(&f, &CharSpec::standard(&f), 2, &Budget::default()).unwrap();
    assert_eq!(psi.get(3, 2, 1), Some(&CycInt::from_int(3, -3)));
}

#[test]
fn diagram_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in QS {
        let f = make_field_of_order(q).unwrap();
        let chr = CharSpec::standard(&f);
        for (n, which) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
            if q > 3 && n == 4 {
                continue;
            }
            let rep = sym_diagram_report(&f, &chr, n, which, &Budget::default(), &mut rng).unwrap();
            assert!(rep.all_passed(), "{rep}");
        }
    }
}

#[test]
fn diagram_entries_at_small_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = make_field_of_order(3).unwrap();
    let chr = CharSpec::standard(&f);
    let gamma = chr.gauss_sum().unwrap();
    let (_, m) = sym_diagram_matrices(&f, &chr, 2, 1, &mut rng).unwrap();
    assert_eq!(m.e.get(2, 1, 1), Some(&gamma));
    let (_, m) = sym_diagram_matrices(&f, &chr, 3, 2, &mut rng).unwrap();
    assert_eq!(m.e.get(1, 0, 2), Some(&CycInt::from_int(3, -3)));
}

#[test]
fn scaled_action_keeps_even_signs() {
    for q in QS {
        let f = make_field_of_order(q).unwrap();
        let chr = CharSpec::standard(&f);
        for n in 1..=3 {
            let brute = scaled_brute(&f, &chr, n, &Budget::default()).unwrap();
            let psi = psi_brute(&f, &chr, n, &Budget::default()).unwrap();
            assert_eq!(scaled_restriction(&psi), brute, "n={n} q={q}");
        }
    }
}

#[test]
fn inverse_transform_is_conjugate() {
    for q in QS {
        let f = make_field_of_order(q).unwrap();
        let chr = CharSpec::standard(&f);
        for n in 1..=3 {
            assert!(bar_change_holds(&f, &chr, n, &Budget::default()).unwrap(), "n={n} q={q}");
        }
    }
}

#[test]
fn twisting_swaps_odd_row_signs() {
    for q in QS {
        let f = make_field_of_order(q).unwrap();
        for n in 1..=3 {
            assert_eq!(twist_effect(&f, n, &Budget::default()).unwrap(), TwistEffect::OddRowSignsSwap, "n={n} q={q}");
        }
    }
}
