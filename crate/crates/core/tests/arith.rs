use invfourier::arith::{CycInt, QuadraticGamma};
use invfourier::field::{make_field_of_order, CharSpec, FieldElem};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cyc(p: u32) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-20i64..=20, p as usize - 1)
        .prop_map(move |c| CycInt::from_coeffs(p, c.into_iter().map(BigInt::from).collect()).unwrap())
}

fn field_order() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 25, 27])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(a in cyc(5), b in cyc(5), c in cyc(5)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(&a - &a, CycInt::zero(5));
    }

    #[test]
    fn zeta_powers_sum_to_zero(k in 0i64..7) {
        let s = (0..7).fold(CycInt::zero(7), |acc, j| acc + CycInt::zeta_pow(7, j * (k + 1)));
        let want = if (k + 1) % 7 == 0 { CycInt::from_int(7, 7) } else { CycInt::zero(7) };
        prop_assert_eq!(s, want);
    }

    #[test]
    fn quadratic_embedding_is_a_ring_map(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30, q in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let f = make_field_of_order(q).unwrap();
        let g = CharSpec::standard(&f).gauss_sum().unwrap();
        let (x, y) = (QuadraticGamma::new(a, b, q), QuadraticGamma::new(c, d, q));
        prop_assert_eq!((&x * &y).to_cyc(&g), &x.to_cyc(&g) * &y.to_cyc(&g));
        prop_assert_eq!((&x + &y).to_cyc(&g), &x.to_cyc(&g) + &y.to_cyc(&g));
        prop_assert_eq!(x.to_cyc(&g).to_quadratic(&g, q).unwrap(), x.clone());
        prop_assert_eq!(x.conj().to_cyc(&g), x.to_cyc(&g).conj());
    }

    #[test]
    fn field_laws(q in field_order(), i in 0u32..1000, j in 0u32..1000, k in 0u32..1000) {
        let f = make_field_of_order(q).unwrap();
        let qq = f.q();
        let (a, b, c) = (FieldElem(i % qq), FieldElem(j % qq), FieldElem(k % qq));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.p());
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            if f.p() != 2 && !b.is_zero() {
                prop_assert_eq!(f.sgn(f.mul(a, b)).unwrap(), f.sgn(a).unwrap() * f.sgn(b).unwrap());
            }
        }
    }
}

#[test]
fn frobenius_has_order_e() {
    for q in [4u64, 8, 9, 25, 27] {
        let f = make_field_of_order(q).unwrap();
        for x in f.elements() {
            let y = (0..f.e()).fold(x, |acc, _| f.frobenius(acc));
            assert_eq!(y, x);
        }
    }
}
