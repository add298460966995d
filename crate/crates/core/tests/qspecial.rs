use invfourier::arith::{binomial, rat, rat_int, rat_pow, Rational};
use invfourier::qspecial::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q_value() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=4)
        .prop_map(|(n, d)| rat(n, d))
        .prop_filter("q not 0 or a root of unity of small order", |q| !q.is_zero() && *q != rat(1, 1) && *q != rat(-1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_pascal_rule(n in 1i64..8, k in 1i64..8, q in q_value()) {
        prop_assume!(k < n);
        let lhs = gauss_binom(n, k, &q).unwrap();
        let rhs = gauss_binom(n - 1, k - 1, &q).unwrap() + rat_pow(&q, k) * gauss_binom(n - 1, k, &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gauss_binom_symmetric(n in 0i64..9, k in 0i64..9, q in q_value()) {
        prop_assume!(k <= n);
        prop_assert_eq!(gauss_binom(n, k, &q).unwrap(), gauss_binom(n, n - k, &q).unwrap());
    }

    #[test]
    fn gauss_binom_polynomial_agrees(n in 0i64..8, k in 0i64..8, q in q_value()) {
        prop_assume!(k <= n);
        prop_assert_eq!(gauss_binom_poly(n, k).unwrap().eval(&q), gauss_binom(n, k, &q).unwrap());
    }

    #[test]
    fn gauss_binom_at_one_is_binomial(n in 0i64..10, k in 0i64..10) {
        prop_assume!(k <= n);
        prop_assert_eq!(gauss_binom_poly(n, k).unwrap().eval(&rat(1, 1)), Rational::from_integer(binomial(n, k)));
    }

    #[test]
    fn q_pochhammer_splits(an in -5i64..=5, ad in 1i64..=3, j in 0i64..5, k in 0i64..5, q in q_value()) {
        let a = rat(an, ad);
        let whole = q_pochhammer(&a, &q, j + k).unwrap();
        let split = q_pochhammer(&a, &q, j).unwrap() * q_pochhammer(&(&a * rat_pow(&q, j)), &q, k).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn krawtchouk_duality(n in 0i64..7, y in 0i64..7, x in 0i64..7, pn in 1i64..=9, pd in 2i64..=10) {
        prop_assume!(y <= n && x <= n);
        let p = rat(pn, pd);
        prop_assert_eq!(krawtchouk(y, x, &p, n).unwrap(), krawtchouk(x, y, &p, n).unwrap());
    }

    #[test]
    fn krawtchouk_orthogonality(n in 0i64..6, y in 0i64..6, z in 0i64..6, pn in 1i64..=9, pd in 2i64..=10) {
        prop_assume!(y <= n && z <= n && pn < pd);
        let p = rat(pn, pd);
        let one = Rational::one();
        let sum: Rational = (0..=n)
            .map(|x| {
                Rational::from_integer(binomial(n, x)) * rat_pow(&p, x) * rat_pow(&(&one - &p), n - x)
                    * krawtchouk(y, x, &p, n).unwrap() * krawtchouk(z, x, &p, n).unwrap()
            })
            .sum();
        let want = if y == z {
            rat_pow(&((&one - &p) / &p), y) / Rational::from_integer(binomial(n, y))
        } else {
            Rational::zero()
        };
        prop_assert_eq!(sum, want);
    }

    #[test]
    fn affine_q_krawtchouk_orthogonality(n in 0i64..5, y in 0i64..5, z in 0i64..5, pn in 1i64..=5, pd in 2i64..=7, qi in 2i64..=5) {
        prop_assume!(y <= n && z <= n);
        let q = rat_int(qi);
        // Parameter a = p q with 0 < p q^k != 1 for the relevant k.
        let a = rat(pn, pd) * &q;
        prop_assume!((0..=n).all(|k| rat_pow(&q, k) * &a != Rational::one()));
        let qq = |k| q_pochhammer(&q, &q, k).unwrap();
        let sum: Rational = (0..=n)
            .map(|x| {
                q_pochhammer(&a, &q, x).unwrap() * qq(n) / (qq(x) * qq(n - x)) * rat_pow(&a, -x)
                    * affine_q_krawtchouk(y, x, &a, n, &q).unwrap() * affine_q_krawtchouk(z, x, &a, n, &q).unwrap()
            })
            .sum();
        let want = if y == z {
            rat_pow(&a, y - n) * qq(y) * qq(n - y) / (q_pochhammer(&a, &q, y).unwrap() * qq(n))
        } else {
            Rational::zero()
        };
        prop_assert_eq!(sum, want);
    }
}

#[test]
fn out_of_range_and_poles() {
    assert!(krawtchouk(3, 0, &rat(1, 2), 2).is_err());
    assert!(gauss_binom(2, 3, &rat_int(3)).is_err());
    assert_eq!(gauss_binom_or_zero(2, 3, &rat_int(3)).unwrap(), Rational::zero());
    assert_eq!(gauss_binom(4, 2, &rat_int(2)).unwrap(), rat_int(35));
}
