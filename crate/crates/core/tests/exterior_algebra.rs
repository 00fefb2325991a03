mod common;

use biform_core::oracle::evaluate;
use biform_core::scalar::{factorial_q, int};
use biform_core::{enumerate, DoubleForm, MultiIndex};
use common::*;
use proptest::prelude::*;

fn bidegrees(max_n: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), 0..n)).prop_flat_map(|(n, p)| (Just(n), Just(p), 0..n - p))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn metric_multiplication_is_adjoint_to_contraction(
        (w1, w2) in bidegrees(5).prop_flat_map(|(n, p, q)| (form(n, p, q, 6), form(n, p + 1, q + 1, 6)))
    ) {
        let g = DoubleForm::metric(w1.n());
        prop_assert_eq!((&g * &w1).inner_product(&w2).unwrap(), w1.inner_product(&w2.contraction()).unwrap());
    }

    #[test]
    fn exterior_product_is_graded_commutative(
        (a, b) in (2usize..=4)
            .prop_flat_map(|n| (Just(n), 0..=n, 0..=n, 0..=n, 0..=n))
            .prop_flat_map(|(n, p, q, r, s)| (form(n, p, q, 4), form(n, r, s, 4)))
    ) {
        let (p, q) = a.bidegree().unwrap_or((0, 0));
        let (r, s) = b.bidegree().unwrap_or((0, 0));
        let ab = &a * &b;
        let ba = &b * &a;
        if (p * r + q * s) % 2 == 0 {
            prop_assert_eq!(ab.clone(), ba);
        } else {
            prop_assert_eq!(ab.clone(), -ba);
        }
        prop_assert_eq!(ab.transpose(), &a.transpose() * &b.transpose());
    }

    #[test]
    fn exterior_product_is_associative(
        (a, b, c) in (2usize..=4).prop_flat_map(|n| (mixed(n, 4), mixed(n, 4), mixed(n, 4)))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn exterior_product_matches_pointwise_definition(
        (a, b) in (3usize..=4).prop_flat_map(|n| (form(n, 1, 2, 4), form(n, 1, 1, 4)))
    ) {
        // (ab)(x1∧x2, y1∧y2∧y3) via the shuffle expansion of each slot
        let n = a.n();
        let ab = &a * &b;
        for r in enumerate(n, 2) {
            for c in enumerate(n, 3) {
                let (x, y) = (r.to_vec(), c.to_vec());
                let mut expected = int(0);
                for (xi, xs) in [(0usize, 1i64), (1, -1)] {
                    for (yk, ys) in [(0usize, 1i64), (1, -1), (2, 1)] {
                        let ya: Vec<usize> = y.iter().enumerate().filter(|(k, _)| *k != yk).map(|(_, v)| *v).collect();
                        expected += int(xs * ys)
                            * evaluate(&b, &[x[1 - xi]], &[y[yk]])
                            * evaluate(&a, &[x[xi]], &ya);
                    }
                }
                prop_assert_eq!(ab.coefficient(r, c), expected);
            }
        }
    }

    #[test]
    fn transpose_is_an_involution(w in (2usize..=5).prop_flat_map(|n| mixed(n, 8))) {
        prop_assert_eq!(w.transpose().transpose(), w);
    }
}

#[test]
fn contraction_of_metric_powers() {
    for n in 1..=6 {
        for p in 1..=n {
            let lhs = DoubleForm::metric_power(n, p).contraction();
            let rhs = DoubleForm::metric_power(n, p - 1).scale(&int((p * (n - p + 1)) as i64));
            assert_eq!(lhs, rhs, "n={n} p={p}");
        }
    }
}

#[test]
fn unit_forms_are_the_identity_on_basis_pairs() {
    for n in 1..=5 {
        for p in 0..=n {
            let u = DoubleForm::metric_power(n, p).scale(&factorial_q(p).recip());
            assert_eq!(u.len(), enumerate(n, p).len());
            for i in enumerate(n, p) {
                assert_eq!(u.coefficient(i, i), int(1));
            }
        }
        assert!(DoubleForm::metric_power(n, n + 1).is_zero());
    }
    assert_eq!(DoubleForm::metric_power(3, 0), DoubleForm::one(3));
    let e = MultiIndex::from_indices(&[1, 2]);
    assert_eq!(DoubleForm::metric_power(2, 2).coefficient(e, e), int(2));
}
