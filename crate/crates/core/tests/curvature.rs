mod common;

use biform_core::curvature::{alt_bianchi_constant, bianchi_power, pontrjagin_denominator};
use biform_core::linalg::cayley_orthogonal;
use biform_core::oracle::alt_permutation_sum;
use biform_core::scalar::{factorial, int, ratio, Scalar};
use biform_core::{
    alt, bianchi, change_basis, constant_curvature, enumerate, is_pure_in_basis, pontrjagin_form,
    pontrjagin_product, product_of_bilinears, pure_curvature, CurvatureTensor, DoubleForm, Matrix,
    MultiIndex,
};
use common::*;
use proptest::prelude::*;

fn rotation(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), n * (n - 1) / 2).prop_map(move |vals| {
        let mut s = Matrix::zeros(n, n);
        let mut it = vals.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                s[(i, j)] = v.clone();
                s[(j, i)] = -v;
            }
        }
        cayley_orthogonal(&s).unwrap()
    })
}

/// A symmetric form that is diagonal in the basis given by the columns of `q`.
fn diagonal_in(q: &Matrix, diag: &[Scalar]) -> DoubleForm {
    change_basis(&DoubleForm::diagonal(diag), &q.transpose()).unwrap()
}

fn pure_lambda(n: usize) -> impl Strategy<Value = Vec<((usize, usize), Scalar)>> {
    let pairs: Vec<(usize, usize)> = enumerate(n, 2)
        .into_iter()
        .map(|k| {
            let v = k.to_vec();
            (v[0], v[1])
        })
        .collect();
    let len = pairs.len();
    prop::collection::vec(scalar(), len)
        .prop_map(move |vals| pairs.iter().copied().zip(vals).collect())
}

/// `Σ λ_ab h_a h_b` for symmetric forms sharing the eigenbasis `q`.
fn commuting_product_sum(q: &Matrix, diags: &[Vec<Scalar>], lambda: &[Scalar]) -> DoubleForm {
    let n = q.rows();
    let hs: Vec<DoubleForm> = diags.iter().map(|d| diagonal_in(q, d)).collect();
    let mut acc = DoubleForm::zero(n);
    let mut it = lambda.iter();
    for a in 0..hs.len() {
        for b in a..hs.len() {
            let term = product_of_bilinears(&[hs[a].clone(), hs[b].clone()]).unwrap();
            acc += &term.scale(it.next().unwrap());
        }
    }
    acc
}

fn witness(n: usize) -> impl Strategy<Value = (Matrix, DoubleForm)> {
    (
        rotation(n),
        prop::collection::vec(prop::collection::vec(scalar(), n), 3),
        prop::collection::vec(nonzero_scalar(), 6),
    )
        .prop_map(|(q, diags, lambda)| {
            let r = commuting_product_sum(&q, &diags, &lambda);
            (q, r)
        })
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn alt_matches_permutation_sum(
        (w, p) in (2usize..=5)
            .prop_flat_map(|n| (Just(n), 0..=2usize.min(n / 2)))
            .prop_flat_map(|(n, p)| (form(n, p, p, 12), Just(p)))
    ) {
        let expected = alt_permutation_sum(&w, p);
        let got = alt(&w);
        if w.is_zero() {
            prop_assert!(got.map_or(true, |f| f.is_zero()));
        } else {
            prop_assert_eq!(got.unwrap(), expected);
        }
    }

    #[test]
    fn alt_is_a_multiple_of_iterated_bianchi(
        (w, p) in (2usize..=5)
            .prop_flat_map(|n| (Just(n), 1..=2usize.min(n / 2)))
            .prop_flat_map(|(n, p)| (form(n, p, p, 12), Just(p)))
    ) {
        prop_assume!(!w.is_zero());
        let s = bianchi_power(&w).unwrap();
        prop_assert_eq!(alt_permutation_sum(&w, p), s.scale(&alt_bianchi_constant(p)));
    }

    #[test]
    fn bianchi_kernel_is_closed_and_alternates_to_zero(
        (hs, ks) in (2usize..=6).prop_flat_map(|n| (
            prop::collection::vec(symmetric(n), 1..=3),
            prop::collection::vec(symmetric(n), 1..=3),
        ))
    ) {
        let n = hs[0].n();
        let a = product_of_bilinears(&hs).unwrap();
        let b = product_of_bilinears(&ks).unwrap();
        prop_assert!(bianchi(&a).is_zero());
        prop_assert!(bianchi(&b).is_zero());
        let ab = &a * &b;
        prop_assert!(bianchi(&ab).is_zero());
        prop_assert!(alt(&a).unwrap().is_zero());
        if 2 * (hs.len() + ks.len()) <= n {
            prop_assert!(alt(&ab).unwrap().is_zero());
        }
    }

    #[test]
    fn random_curvature_is_valid(r in (2usize..=6).prop_flat_map(curvature)) {
        prop_assert!(CurvatureTensor::new(r.clone()).is_ok());
        prop_assert_eq!(r.transpose(), r.clone());
    }

    #[test]
    fn pure_curvature_has_vanishing_first_pontrjagin_form(
        (lambda, q) in (4usize..=6).prop_flat_map(|n| (pure_lambda(n), rotation(n)))
    ) {
        let n = q.rows();
        let r = pure_curvature(n, &lambda).unwrap();
        prop_assert!(is_pure_in_basis(r.form(), &Matrix::identity(n)).unwrap().pure);
        let p1 = pontrjagin_form(&r, 1).unwrap();
        prop_assert!(p1.form.is_zero());
        // the same tensor written in a rotated basis is still pure there
        let rotated = change_basis(r.form(), &q.transpose()).unwrap();
        let rc = CurvatureTensor::new(rotated.clone()).unwrap();
        prop_assert!(is_pure_in_basis(&rotated, &q).unwrap().pure);
        prop_assert!(pontrjagin_form(&rc, 1).unwrap().form.is_zero());
    }

    #[test]
    fn witnesses_pure_only_in_a_rotated_basis((q, r) in witness(4)) {
        let n = 4;
        let rc = CurvatureTensor::new(r.clone()).unwrap();
        prop_assert!(is_pure_in_basis(&r, &q).unwrap().pure);
        prop_assert!(is_pure_in_basis(&r.pow(2), &q).unwrap().pure);
        prop_assert!(is_pure_in_basis(&r.pow(2), &Matrix::identity(n)).unwrap().pure);
        prop_assert!(alt(&r.compose(&r).unwrap()).unwrap().is_zero());
        prop_assert!(pontrjagin_form(&rc, 1).unwrap().form.is_zero());
    }

    #[test]
    fn stehney_instances(
        (a, c) in (4usize..=6).prop_flat_map(|n| (symmetric(n), nonzero_scalar()))
    ) {
        // R = c A², so R^p = c^p A^{2p}
        let r = (&a * &a).scale(&c);
        prop_assert!(CurvatureTensor::new(r.clone()).is_ok());
        prop_assert!(alt(&r.compose(&r).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn span_and_diagonal_representations_agree(
        (q, diags, lambda) in (3usize..=5).prop_flat_map(|n| (
            rotation(n),
            prop::collection::vec(prop::collection::vec(scalar(), n), 2),
            prop::collection::vec(scalar(), 3),
        ))
    ) {
        let n = q.rows();
        // span of products ⇒ diagonal in the common eigenbasis
        let r = commuting_product_sum(&q, &diags, &lambda);
        let report = is_pure_in_basis(&r, &q).unwrap();
        prop_assert!(report.pure);
        // diagonal ⇒ span of products of the rank-one forms f_i ⊗ f_i
        let rank_one: Vec<DoubleForm> = (0..n)
            .map(|i| {
                let mut d = vec![int(0); n];
                d[i] = int(1);
                diagonal_in(&q, &d)
            })
            .collect();
        for a in &rank_one {
            for b in &rank_one {
                prop_assert_eq!(a.compose(b).unwrap(), b.compose(a).unwrap());
            }
        }
        let mut rebuilt = DoubleForm::zero(n);
        for (i, j, v) in report.transformed.terms() {
            let idx = i.to_vec();
            prop_assert_eq!(i, j);
            let prod = product_of_bilinears(&[rank_one[idx[0] - 1].clone(), rank_one[idx[1] - 1].clone()]).unwrap();
            rebuilt += &prod.scale(v);
        }
        prop_assert_eq!(rebuilt, r);
    }

    #[test]
    fn alternation_turns_products_into_wedges(
        (a, b) in (4usize..=5)
            .prop_flat_map(|n| (Just(n), 1..=2usize, 1..=2usize))
            .prop_filter("fits", |(n, a, b)| 2 * (a + b) <= *n + 1)
            .prop_flat_map(|(n, a, b)| (form(n, a, a, 8), form(n, b, b, 8)))
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let pa = a.bidegree().map_or(1, |d| d.0);
        let pb = b.bidegree().map_or(1, |d| d.0);
        let p = pa + pb;
        let sq = |k: usize| Scalar::from_integer(factorial(k) * factorial(k));
        let mut c = sq(pa) * sq(pb) * Scalar::from_integer(factorial(2 * p))
            / (Scalar::from_integer(factorial(2 * pa) * factorial(2 * pb)) * sq(p));
        if (pa * pb) % 2 == 1 {
            c = -c;
        }
        let lhs = alt(&a).unwrap().wedge(&alt(&b).unwrap()).unwrap();
        let rhs = alt(&(&a * &b)).unwrap().scale(&c);
        if lhs.is_zero() {
            prop_assert!(rhs.is_zero());
        } else {
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn three_dimensional_curvature_is_a_product_with_the_metric(r in curvature(3)) {
        let g = DoubleForm::metric(3);
        let c = r.contraction();
        let trace = c.contraction().scalar_part();
        let a = &c - &g.scale(&(trace / int(4)));
        prop_assert_eq!(&a * &g, r);
    }
}

#[test]
fn generic_curvature_in_dimension_four_has_nonzero_first_pontrjagin_form() {
    // every curvature tensor in dimension 4 is 2-pure, yet P_1 need not vanish
    let h = DoubleForm::bilinear(&[
        vec![int(1), int(2), int(0), int(1)],
        vec![int(2), int(0), int(1), int(0)],
        vec![int(0), int(1), int(3), int(1)],
        vec![int(1), int(0), int(1), int(-1)],
    ])
    .unwrap();
    let k = DoubleForm::diagonal(&[int(1), int(2), int(3), int(4)]);
    let r = &(&h * &k) + &(&h * &h).scale(&ratio(1, 2));
    let rc = CurvatureTensor::new(r.clone()).unwrap();
    let r2 = r.pow(2);
    assert!(is_pure_in_basis(&r2, &Matrix::identity(4)).unwrap().pure);
    assert!(!is_pure_in_basis(&r, &Matrix::identity(4)).unwrap().pure);
    let p1 = pontrjagin_form(&rc, 1).unwrap();
    assert!(!p1.form.is_zero());
    let full = MultiIndex::full(4);
    assert_eq!(
        p1.form.coefficient(full),
        alt_permutation_sum(&r.compose(&r).unwrap(), 2).coefficient(full)
    );
}

#[test]
fn pure_terms_compose_diagonally() {
    let n = 4;
    let idx = enumerate(n, 2);
    for i in &idx {
        for j in &idx {
            let a = DoubleForm::from_terms(n, [(*i, *i, int(1))]);
            let b = DoubleForm::from_terms(n, [(*j, *j, int(1))]);
            let expected = if i == j { a.clone() } else { DoubleForm::zero(n) };
            assert_eq!(a.compose(&b).unwrap(), expected);
        }
    }
    let lambda: Vec<_> = idx.iter().enumerate().map(|(k, i)| (*i, *i, int(k as i64 + 1))).collect();
    let w = DoubleForm::from_terms(n, lambda);
    assert!(alt(&w.compose(&w).unwrap()).unwrap().is_zero());
}

#[test]
fn product_formula_agrees_with_single_forms() {
    let h = DoubleForm::bilinear(&[
        vec![int(1), int(2), int(0), int(1)],
        vec![int(2), int(0), int(1), int(0)],
        vec![int(0), int(1), int(3), int(1)],
        vec![int(1), int(0), int(1), int(-1)],
    ])
    .unwrap();
    let r = CurvatureTensor::new(&h * &DoubleForm::diagonal(&[int(1), int(2), int(3), int(4)])).unwrap();
    let single = pontrjagin_form(&r, 1).unwrap();
    let product = pontrjagin_product(&r, &[1]).unwrap();
    assert_eq!(single, product);
    assert_eq!(pontrjagin_denominator(1).rational, int(4));
    assert_eq!(
        pontrjagin_product(&r, &[0]).unwrap().form,
        biform_core::ExteriorForm::from_terms(4, 0, [(MultiIndex::EMPTY, int(1))])
    );
    let c = constant_curvature(4, int(3));
    assert!(pontrjagin_form(&c, 1).unwrap().form.is_zero());
}

#[test]
fn square_of_first_pontrjagin_form_in_dimension_eight() {
    let n = 8;
    let a = DoubleForm::bilinear(
        &(0..n)
            .map(|i| (0..n).map(|j| int(if i == j { i as i64 - 3 } else if i + j == 7 || i + 1 == j || j + 1 == i { 1 } else { 0 })).collect())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let d = DoubleForm::diagonal(&(0..n).map(|i| int((i % 3) as i64 + 1)).collect::<Vec<_>>());
    let r = CurvatureTensor::new(&a * &d).unwrap();
    let p1 = pontrjagin_form(&r, 1).unwrap();
    let squared = p1.form.wedge(&p1.form).unwrap();
    let product = pontrjagin_product(&r, &[2]).unwrap();
    let ratio_c = p1.normalization.rational.clone() * p1.normalization.rational.clone() / product.normalization.rational.clone();
    assert_eq!(product.normalization.pi_power, 2 * p1.normalization.pi_power);
    assert!(!squared.is_zero());
    assert_eq!(product.form, squared.scale(&ratio_c));
}
