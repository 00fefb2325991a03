#![allow(dead_code)]

use biform_core::scalar::ratio;
use biform_core::{enumerate, DoubleForm, Scalar};
use proptest::prelude::*;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=3).prop_map(|(a, b)| ratio(a, b))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 1i64..=3, any::<bool>()).prop_map(|(a, b, neg)| ratio(if neg { -a } else { a }, b))
}

/// A random homogeneous (p,q) form with up to `max_terms` terms.
pub fn form(n: usize, p: usize, q: usize, max_terms: usize) -> impl Strategy<Value = DoubleForm> {
    let rows = enumerate(n, p);
    let cols = enumerate(n, q);
    let (nr, nc) = (rows.len(), cols.len());
    prop::collection::vec((0..nr, 0..nc, scalar()), 0..=max_terms).prop_map(move |entries| {
        DoubleForm::from_terms(n, entries.into_iter().map(|(i, j, v)| (rows[i], cols[j], v)))
    })
}

/// A dense (p,q) form: every coefficient drawn independently.
pub fn dense(n: usize, p: usize, q: usize) -> impl Strategy<Value = DoubleForm> {
    let rows = enumerate(n, p);
    let cols = enumerate(n, q);
    let len = rows.len() * cols.len();
    prop::collection::vec(scalar(), len).prop_map(move |vals| {
        let mut terms = Vec::with_capacity(len);
        let mut it = vals.into_iter();
        for r in &rows {
            for c in &cols {
                terms.push((*r, *c, it.next().unwrap()));
            }
        }
        DoubleForm::from_terms(n, terms)
    })
}

pub fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(scalar(), n), n)
}

pub fn bilinear(n: usize) -> impl Strategy<Value = DoubleForm> {
    matrix(n).prop_map(|m| DoubleForm::bilinear(&m).unwrap())
}

pub fn symmetric(n: usize) -> impl Strategy<Value = DoubleForm> {
    matrix(n).prop_map(|m| {
        let h = DoubleForm::bilinear(&m).unwrap();
        &h + &h.transpose()
    })
}

/// A random algebraic curvature tensor: a sum of products of symmetric
/// (1,1) forms.
pub fn curvature(n: usize) -> impl Strategy<Value = DoubleForm> {
    prop::collection::vec((symmetric(n), symmetric(n)), 1..=2).prop_map(move |pairs| {
        pairs
            .iter()
            .fold(DoubleForm::zero(n), |acc, (h, k)| &acc + &(h * k))
    })
}

/// Forms with a random mix of bidegrees, at most `max_terms` terms each.
pub fn mixed(n: usize, max_terms: usize) -> impl Strategy<Value = DoubleForm> {
    let all: Vec<(biform_core::MultiIndex, biform_core::MultiIndex)> = (0..=n)
        .flat_map(|p| enumerate(n, p))
        .flat_map(|r| (0..=n).flat_map(|q| enumerate(n, q)).map(move |c| (r, c)))
        .collect();
    let len = all.len();
    prop::collection::vec((0..len, scalar()), 0..=max_terms).prop_map(move |entries| {
        DoubleForm::from_terms(n, entries.into_iter().map(|(k, v)| (all[k].0, all[k].1, v)))
    })
}

pub fn unit(n: usize, p: usize) -> DoubleForm {
    DoubleForm::unit(n, p)
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
