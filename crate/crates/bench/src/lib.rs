//! Deterministic inputs for the kernel benchmarks.

use biform_core::scalar::ratio;
use biform_core::{enumerate, DoubleForm, Scalar};

/// A dense (1,1) form with small, varied rational entries.
pub fn bilinear(n: usize) -> DoubleForm {
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ratio(((3 * i + 5 * j) % 11) as i64 - 5, 1 + ((i + j) % 3) as i64))
                .collect()
        })
        .collect();
    DoubleForm::bilinear(&rows).expect("square matrix")
}

/// A symmetric (1,1) form.
pub fn symmetric(n: usize) -> DoubleForm {
    let h = bilinear(n);
    &h + &h.transpose()
}

/// A dense (p,p) form touching every basis pair.
pub fn dense_square(n: usize, p: usize) -> DoubleForm {
    let idx = enumerate(n, p);
    let mut terms = Vec::new();
    for (a, r) in idx.iter().enumerate() {
        for (b, c) in idx.iter().enumerate() {
            terms.push((*r, *c, ratio(((7 * a + 3 * b) % 13) as i64 - 6, 1 + (a % 2) as i64)));
        }
    }
    DoubleForm::from_terms(n, terms)
}

/// A curvature tensor built as a sum of products of symmetric forms.
pub fn curvature(n: usize) -> DoubleForm {
    let h = symmetric(n);
    let k = bilinear(n).transpose() + bilinear(n);
    &(&h * &k) + &(&k * &k)
}
