//! Seeded random inputs for identity trials.
//!
//! Coefficients are rationals with numerators in `[-9, 9]` and denominators
//! in `{1, 2, 3}`. Every generated input is recorded under a label so a
//! failing trial can be written out as a counterexample.

use std::collections::BTreeMap;

use biform_core::linalg::cayley_orthogonal;
use biform_core::scalar::ratio;
use biform_core::{change_basis, enumerate, product_of_bilinears, DoubleForm, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::document::{Kind, TensorDocument};

/// FNV-1a, used to give every identity its own stream family.
fn fnv1a(text: &str) -> u64 {
    text.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub struct Trial {
    rng: ChaCha8Rng,
    pub n: usize,
    inputs: Vec<(String, TensorDocument)>,
}

impl Trial {
    pub fn new(identity: &str, seed: u64, trial: usize, n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(identity));
        rng.set_stream(trial as u64);
        Trial {
            rng,
            n,
            inputs: Vec::new(),
        }
    }

    pub fn inputs(&self) -> &[(String, TensorDocument)] {
        &self.inputs
    }

    pub fn into_inputs(self) -> Vec<(String, TensorDocument)> {
        self.inputs
    }

    fn record(&mut self, label: &str, kind: Kind, form: &DoubleForm) {
        self.inputs
            .push((label.to_string(), TensorDocument::form(kind, form.clone())));
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn scalar(&mut self) -> Scalar {
        ratio(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        let a: i64 = self.rng.gen_range(1..=9);
        let sign = if self.coin() { 1 } else { -1 };
        ratio(sign * a, self.rng.gen_range(1..=3))
    }

    fn raw_form(&mut self, p: usize, q: usize, max_terms: usize) -> DoubleForm {
        let rows = enumerate(self.n, p);
        let cols = enumerate(self.n, q);
        let count = self.range(1, max_terms.max(1));
        let mut terms = BTreeMap::new();
        for _ in 0..count {
            let r = rows[self.range(0, rows.len() - 1)];
            let c = cols[self.range(0, cols.len() - 1)];
            terms.insert((r, c), self.nonzero_scalar());
        }
        DoubleForm::from_terms(self.n, terms.into_iter().map(|((r, c), v)| (r, c, v)))
    }

    /// A sparse homogeneous (p,q) form with between 1 and `max_terms` terms.
    pub fn form(&mut self, label: &str, p: usize, q: usize, max_terms: usize) -> DoubleForm {
        let w = self.raw_form(p, q, max_terms);
        self.record(label, Kind::Doubleform, &w);
        w
    }

    /// A (p,q) form with every coefficient drawn independently.
    pub fn dense(&mut self, label: &str, p: usize, q: usize) -> DoubleForm {
        let rows = enumerate(self.n, p);
        let cols = enumerate(self.n, q);
        let mut terms = Vec::with_capacity(rows.len() * cols.len());
        for r in &rows {
            for c in &cols {
                terms.push((*r, *c, self.scalar()));
            }
        }
        let w = DoubleForm::from_terms(self.n, terms);
        self.record(label, Kind::Doubleform, &w);
        w
    }

    /// A form whose terms have independently chosen bidegrees.
    pub fn mixed(&mut self, label: &str, max_terms: usize) -> DoubleForm {
        let n = self.n;
        let count = self.range(1, max_terms.max(1));
        let mut terms = BTreeMap::new();
        for _ in 0..count {
            let rows = enumerate(n, self.range(0, n));
            let cols = enumerate(n, self.range(0, n));
            let r = rows[self.range(0, rows.len() - 1)];
            let c = cols[self.range(0, cols.len() - 1)];
            terms.insert((r, c), self.nonzero_scalar());
        }
        let w = DoubleForm::from_terms(n, terms.into_iter().map(|((r, c), v)| (r, c, v)));
        self.record(label, Kind::Doubleform, &w);
        w
    }

    fn raw_matrix(&mut self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|_| (0..self.n).map(|_| self.scalar()).collect()).collect()
    }

    pub fn bilinear(&mut self, label: &str) -> DoubleForm {
        let h = DoubleForm::bilinear(&self.raw_matrix()).expect("square matrix");
        self.record(label, Kind::Bilinear, &h);
        h
    }

    pub fn symmetric(&mut self, label: &str) -> DoubleForm {
        let h = DoubleForm::bilinear(&self.raw_matrix()).expect("square matrix");
        let s = &h + &h.transpose();
        self.record(label, Kind::Bilinear, &s);
        s
    }

    /// A sum of one or two products of symmetric (1,1) forms.
    pub fn curvature(&mut self, label: &str) -> DoubleForm {
        let n = self.n;
        let count = self.range(1, 2);
        let mut r = DoubleForm::zero(n);
        for _ in 0..count {
            let h = DoubleForm::bilinear(&self.raw_matrix()).expect("square matrix");
            let k = DoubleForm::bilinear(&self.raw_matrix()).expect("square matrix");
            r += &(&(&h + &h.transpose()) * &(&k + &k.transpose()));
        }
        self.record(label, Kind::Curvature, &r);
        r
    }

    /// A rational orthogonal matrix, the Cayley transform of a random
    /// skew matrix.
    pub fn rotation(&mut self, label: &str) -> Matrix {
        let n = self.n;
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.scalar();
                s[(i, j)] = v.clone();
                s[(j, i)] = -v;
            }
        }
        let q = cayley_orthogonal(&s).expect("I + S is invertible for skew S");
        self.inputs
            .push((label.to_string(), TensorDocument::basis(q.clone())));
        q
    }

    /// A symmetric form that is diagonal in the basis given by the columns
    /// of `q`.
    pub fn diagonal_in(&mut self, label: &str, q: &Matrix) -> DoubleForm {
        let diag: Vec<Scalar> = (0..self.n).map(|_| self.scalar()).collect();
        let h = change_basis(&DoubleForm::diagonal(&diag), &q.transpose()).expect("square basis");
        self.record(label, Kind::Bilinear, &h);
        h
    }

    /// `Σ λ_ab h_a h_b` over `count` symmetric forms sharing the eigenbasis `q`.
    pub fn commuting_product_sum(&mut self, label: &str, q: &Matrix, count: usize) -> DoubleForm {
        let hs: Vec<DoubleForm> = (0..count)
            .map(|a| self.diagonal_in(&format!("{label}.h{}", a + 1), q))
            .collect();
        let mut r = DoubleForm::zero(self.n);
        for a in 0..count {
            for b in a..count {
                let c = self.nonzero_scalar();
                let term = product_of_bilinears(&[hs[a].clone(), hs[b].clone()]).expect("symmetric factors");
                r += &term.scale(&c);
            }
        }
        self.record(label, Kind::Curvature, &r);
        r
    }

    /// Sectional coefficients `λ_ij` of a curvature tensor that is pure in
    /// the standard basis.
    pub fn pure_lambda(&mut self) -> Vec<((usize, usize), Scalar)> {
        enumerate(self.n, 2)
            .into_iter()
            .map(|k| {
                let v = k.to_vec();
                ((v[0], v[1]), self.scalar())
            })
            .collect()
    }

    pub fn note(&mut self, label: &str, kind: Kind, form: &DoubleForm) {
        self.record(label, kind, form);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let a = Trial::new("x", 7, 0, 4).bilinear_for_test();
        let b = Trial::new("x", 7, 0, 4).bilinear_for_test();
        let c = Trial::new("x", 7, 1, 4).bilinear_for_test();
        let d = Trial::new("y", 7, 0, 4).bilinear_for_test();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn generated_inputs_have_their_shapes() {
        let mut t = Trial::new("shapes", 1, 0, 4);
        let r = t.curvature("r");
        assert!(biform_core::CurvatureTensor::new(r).is_ok());
        let q = t.rotation("q");
        assert!(q.check_orthogonal().is_ok());
        let w = t.commuting_product_sum("w", &q, 3);
        assert!(biform_core::is_pure_in_basis(&w, &q).unwrap().pure);
        assert_eq!(t.inputs().len(), 6);
    }

    impl Trial {
        fn bilinear_for_test(mut self) -> DoubleForm {
            self.bilinear("h")
        }
    }
}
