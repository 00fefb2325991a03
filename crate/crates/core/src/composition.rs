//! The composition (Greub) product and the isomorphism between double forms
//! and linear maps of the exterior algebra.
//!
//! The product on simple forms is
//! `(θ1⊗θ2) ∘ (θ3⊗θ4) = ⟨θ1, θ4⟩ θ3⊗θ2`, so `D^{p,q} ∘ D^{r,s}` lands in
//! `D^{r,q}` and vanishes unless `p = s`.
//!
//! Operator blocks use the bilinear-form reading: a form `ω` of bidegree
//! `(q, p)` becomes the `C(n,p) × C(n,q)` matrix with entry
//! `(I, J) = ω(e_J, e_I)`, so that `ω(e_J, ·)` is column `J`. With this
//! orientation `T(ω1 ∘ ω2) = T(ω1) · T(ω2)` as a plain matrix product.
//!
//! Note that [`DoubleForm::inner_product`] is the Euclidean inner product
//! `⟨ω1, ω2⟩ = c^p(ω2ᵗ ∘ ω1)/p!`, which differs from the pairing
//! `c^p(ω2 ∘ ω1)/p!` used in mixed exterior algebra unless one argument is
//! symmetric.

use std::collections::HashMap;

use num_traits::Zero;

use crate::combinatorics::{enumerate, MultiIndex};
use crate::double_form::{same_dim, DoubleForm};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

impl DoubleForm {
    /// `self ∘ other`, computed term by term.
    pub fn compose(&self, other: &DoubleForm) -> Result<DoubleForm> {
        let n = same_dim(self, other)?;
        // Index the left factor by its first slot.
        let mut by_row: HashMap<MultiIndex, Vec<(MultiIndex, &Scalar)>> = HashMap::new();
        for (r, c, v) in self.terms() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Vec::new();
        for (k, l, b) in other.terms() {
            if let Some(left) = by_row.get(&l) {
                for (j, a) in left {
                    out.push((k, *j, *a * b));
                }
            }
        }
        Ok(DoubleForm::from_terms(n, out))
    }

    /// `r`-fold composition power of a (1,1) form; `r = 0` gives `g`.
    pub fn comp_power(&self, r: usize) -> Result<DoubleForm> {
        self.require_bidegree(1, 1)?;
        let mut acc = DoubleForm::metric(self.n());
        for _ in 0..r {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }
}

/// A dense block of the operator `T(ω)`, mapping `Λ^q` coordinates (columns)
/// to `Λ^p` coordinates (rows), both in lexicographic basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorBlock {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub matrix: Matrix,
}

fn positions(n: usize, p: usize) -> HashMap<MultiIndex, usize> {
    enumerate(n, p).into_iter().enumerate().map(|(k, i)| (i, k)).collect()
}

impl OperatorBlock {
    pub fn new(n: usize, p: usize, q: usize, matrix: Matrix) -> Result<Self> {
        let (rows, cols) = (enumerate(n, p).len(), enumerate(n, q).len());
        if matrix.rows() != rows || matrix.cols() != cols {
            return Err(Error::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: rows,
                expected_cols: cols,
            });
        }
        Ok(OperatorBlock { n, p, q, matrix })
    }

    pub fn identity(n: usize, p: usize) -> Self {
        let size = enumerate(n, p).len();
        OperatorBlock {
            n,
            p,
            q: p,
            matrix: Matrix::identity(size),
        }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &OperatorBlock) -> Result<OperatorBlock> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        OperatorBlock::new(self.n, self.p, other.q, self.matrix.mul(&other.matrix)?)
    }

    pub fn transpose(&self) -> OperatorBlock {
        OperatorBlock {
            n: self.n,
            p: self.q,
            q: self.p,
            matrix: self.matrix.transpose(),
        }
    }
}

/// The block of `T(ω)` for `ω` homogeneous of bidegree `(q, p)`.
pub fn to_operator(omega: &DoubleForm, p: usize, q: usize) -> Result<OperatorBlock> {
    omega.require_bidegree(q, p)?;
    let n = omega.n();
    let rows = positions(n, p);
    let cols = positions(n, q);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (first, second, v) in omega.terms() {
        m[(rows[&second], cols[&first])] = v.clone();
    }
    Ok(OperatorBlock {
        n,
        p,
        q,
        matrix: m,
    })
}

/// Inverse of [`to_operator`].
pub fn from_operator(block: &OperatorBlock) -> DoubleForm {
    let rows = enumerate(block.n, block.p);
    let cols = enumerate(block.n, block.q);
    let mut terms = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            let v = &block.matrix[(i, j)];
            if !v.is_zero() {
                terms.push((*c, *r, v.clone()));
            }
        }
    }
    DoubleForm::from_terms(block.n, terms)
}
