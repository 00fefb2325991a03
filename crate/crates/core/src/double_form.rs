//! The bigraded algebra of double forms `ΛV* ⊗ ΛV*` over an orthonormal basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::combinatorics::{enumerate, shuffle_sign, MultiIndex};
use crate::error::{Error, Result};
use crate::scalar::{factorial_q, Scalar};
use crate::MAX_DIM;

pub type TermKey = (MultiIndex, MultiIndex);

/// A sparse, possibly inhomogeneous double form.
///
/// Each stored term `(I, J) ↦ a` stands for `a · e_I ⊗ e_J`; viewed as a
/// bilinear form on multivectors, `ω(e_I, e_J) = a`. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DoubleForm {
    n: usize,
    terms: BTreeMap<TermKey, Scalar>,
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::DimensionOutOfRange(n))
    } else {
        Ok(())
    }
}

pub(crate) fn same_dim(a: &DoubleForm, b: &DoubleForm) -> Result<usize> {
    if a.n != b.n {
        Err(Error::DimensionMismatch {
            left: a.n,
            right: b.n,
        })
    } else {
        Ok(a.n)
    }
}

fn accumulate(map: &mut BTreeMap<TermKey, Scalar>, key: TermKey, value: Scalar) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(value);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += value;
        }
    }
}

impl DoubleForm {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        DoubleForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The constant `c` as a (0,0) double form.
    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::from_terms(n, [(MultiIndex::EMPTY, MultiIndex::EMPTY, c)])
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    /// Single basis term `c · e_I ⊗ e_J` (unchecked indices).
    pub fn basis(n: usize, row: &[usize], col: &[usize], c: Scalar) -> Self {
        Self::from_terms(
            n,
            [(MultiIndex::from_indices(row), MultiIndex::from_indices(col), c)],
        )
    }

    /// Sums terms over already-validated keys, dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (row, col, c) in terms {
            debug_assert!(row.max_index() <= n && col.max_index() <= n);
            accumulate(&mut map, (row, col), c);
        }
        Self::finish(n, map)
    }

    fn finish(n: usize, mut terms: BTreeMap<TermKey, Scalar>) -> Self {
        terms.retain(|_, v| !v.is_zero());
        DoubleForm { n, terms }
    }

    /// Builds a double form from 1-based index tuples; duplicate entries are
    /// summed and zeros dropped.
    pub fn make<I, R, C>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (R, C, Scalar)>,
        R: AsRef<[usize]>,
        C: AsRef<[usize]>,
    {
        check_dim(n)?;
        let mut terms = Vec::new();
        for (k, (row, col, c)) in entries.into_iter().enumerate() {
            let wrap = |e| Error::InvalidEntry {
                entry: k,
                source: Box::new(e),
            };
            let row = MultiIndex::new(row.as_ref(), n).map_err(wrap)?;
            let col = MultiIndex::new(col.as_ref(), n).map_err(wrap)?;
            terms.push((row, col, c));
        }
        Ok(Self::from_terms(n, terms))
    }

    /// The (1,1) form `h = Σ m[i][j] e_i ⊗ e_j` of an `n × n` matrix, so that
    /// `h(e_i, e_j) = m[i][j]`.
    pub fn bilinear(matrix: &[Vec<Scalar>]) -> Result<Self> {
        let n = matrix.len();
        check_dim(n)?;
        let mut terms = Vec::new();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape {
                    rows: n,
                    cols: row.len(),
                    expected_rows: n,
                    expected_cols: n,
                });
            }
            for (j, c) in row.iter().enumerate() {
                terms.push((
                    MultiIndex::singleton(i + 1),
                    MultiIndex::singleton(j + 1),
                    c.clone(),
                ));
            }
        }
        Ok(Self::from_terms(n, terms))
    }

    /// Diagonal bilinear form `Σ d_i e_i ⊗ e_i`.
    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        Self::from_terms(
            n,
            diag.iter().enumerate().map(|(i, c)| {
                let e = MultiIndex::singleton(i + 1);
                (e, e, c.clone())
            }),
        )
    }

    /// The (1,0) form `v ⊗ 1`.
    pub fn vector(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (MultiIndex::singleton(i + 1), MultiIndex::EMPTY, c.clone())),
        )
    }

    /// The matrix `m[i][j] = h(e_i, e_j)` of the (1,1) component.
    pub fn to_matrix(&self) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![Scalar::zero(); self.n]; self.n];
        for ((r, c), v) in &self.terms {
            if r.len() == 1 && c.len() == 1 {
                m[r.max_index() - 1][c.max_index() - 1] = v.clone();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (nonzero) terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: by row degree, column degree, then
    /// lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, MultiIndex, &Scalar)> {
        self.terms.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn coefficient(&self, row: MultiIndex, col: MultiIndex) -> Scalar {
        self.terms
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// The value of the (0,0) component.
    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(MultiIndex::EMPTY, MultiIndex::EMPTY)
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|(r, c)| (r.len(), c.len())).collect()
    }

    /// `Some((p, q))` when every term has bidegree `(p, q)`; `None` for the
    /// zero form and for inhomogeneous forms.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let degrees = self.bidegrees();
        if degrees.len() == 1 {
            degrees.into_iter().next()
        } else {
            None
        }
    }

    /// True when every term has bidegree `(p, q)` (vacuously for zero).
    pub fn is_homogeneous_of(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|(r, c)| r.len() == p && c.len() == q)
    }

    pub(crate) fn require_bidegree(&self, p: usize, q: usize) -> Result<()> {
        if self.is_homogeneous_of(p, q) {
            Ok(())
        } else {
            Err(Error::WrongBidegree {
                expected_p: p,
                expected_q: q,
                found: self.bidegrees().into_iter().collect(),
            })
        }
    }

    /// The square degree `p` of a homogeneous (p,p) form (0 for zero).
    pub(crate) fn require_square(&self) -> Result<usize> {
        let degrees = self.bidegrees();
        match degrees.len() {
            0 => Ok(0),
            1 => {
                let (p, q) = *degrees.iter().next().unwrap();
                if p == q {
                    Ok(p)
                } else {
                    Err(Error::NotSquare {
                        found: degrees.into_iter().collect(),
                    })
                }
            }
            _ => Err(Error::NotSquare {
                found: degrees.into_iter().collect(),
            }),
        }
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: usize, q: usize) -> DoubleForm {
        DoubleForm {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((r, c), _)| r.len() == p && c.len() == q)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> DoubleForm {
        if c.is_zero() {
            return DoubleForm::zero(self.n);
        }
        DoubleForm {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Applies `f` to every term, accumulating the images.
    pub(crate) fn map_terms<F>(&self, n: usize, mut f: F) -> DoubleForm
    where
        F: FnMut(MultiIndex, MultiIndex, &Scalar, &mut dyn FnMut(MultiIndex, MultiIndex, Scalar)),
    {
        let mut map = BTreeMap::new();
        for ((r, c), v) in &self.terms {
            f(*r, *c, v, &mut |r2, c2, v2| accumulate(&mut map, (r2, c2), v2));
        }
        DoubleForm::finish(n, map)
    }

    pub fn try_add(&self, other: &DoubleForm) -> Result<DoubleForm> {
        let n = same_dim(self, other)?;
        let mut map = self.terms.clone();
        for (k, v) in &other.terms {
            accumulate(&mut map, *k, v.clone());
        }
        Ok(DoubleForm::finish(n, map))
    }

    /// The exterior product `(θ1⊗θ2)(θ3⊗θ4) = (θ1∧θ3)⊗(θ2∧θ4)`.
    pub fn exterior_product(&self, other: &DoubleForm) -> Result<DoubleForm> {
        let n = same_dim(self, other)?;
        let mut map = BTreeMap::new();
        for ((r1, c1), a) in &self.terms {
            for ((r2, c2), b) in &other.terms {
                if !r1.is_disjoint(*r2) || !c1.is_disjoint(*c2) {
                    continue;
                }
                let s = shuffle_sign(*r1, *r2) * shuffle_sign(*c1, *c2);
                let prod = a * b;
                let v = if s < 0 { -prod } else { prod };
                accumulate(&mut map, (r1.union(*r2), c1.union(*c2)), v);
            }
        }
        Ok(DoubleForm::finish(n, map))
    }

    /// `k`-th exterior power; `ω^0 = 1`.
    pub fn pow(&self, k: usize) -> DoubleForm {
        let mut acc = DoubleForm::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// `ω^t(u1, u2) = ω(u2, u1)`.
    pub fn transpose(&self) -> DoubleForm {
        DoubleForm {
            n: self.n,
            terms: self.terms.iter().map(|((r, c), v)| ((*c, *r), v.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|((r, c), v)| self.terms.get(&(*c, *r)) == Some(v))
    }

    /// The Euclidean inner product, in which the `e_I ⊗ e_J` are orthonormal.
    pub fn inner_product(&self, other: &DoubleForm) -> Result<Scalar> {
        same_dim(self, other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(k, v)| large.terms.get(k).map(|w| v * w))
            .fold(Scalar::zero(), |acc, x| acc + x))
    }

    /// Ricci contraction `cω(x, y) = Σ_j ω(e_j ∧ x, e_j ∧ y)`, mapping
    /// `(p, q)` to `(p-1, q-1)`; components with `p = 0` or `q = 0` vanish.
    pub fn contraction(&self) -> DoubleForm {
        self.map_terms(self.n, |r, c, v, emit| {
            for j in r.iter() {
                let e = MultiIndex::singleton(j);
                if !c.contains(j) {
                    continue;
                }
                let (r2, c2) = (r.without(e), c.without(e));
                let s = shuffle_sign(e, r2) * shuffle_sign(e, c2);
                emit(r2, c2, if s < 0 { -v.clone() } else { v.clone() });
            }
        })
    }

    /// `c^k(ω)`.
    pub fn contraction_power(&self, k: usize) -> DoubleForm {
        (0..k).fold(self.clone(), |acc, _| acc.contraction())
    }

    /// The metric `g = Σ e_i ⊗ e_i`.
    pub fn metric(n: usize) -> DoubleForm {
        Self::unit(n, 1)
    }

    /// `g^p / p! = Σ_{|I| = p} e_I ⊗ e_I`, the unit of the composition
    /// product on `D^{p,p}`. Zero when `p > n`.
    pub fn unit(n: usize, p: usize) -> DoubleForm {
        Self::from_terms(
            n,
            enumerate(n, p).into_iter().map(|i| (i, i, Scalar::one())),
        )
    }

    /// `g^p`, the `p`-fold exterior power of the metric.
    pub fn metric_power(n: usize, p: usize) -> DoubleForm {
        Self::unit(n, p).scale(&factorial_q(p))
    }

    /// `Σ_{p=0}^{n} g^p / p!`, the unit of the full composition algebra.
    pub fn full_unit(n: usize) -> DoubleForm {
        (0..=n).fold(DoubleForm::zero(n), |acc, p| &acc + &Self::unit(n, p))
    }
}

impl fmt::Debug for DoubleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleForm(n={}) ", self.n)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DoubleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((r, c), v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}·e{r}⊗e{c}")?;
        }
        Ok(())
    }
}

// Operator sugar. Binary operators panic on a dimension mismatch; the
// `Result`-returning methods are the checked entry points.

impl Add for &DoubleForm {
    type Output = DoubleForm;
    fn add(self, rhs: &DoubleForm) -> DoubleForm {
        self.try_add(rhs).expect("DoubleForm addition")
    }
}

impl Add for DoubleForm {
    type Output = DoubleForm;
    fn add(self, rhs: DoubleForm) -> DoubleForm {
        &self + &rhs
    }
}

impl AddAssign<&DoubleForm> for DoubleForm {
    fn add_assign(&mut self, rhs: &DoubleForm) {
        same_dim(self, rhs).expect("DoubleForm addition");
        for (k, v) in &rhs.terms {
            accumulate(&mut self.terms, *k, v.clone());
        }
        self.terms.retain(|_, v| !v.is_zero());
    }
}

impl SubAssign<&DoubleForm> for DoubleForm {
    fn sub_assign(&mut self, rhs: &DoubleForm) {
        same_dim(self, rhs).expect("DoubleForm subtraction");
        for (k, v) in &rhs.terms {
            accumulate(&mut self.terms, *k, -v.clone());
        }
        self.terms.retain(|_, v| !v.is_zero());
    }
}

impl Neg for &DoubleForm {
    type Output = DoubleForm;
    fn neg(self) -> DoubleForm {
        DoubleForm {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Neg for DoubleForm {
    type Output = DoubleForm;
    fn neg(self) -> DoubleForm {
        -&self
    }
}

impl Sub for &DoubleForm {
    type Output = DoubleForm;
    fn sub(self, rhs: &DoubleForm) -> DoubleForm {
        self + &(-rhs)
    }
}

impl Sub for DoubleForm {
    type Output = DoubleForm;
    fn sub(self, rhs: DoubleForm) -> DoubleForm {
        &self - &rhs
    }
}

/// Exterior product.
impl Mul for &DoubleForm {
    type Output = DoubleForm;
    fn mul(self, rhs: &DoubleForm) -> DoubleForm {
        self.exterior_product(rhs).expect("DoubleForm exterior product")
    }
}

impl Mul for DoubleForm {
    type Output = DoubleForm;
    fn mul(self, rhs: DoubleForm) -> DoubleForm {
        &self * &rhs
    }
}

impl Mul<&Scalar> for &DoubleForm {
    type Output = DoubleForm;
    fn mul(self, rhs: &Scalar) -> DoubleForm {
        self.scale(rhs)
    }
}

impl Mul<Scalar> for DoubleForm {
    type Output = DoubleForm;
    fn mul(self, rhs: Scalar) -> DoubleForm {
        self.scale(&rhs)
    }
}
