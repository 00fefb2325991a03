//! Small dense rational matrices: products, elimination-based determinants
//! and inverses, compound matrices, and exact orthogonal matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::combinatorics::{enumerate, MultiIndex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape {
                    rows: r,
                    cols: row.len(),
                    expected_rows: r,
                    expected_cols: c,
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Scalar]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                rows: other.rows,
                cols: other.cols,
                expected_rows: self.cols,
                expected_cols: other.cols,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape {
                rows: other.rows,
                cols: other.cols,
                expected_rows: self.rows,
                expected_cols: self.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape {
                rows: self.rows,
                cols: self.cols,
                expected_rows: self.rows,
                expected_cols: self.rows,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &p;
                for c in col..n {
                    let delta = &factor * &a[(col, c)];
                    a[(r, c)] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &p;
                inv[(col, c)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    let da = &factor * &a[(col, c)];
                    a[(r, c)] -= da;
                    let di = &factor * &inv[(col, c)];
                    inv[(r, c)] -= di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Submatrix on the given (1-based) row and column index sets.
    pub fn submatrix(&self, rows: MultiIndex, cols: MultiIndex) -> Matrix {
        let rs = rows.to_vec();
        let cs = cols.to_vec();
        let mut m = Matrix::zeros(rs.len(), cs.len());
        for (i, &r) in rs.iter().enumerate() {
            for (j, &c) in cs.iter().enumerate() {
                m[(i, j)] = self[(r - 1, c - 1)].clone();
            }
        }
        m
    }

    /// The `p`-th compound matrix: entry `(I, J)` is the minor on rows `I`
    /// and columns `J`, with multi-indices in lexicographic order.
    pub fn compound(&self, p: usize) -> Result<Matrix> {
        let rows = enumerate(self.rows, p);
        let cols = enumerate(self.cols, p);
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in cols.iter().enumerate() {
                out[(i, j)] = self.submatrix(*r, *c).determinant()?;
            }
        }
        Ok(out)
    }

    /// Checks `Bᵀ B = I` exactly.
    pub fn check_orthogonal(&self) -> Result<()> {
        let gram = self.transpose().mul(self)?;
        for i in 0..gram.rows {
            for j in 0..gram.cols {
                let expected = if i == j { Scalar::one() } else { Scalar::zero() };
                if gram[(i, j)] != expected {
                    return Err(Error::NotOrthonormal { row: i + 1, col: j + 1 });
                }
            }
        }
        if !self.is_square() {
            return Err(Error::Shape {
                rows: self.rows,
                cols: self.cols,
                expected_rows: self.rows,
                expected_cols: self.rows,
            });
        }
        Ok(())
    }
}

/// Cayley transform `(I − S)(I + S)⁻¹` of a skew-symmetric rational matrix;
/// the result is an exact rational orthogonal matrix.
pub fn cayley_orthogonal(skew: &Matrix) -> Result<Matrix> {
    let n = skew.rows();
    if skew.transpose().add(skew)?.is_zero() {
        let id = Matrix::identity(n);
        id.sub(skew)?.mul(&id.add(skew)?.inverse()?)
    } else {
        Err(Error::NotSymmetric {
            row: MultiIndex::EMPTY,
            col: MultiIndex::EMPTY,
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 0], &[0, 3]]).determinant().unwrap(), int(6));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).determinant().unwrap(), int(-3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
        assert_eq!(Matrix::zeros(0, 0).determinant().unwrap(), int(1));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn compound_of_diagonal() {
        let d = Matrix::diagonal(&[int(1), int(2), int(3)]);
        assert_eq!(d.compound(2).unwrap(), Matrix::diagonal(&[int(2), int(3), int(6)]));
        assert_eq!(d.compound(0).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn cayley_is_orthogonal() {
        let s = Matrix::from_rows(vec![
            vec![int(0), ratio(1, 2), int(-2)],
            vec![ratio(-1, 2), int(0), int(1)],
            vec![int(2), int(-1), int(0)],
        ])
        .unwrap();
        let q = cayley_orthogonal(&s).unwrap();
        q.check_orthogonal().unwrap();
        assert!(m(&[&[1, 1], &[0, 1]]).check_orthogonal().is_err());
    }
}
