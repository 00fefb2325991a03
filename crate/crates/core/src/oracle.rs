//! Brute-force reference computations used to cross-check the main
//! algorithms. Everything here works from first principles (permutation
//! sums, dense loops) and shares no code with the kernels it checks.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combinatorics::{enumerate, MultiIndex};
use crate::curvature::ExteriorForm;
use crate::double_form::DoubleForm;
use crate::scalar::{factorial, Scalar};

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i8)>) {
        let k = used.len();
        if prefix.len() == k {
            out.push((prefix.clone(), parity(prefix)));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Sign of a sequence of distinct integers relative to its sorted order.
pub fn parity(seq: &[usize]) -> i8 {
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Leibniz-formula determinant of a square dense matrix.
pub fn leibniz_det(m: &[Vec<Scalar>]) -> Scalar {
    let k = m.len();
    let mut acc = Scalar::zero();
    for (perm, s) in permutations(k) {
        let mut term = Scalar::from_integer(1.into());
        for (row, &col) in perm.iter().enumerate() {
            term *= &m[row][col];
            if term.is_zero() {
                break;
            }
        }
        if s > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The minor of `m` on the given (1-based) rows and columns.
pub fn minor(m: &[Vec<Scalar>], rows: MultiIndex, cols: MultiIndex) -> Scalar {
    let sub: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| m[r - 1][c - 1].clone()).collect())
        .collect();
    leibniz_det(&sub)
}

/// The p-th compound matrix, rows and columns in lexicographic order.
pub fn compound(m: &[Vec<Scalar>], p: usize) -> Vec<Vec<Scalar>> {
    let idx = enumerate(m.len(), p);
    idx.iter()
        .map(|r| idx.iter().map(|c| minor(m, *r, *c)).collect())
        .collect()
}

/// Elementary symmetric functions of the eigenvalues, `[s_0, …, s_n]`, as
/// sums of principal minors.
pub fn characteristic_coefficients(m: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = m.len();
    (0..=n)
        .map(|p| {
            enumerate(n, p)
                .into_iter()
                .fold(Scalar::zero(), |acc, i| acc + minor(m, i, i))
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Scalar::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn mat_power(a: &[Vec<Scalar>], r: usize) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut acc: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Scalar::from_integer(((i == j) as i64).into()))
                .collect()
        })
        .collect();
    for _ in 0..r {
        acc = mat_mul(&acc, a);
    }
    acc
}

/// `Σ_r (−1)^r s_{n−r} A^r` with coefficients from principal minors.
pub fn cayley_hamilton_matrix(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let s = characteristic_coefficients(a);
    let mut acc = vec![vec![Scalar::zero(); n]; n];
    for r in 0..=n {
        let pw = mat_power(a, r);
        for i in 0..n {
            for j in 0..n {
                let t = &s[n - r] * &pw[i][j];
                if r % 2 == 0 {
                    acc[i][j] += t;
                } else {
                    acc[i][j] -= t;
                }
            }
        }
    }
    acc
}

/// `ω(e_{a_1} ∧ … ∧ e_{a_p}, e_{b_1} ∧ … ∧ e_{b_q})` for arbitrary ordered
/// (1-based) index tuples.
pub fn evaluate(omega: &DoubleForm, first: &[usize], second: &[usize]) -> Scalar {
    let sort = |seq: &[usize]| -> Option<(MultiIndex, i8)> {
        let set = MultiIndex::from_indices(seq);
        (set.len() == seq.len()).then(|| (set, parity(seq)))
    };
    match (sort(first), sort(second)) {
        (Some((r, s1)), Some((c, s2))) => {
            let v = omega.coefficient(r, c);
            if s1 * s2 > 0 {
                v
            } else {
                -v
            }
        }
        _ => Scalar::zero(),
    }
}

/// `Alt(ω)` straight from the permutation-sum definition.
pub fn alt_permutation_sum(omega: &DoubleForm, p: usize) -> ExteriorForm {
    let n = omega.n();
    let perms = permutations(2 * p);
    let denom = Scalar::from_integer(factorial(2 * p));
    let mut terms = Vec::new();
    for k in enumerate(n, 2 * p) {
        let v = k.to_vec();
        let mut acc = Scalar::zero();
        for (perm, s) in &perms {
            let seq: Vec<usize> = perm.iter().map(|&i| v[i]).collect();
            let val = evaluate(omega, &seq[..p], &seq[p..]);
            if *s > 0 {
                acc += val;
            } else {
                acc -= val;
            }
        }
        terms.push((k, acc / &denom));
    }
    ExteriorForm::from_terms(n, 2 * p, terms)
}

/// `(R̊h)(e_a, e_b) = Σ_{i,j} h(e_i, e_j) R(e_i, e_a; e_j, e_b)`.
pub fn ring_operator(r: &DoubleForm, h: &[Vec<Scalar>]) -> DoubleForm {
    let n = r.n();
    let mut terms = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            let mut acc = Scalar::zero();
            for i in 1..=n {
                for j in 1..=n {
                    let hij = &h[i - 1][j - 1];
                    if !hij.is_zero() {
                        acc += hij * evaluate(r, &[i, a], &[j, b]);
                    }
                }
            }
            terms.push((MultiIndex::singleton(a), MultiIndex::singleton(b), acc));
        }
    }
    DoubleForm::from_terms(n, terms)
}

/// `(e^h ∘ ω)(e_A, e_B) = Σ_I ω(e_A, e_I) · det h[I, B]` for homogeneous ω
/// of bidegree (p,q).
pub fn hat_right(h: &[Vec<Scalar>], omega: &DoubleForm) -> DoubleForm {
    let n = omega.n();
    let mut by_row: BTreeMap<MultiIndex, Vec<(MultiIndex, Scalar)>> = BTreeMap::new();
    for (r, c, v) in omega.terms() {
        by_row.entry(r).or_default().push((c, v.clone()));
    }
    let mut terms = Vec::new();
    for (r, row) in by_row {
        let q = row[0].0.len();
        for b in enumerate(n, q) {
            let mut acc = Scalar::zero();
            for (i, v) in &row {
                acc += v * minor(h, *i, b);
            }
            terms.push((r, b, acc));
        }
    }
    DoubleForm::from_terms(n, terms)
}

/// Dense coefficient matrix of a (1,1) form, `m[i][j] = h(e_i, e_j)`.
pub fn dense(h: &DoubleForm) -> Vec<Vec<Scalar>> {
    let n = h.n();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| h.coefficient(MultiIndex::singleton(i), MultiIndex::singleton(j)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn basics() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(parity(&[2, 1, 3]), -1);
        assert_eq!(leibniz_det(&m(&[&[2, 0], &[0, 3]])), int(6));
        assert_eq!(leibniz_det(&m(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(
            characteristic_coefficients(&m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])),
            vec![int(1), int(6), int(11), int(6)]
        );
        assert!(cayley_hamilton_matrix(&m(&[&[1, 2], &[3, 4]]))
            .iter()
            .flatten()
            .all(Zero::is_zero));
    }
}
