//! Curvature-level algebra: the alternating operator, the first Bianchi
//! map, Pontrjagin forms, and purity of curvature tensors.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::{enumerate, merge_with_sign, shuffle_sign, MultiIndex};
use crate::double_form::DoubleForm;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{factorial, factorial_q, int, to_f64, Scalar};

/// A sparse exterior form of fixed degree; `e_K` evaluates to 1 on
/// `(e_{k_1}, …, e_{k_d})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorForm {
    n: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl ExteriorForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        ExteriorForm {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(n: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut map: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (k, v) in terms {
            assert_eq!(k.len(), degree, "term {k} does not have degree {degree}");
            *map.entry(k).or_insert_with(Scalar::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        ExteriorForm { n, degree, terms: map }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, k: MultiIndex) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> ExteriorForm {
        ExteriorForm::from_terms(self.n, self.degree, self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn wedge(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Vec::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((k, s)) = merge_with_sign(*a, *b) {
                    let v = x * y;
                    out.push((k, if s < 0 { -v } else { v }));
                }
            }
        }
        Ok(ExteriorForm::from_terms(self.n, self.degree + other.degree, out))
    }
}

impl fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorForm(n={}, degree={}) ", self.n, self.degree)?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}·e{i}")?;
        }
        Ok(())
    }
}

/// The first Bianchi map `𝔖 : D^{p,q} → D^{p+1,q−1}`, the alternation over
/// the first `p + 1` arguments normalized by `1/p!`; `𝔖ω = 0` when `q = 0`.
pub fn bianchi(omega: &DoubleForm) -> DoubleForm {
    omega.map_terms(omega.n(), |r, c, v, emit| {
        for j in c.iter() {
            let e = MultiIndex::singleton(j);
            if r.contains(j) {
                continue;
            }
            let rest = c.without(e);
            let s = shuffle_sign(r, e) * shuffle_sign(e, rest);
            emit(r.union(e), rest, if s < 0 { -v.clone() } else { v.clone() });
        }
    })
}

/// `𝔖^p ω` for a (p,p) form, as a 2p-form. `Alt = p!/(2p)! · 𝔖^p`.
pub fn bianchi_power(omega: &DoubleForm) -> Result<ExteriorForm> {
    let p = omega.require_square()?;
    let mut acc = omega.clone();
    for _ in 0..p {
        acc = bianchi(&acc);
    }
    Ok(ExteriorForm::from_terms(
        omega.n(),
        2 * p,
        acc.terms().map(|(r, _, v)| (r, v.clone())),
    ))
}

/// Ratio `Alt / 𝔖^p` on (p,p) forms.
pub fn alt_bianchi_constant(p: usize) -> Scalar {
    Scalar::new(factorial(p), factorial(2 * p))
}

/// The alternating operator `Alt : D^{p,p} → Λ^{2p}`,
/// `Alt(ω)(v_1…v_{2p}) = 1/(2p)! Σ_σ ε(σ) ω(v_σ(1)∧…∧v_σ(p), v_σ(p+1)∧…∧v_σ(2p))`.
///
/// Computed through the iterated Bianchi map. Returns the zero form when
/// `2p > n`.
pub fn alt(omega: &DoubleForm) -> Result<ExteriorForm> {
    let p = omega.require_square()?;
    Ok(bianchi_power(omega)?.scale(&alt_bianchi_constant(p)))
}

/// An algebraic curvature tensor: a symmetric (2,2) form in the kernel of
/// the first Bianchi map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTensor(DoubleForm);

impl CurvatureTensor {
    /// Validates bidegree, symmetry and the first Bianchi identity.
    pub fn new(form: DoubleForm) -> Result<Self> {
        form.require_bidegree(2, 2)?;
        if let Some((r, c, _)) = form.terms().find(|(r, c, v)| form.coefficient(*c, *r) != **v) {
            return Err(Error::NotSymmetric { row: r, col: c });
        }
        let b = bianchi(&form);
        if !b.is_zero() {
            return Err(Error::NotBianchi { terms: b.len() });
        }
        Ok(CurvatureTensor(form))
    }

    /// Accepts any (2,2) form, skipping the symmetry and Bianchi checks.
    pub fn new_unchecked(form: DoubleForm) -> Result<Self> {
        form.require_bidegree(2, 2)?;
        Ok(CurvatureTensor(form))
    }

    pub fn form(&self) -> &DoubleForm {
        &self.0
    }

    pub fn into_form(self) -> DoubleForm {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }
}

/// A constant `rational · π^pi_power`, kept symbolic so that the algebra
/// stays exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub rational: Scalar,
    pub pi_power: i32,
}

impl Normalization {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}·π^{}", self.rational.numer(), self.rational.denom(), self.pi_power)
    }
}

/// A Pontrjagin-type form: the exact alternating part together with its
/// symbolic normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicForm {
    pub form: ExteriorForm,
    pub normalization: Normalization,
}

/// `P_k(R) = 1/((k!)²(2π)^{2k}) · Alt(R^k ∘ R^k)`.
///
/// When `4k > n` the form vanishes for degree reasons; a warning is logged
/// and the zero 4k-form returned.
pub fn pontrjagin_form(r: &CurvatureTensor, k: usize) -> Result<CharacteristicForm> {
    let n = r.n();
    let kf = factorial_q(k);
    let normalization = Normalization {
        rational: (&kf * &kf * Scalar::from_integer(num_bigint::BigInt::from(4u32).pow(k as u32))).recip(),
        pi_power: -2 * k as i32,
    };
    if 4 * k > n {
        log::warn!("P_{k} requested in dimension {n} < {}; returning zero", 4 * k);
        return Ok(CharacteristicForm {
            form: ExteriorForm::zero(n, 4 * k),
            normalization,
        });
    }
    let rk = r.form().pow(k);
    let form = alt(&rk.compose(&rk)?)?;
    Ok(CharacteristicForm { form, normalization })
}

/// `P_1^{k_1} ⋯ P_m^{k_m}` as a constant times
/// `Alt[(R∘R)^{k_1} (R²∘R²)^{k_2} ⋯ (R^m∘R^m)^{k_m}]`, with
/// `k = Σ i·k_i` and `4k ≤ n`.
///
/// The constant is `(4k)!/((2k)!)²(2π)^{2k} · Π_i ([(2i)!]²/(4i)!)^{k_i} / (i!)^{2k_i}`,
/// which makes the product equal to the wedge product of the individual
/// `P_i` forms.
pub fn pontrjagin_product(r: &CurvatureTensor, exponents: &[usize]) -> Result<CharacteristicForm> {
    let n = r.n();
    let k: usize = exponents.iter().enumerate().map(|(i, &ki)| (i + 1) * ki).sum();
    if 4 * k > n {
        return Err(Error::DegreeOverflow { degree: 4 * k, n });
    }
    let mut product = DoubleForm::one(n);
    let mut rational = Scalar::new(
        factorial(4 * k),
        factorial(2 * k) * factorial(2 * k) * num_bigint::BigInt::from(4u32).pow(k as u32),
    );
    let mut power = DoubleForm::one(n);
    for (idx, &ki) in exponents.iter().enumerate() {
        let i = idx + 1;
        power = &power * r.form();
        if ki == 0 {
            continue;
        }
        let block = power.compose(&power)?;
        for _ in 0..ki {
            product = &product * &block;
        }
        let f2 = factorial_q(2 * i);
        let fi = factorial_q(i);
        let factor = &f2 * &f2 / (factorial_q(4 * i) * &fi * &fi);
        for _ in 0..ki {
            rational *= &factor;
        }
    }
    Ok(CharacteristicForm {
        form: alt(&product)?,
        normalization: Normalization {
            rational,
            pi_power: -2 * k as i32,
        },
    })
}

/// Re-expresses a homogeneous form in the orthonormal basis whose vectors are
/// the columns of `basis`: the new coefficient on `(I, J)` is `ω(f_I, f_J)`.
pub fn change_basis(omega: &DoubleForm, basis: &Matrix) -> Result<DoubleForm> {
    let n = omega.n();
    if basis.rows() != n || basis.cols() != n {
        return Err(Error::Shape {
            rows: basis.rows(),
            cols: basis.cols(),
            expected_rows: n,
            expected_cols: n,
        });
    }
    let mut out = DoubleForm::zero(n);
    for (p, q) in omega.bidegrees() {
        let rows = enumerate(n, p);
        let cols = enumerate(n, q);
        let cp = basis.compound(p)?;
        let cq = basis.compound(q)?;
        let mut w = Matrix::zeros(rows.len(), cols.len());
        let row_pos: BTreeMap<_, _> = rows.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let col_pos: BTreeMap<_, _> = cols.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        for (r, c, v) in omega.component(p, q).terms() {
            w[(row_pos[&r], col_pos[&c])] = v.clone();
        }
        let t = cp.transpose().mul(&w)?.mul(&cq)?;
        let mut terms = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in cols.iter().enumerate() {
                terms.push((*r, *c, t[(i, j)].clone()));
            }
        }
        out += &DoubleForm::from_terms(n, terms);
    }
    Ok(out)
}

/// Outcome of a purity check: the form in the supplied basis and its
/// off-diagonal (`I ≠ J`) terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityReport {
    pub pure: bool,
    pub transformed: DoubleForm,
    pub residual: Vec<(MultiIndex, MultiIndex, Scalar)>,
}

/// Checks whether a (p,p) form lies in `Span{e_I ⊗ e_I}` for the orthonormal
/// basis given by the columns of `basis` (checked exactly).
pub fn is_pure_in_basis(omega: &DoubleForm, basis: &Matrix) -> Result<PurityReport> {
    omega.require_square()?;
    basis.check_orthogonal()?;
    let transformed = change_basis(omega, basis)?;
    let residual: Vec<_> = transformed
        .terms()
        .filter(|(r, c, _)| r != c)
        .map(|(r, c, v)| (r, c, v.clone()))
        .collect();
    Ok(PurityReport {
        pure: residual.is_empty(),
        transformed,
        residual,
    })
}

/// `Σ_{i<j} λ_{ij} e_{ij} ⊗ e_{ij}`, a pure curvature tensor. Pairs may be
/// given in either order; a pair given twice must carry the same value.
pub fn pure_curvature(n: usize, lambda: &[((usize, usize), Scalar)]) -> Result<CurvatureTensor> {
    let mut coeffs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for ((i, j), v) in lambda {
        let (a, b) = if i < j { (*i, *j) } else { (*j, *i) };
        let key = MultiIndex::new(&[a, b], n)?;
        debug_assert_eq!(key.len(), 2);
        if let Some(prev) = coeffs.get(&(a, b)) {
            if prev != v {
                return Err(Error::AsymmetricCoefficients { i: a, j: b });
            }
            continue;
        }
        coeffs.insert((a, b), v.clone());
    }
    let form = DoubleForm::from_terms(
        n,
        coeffs.into_iter().map(|((a, b), v)| {
            let k = MultiIndex::from_indices(&[a, b]);
            (k, k, v)
        }),
    );
    Ok(CurvatureTensor(form))
}

/// `c · g²/2`, constant sectional curvature `c`.
pub fn constant_curvature(n: usize, c: Scalar) -> CurvatureTensor {
    CurvatureTensor(DoubleForm::unit(n, 2).scale(&c))
}

/// `h_1 h_2 ⋯ h_m` for symmetric (1,1) forms.
pub fn product_of_bilinears(factors: &[DoubleForm]) -> Result<DoubleForm> {
    let Some(first) = factors.first() else {
        return Err(Error::OutOfRange {
            what: "number of factors",
            value: 0,
            range: "at least 1".into(),
        });
    };
    let mut acc = DoubleForm::one(first.n());
    for h in factors {
        h.require_bidegree(1, 1)?;
        if !h.is_symmetric() {
            let (r, c, _) = h
                .terms()
                .find(|(r, c, v)| h.coefficient(*c, *r) != **v)
                .expect("asymmetric term");
            return Err(Error::NotSymmetric { row: r, col: c });
        }
        acc = acc.exterior_product(h)?;
    }
    Ok(acc)
}

/// Ratio `P_k` normalization helper used in reports: `(k!)²(2π)^{2k}`.
pub fn pontrjagin_denominator(k: usize) -> Normalization {
    let kf = factorial_q(k);
    Normalization {
        rational: &kf * &kf * int(4).pow(k as i32),
        pi_power: 2 * k as i32,
    }
}

impl One for Normalization {
    fn one() -> Self {
        Normalization {
            rational: Scalar::one(),
            pi_power: 0,
        }
    }
}

impl std::ops::Mul for Normalization {
    type Output = Normalization;
    fn mul(self, rhs: Normalization) -> Normalization {
        Normalization {
            rational: self.rational * rhs.rational,
            pi_power: self.pi_power + rhs.pi_power,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn e(n: usize, r: &[usize], c: &[usize]) -> DoubleForm {
        DoubleForm::basis(n, r, c, int(1))
    }

    #[test]
    fn alt_examples() {
        assert!(alt(&DoubleForm::metric_power(4, 2)).unwrap().is_zero());
        let a = alt(&e(2, &[1], &[2])).unwrap();
        assert_eq!(a.degree(), 2);
        assert_eq!(a.coefficient(MultiIndex::from_indices(&[1, 2])), ratio(1, 2));
        for i in enumerate(5, 2) {
            let ii = i.to_vec();
            assert!(alt(&e(5, &ii, &ii)).unwrap().is_zero());
        }
        assert!(alt(&e(3, &[1, 2], &[1, 3])).unwrap().is_zero());
        assert!(alt(&e(3, &[1], &[2, 3])).is_err());
    }

    #[test]
    fn bianchi_examples() {
        assert!(bianchi(&DoubleForm::metric(4)).is_zero());
        assert_eq!(bianchi(&e(2, &[1], &[2])), e(2, &[1, 2], &[]));
        assert!(bianchi(&DoubleForm::metric_power(4, 2)).is_zero());
        assert!(bianchi(&e(3, &[1, 2], &[])).is_zero());
    }

    #[test]
    fn curvature_validation() {
        assert!(CurvatureTensor::new(DoubleForm::unit(4, 2)).is_ok());
        assert!(matches!(
            CurvatureTensor::new(e(4, &[1, 2], &[3, 4])),
            Err(Error::NotSymmetric { .. })
        ));
        // symmetric but not Bianchi: e12⊗e34 + e34⊗e12
        let w = e(4, &[1, 2], &[3, 4]) + e(4, &[3, 4], &[1, 2]);
        assert!(matches!(CurvatureTensor::new(w.clone()), Err(Error::NotBianchi { .. })));
        assert!(CurvatureTensor::new_unchecked(w).is_ok());
        assert!(CurvatureTensor::new(DoubleForm::metric(4)).is_err());
    }

    #[test]
    fn generators() {
        let c = constant_curvature(4, int(1));
        assert_eq!(c.form(), &DoubleForm::unit(4, 2));
        assert!(CurvatureTensor::new(c.into_form()).is_ok());
        let ones: Vec<_> = enumerate(4, 2)
            .into_iter()
            .map(|k| {
                let v = k.to_vec();
                ((v[0], v[1]), int(1))
            })
            .collect();
        let r = pure_curvature(4, &ones).unwrap();
        assert_eq!(r.form(), &DoubleForm::unit(4, 2));
        assert!(bianchi(r.form()).is_zero());
        assert!(matches!(
            pure_curvature(4, &[((1, 2), int(1)), ((2, 1), int(2))]),
            Err(Error::AsymmetricCoefficients { i: 1, j: 2 })
        ));
        assert!(pure_curvature(3, &[((1, 4), int(1))]).is_err());
        let h = DoubleForm::diagonal(&[int(1), int(2), int(3), int(5)]);
        let hh = product_of_bilinears(&[h.clone(), h.clone()]).unwrap();
        assert!(is_pure_in_basis(&hh, &Matrix::identity(4)).unwrap().pure);
        assert!(product_of_bilinears(&[e(4, &[1], &[2])]).is_err());
    }

    #[test]
    fn pontrjagin_of_constant_curvature_vanishes() {
        for n in 4..7 {
            let p = pontrjagin_form(&constant_curvature(n, ratio(3, 2)), 1).unwrap();
            assert!(p.form.is_zero());
            assert_eq!(p.form.degree(), 4);
            assert_eq!(p.normalization, Normalization { rational: ratio(1, 4), pi_power: -2 });
        }
        let small = pontrjagin_form(&constant_curvature(3, int(1)), 1).unwrap();
        assert!(small.form.is_zero());
    }

    #[test]
    fn pontrjagin_product_constants() {
        let r = constant_curvature(4, int(1));
        let empty = pontrjagin_product(&r, &[]).unwrap();
        assert_eq!(empty.normalization, Normalization::one());
        assert_eq!(empty.form, ExteriorForm::from_terms(4, 0, [(MultiIndex::EMPTY, int(1))]));
        let single = pontrjagin_product(&r, &[1]).unwrap();
        assert_eq!(single.normalization, pontrjagin_form(&r, 1).unwrap().normalization);
        assert!(matches!(pontrjagin_product(&r, &[0, 1]), Err(Error::DegreeOverflow { degree: 8, n: 4 })));
        assert_eq!(pontrjagin_denominator(1).rational, int(4));
    }

    #[test]
    fn purity_examples() {
        let mut w = DoubleForm::unit(4, 2);
        assert!(is_pure_in_basis(&w, &Matrix::identity(4)).unwrap().pure);
        w += &e(4, &[1, 2], &[1, 3]);
        let report = is_pure_in_basis(&w, &Matrix::identity(4)).unwrap();
        assert!(!report.pure);
        assert_eq!(
            report.residual,
            vec![(MultiIndex::from_indices(&[1, 2]), MultiIndex::from_indices(&[1, 3]), int(1))]
        );
        let skewed = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        assert!(matches!(
            is_pure_in_basis(&DoubleForm::metric(2), &skewed),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
