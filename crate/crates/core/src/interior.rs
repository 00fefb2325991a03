//! Interior products and the double Hodge star.
//!
//! `i_ψ` is the adjoint of left exterior multiplication `μ_ψ(ω) = ψω` with
//! respect to [`DoubleForm::inner_product`]. On basis terms
//!
//! `i_{e_A⊗e_B}(e_I⊗e_J) = ε(A, I∖A) ε(B, J∖B) e_{I∖A}⊗e_{J∖B}`
//!
//! when `A ⊆ I` and `B ⊆ J`, and zero otherwise, where `ε(A, C)` is the sign
//! of `e_A ∧ e_C` against the sorted basis element. This follows the
//! convention in which the first slot of `ψ` contracts the first slot of
//! `ω`; the mixed-exterior-algebra convention corresponds to `i_{ψᵗ}`.

use crate::combinatorics::{complement_with_sign, shuffle_sign, MultiIndex};
use crate::double_form::{same_dim, DoubleForm};
use crate::error::Result;

/// `i_ψ(ω)`; maps `D^{p,q}` to `D^{p-r,q-s}` for `ψ ∈ D^{r,s}`.
pub fn interior(psi: &DoubleForm, omega: &DoubleForm) -> Result<DoubleForm> {
    let n = same_dim(psi, omega)?;
    let psi_terms: Vec<_> = psi.terms().collect();
    Ok(omega.map_terms(n, |r, c, v, emit| {
        for (a, b, w) in &psi_terms {
            if !a.is_subset_of(r) || !b.is_subset_of(c) {
                continue;
            }
            let (r2, c2) = (r.without(*a), c.without(*b));
            let s = shuffle_sign(*a, r2) * shuffle_sign(*b, c2);
            let prod = v * *w;
            emit(r2, c2, if s < 0 { -prod } else { prod });
        }
    }))
}

/// `i_v` on the first slot, for a (1,0) form `v`.
pub fn interior_left(v: &DoubleForm, omega: &DoubleForm) -> Result<DoubleForm> {
    v.require_bidegree(1, 0)?;
    interior(v, omega)
}

/// `ĩ_w(ω) = (i_w(ωᵗ))ᵗ`, for a (0,1) form `w`.
pub fn interior_right(w: &DoubleForm, omega: &DoubleForm) -> Result<DoubleForm> {
    w.require_bidegree(0, 1)?;
    interior(w, omega)
}

/// Left exterior multiplication `μ_ψ(ω) = ψω`.
pub fn mu(psi: &DoubleForm, omega: &DoubleForm) -> Result<DoubleForm> {
    psi.exterior_product(omega)
}

/// The double Hodge star, `(p,q) ↦ (n−p, n−q)`:
/// `*ω(·,·) = (−1)^{(p+q)(n−p−q)} ω(*·, *·)`.
///
/// Independent of orientation, since the classical star is applied once in
/// each slot.
pub fn hodge_star(omega: &DoubleForm) -> DoubleForm {
    let n = omega.n();
    omega.map_terms(n, |r, c, v, emit| {
        let (p, q) = (r.len(), c.len());
        // ω(*e_K, *e_L) with K = Iᶜ: *e_K = ε(K, Kᶜ) e_{Kᶜ}.
        let (rc, _) = complement_with_sign(r, n);
        let (cc, _) = complement_with_sign(c, n);
        let mut s = shuffle_sign(rc, r) * shuffle_sign(cc, c);
        // (n − p − q) has the parity of (n + p + q).
        if ((p + q) * (n + p + q)) % 2 == 1 {
            s = -s;
        }
        emit(rc, cc, if s < 0 { -v.clone() } else { v.clone() });
    })
}

/// `g^n / n!`, the volume element of `D^{n,n}`.
pub fn volume(n: usize) -> DoubleForm {
    DoubleForm::from_terms(
        n,
        [(MultiIndex::full(n), MultiIndex::full(n), num_traits::One::one())],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn e(n: usize, r: &[usize], c: &[usize]) -> DoubleForm {
        DoubleForm::basis(n, r, c, int(1))
    }

    #[test]
    fn vector_interiors() {
        let w = e(3, &[1, 2], &[1, 2]);
        let v1 = DoubleForm::basis(3, &[1], &[], int(1));
        let w1 = DoubleForm::basis(3, &[], &[1], int(1));
        let v3 = DoubleForm::basis(3, &[3], &[], int(1));
        assert_eq!(interior_left(&v1, &w).unwrap(), e(3, &[2], &[1, 2]));
        assert_eq!(interior_right(&w1, &w).unwrap(), e(3, &[1, 2], &[2]));
        assert!(interior_left(&v3, &w).unwrap().is_zero());
        assert!(interior_left(&w1, &w).is_err());
        // ĩ_v(ω) = (i_v(ωᵗ))ᵗ
        let x = e(3, &[1, 3], &[2, 3]) + DoubleForm::basis(3, &[2], &[1, 3], int(4));
        let v2 = DoubleForm::basis(3, &[3], &[], int(1));
        let w2 = DoubleForm::basis(3, &[], &[3], int(1));
        assert_eq!(
            interior_right(&w2, &x).unwrap(),
            interior_left(&v2, &x.transpose()).unwrap().transpose()
        );
    }

    #[test]
    fn interior_examples() {
        let n = 3;
        let w = e(n, &[1, 2], &[1, 3]) + DoubleForm::basis(n, &[2, 3], &[2, 3], int(2));
        assert_eq!(interior(&DoubleForm::metric(n), &w).unwrap(), w.contraction());
        let h = DoubleForm::diagonal(&[int(1), int(2), int(3)]);
        let k = DoubleForm::basis(n, &[1], &[2], int(5)) + DoubleForm::basis(n, &[3], &[3], int(1));
        assert_eq!(interior(&h, &k).unwrap().scalar_part(), h.inner_product(&k).unwrap());
        assert_eq!(interior(&k, &h).unwrap().scalar_part(), h.inner_product(&k).unwrap());
        assert_eq!(
            interior(&h, &DoubleForm::unit(n, 2)).unwrap(),
            DoubleForm::diagonal(&[int(5), int(4), int(3)])
        );
        // wrong degrees give zero
        assert!(interior(&DoubleForm::unit(n, 2), &h).unwrap().is_zero());
    }

    #[test]
    fn star_examples() {
        for n in 0..6 {
            assert_eq!(hodge_star(&DoubleForm::one(n)), volume(n));
            assert_eq!(hodge_star(&volume(n)), DoubleForm::one(n));
        }
        assert_eq!(hodge_star(&e(2, &[1], &[1])), e(2, &[2], &[2]));
        assert_eq!(hodge_star(&e(2, &[1], &[2])), -e(2, &[2], &[1]));
    }

    #[test]
    fn mu_examples() {
        let w = e(3, &[1], &[2]);
        assert_eq!(mu(&DoubleForm::one(3), &w).unwrap(), w);
        assert_eq!(mu(&DoubleForm::metric(3), &w).unwrap(), &DoubleForm::metric(3) * &w);
    }
}
