//! Exterior extensions of an endomorphism `h` of `V` and the characteristic
//! invariants built from them.
//!
//! For a (1,1) form `h`, `e^h = Σ_p h^p/p!` is the double form of the
//! extension `ĥ(v1∧…∧vp) = h̄(v1)∧…∧h̄(vp)`, and the right and left actions of
//! `ĥ` on double forms are `ĥ_R(ω) = e^h ∘ ω` and `ĥ_L(ω) = ω ∘ e^{hᵗ}`.

use num_traits::Zero;

use crate::combinatorics::MultiIndex;
use crate::double_form::DoubleForm;
use crate::error::{Error, Result};
use crate::interior::{hodge_star, interior};
use crate::scalar::{factorial_q, Scalar};

fn out_of_range(what: &'static str, value: usize, range: String) -> Error {
    Error::OutOfRange { what, value, range }
}

/// `h^p / p!`.
pub fn divided_power(h: &DoubleForm, p: usize) -> DoubleForm {
    h.pow(p).scale(&(factorial_q(p).recip()))
}

/// `e^h = 1 + h + h²/2! + … + hⁿ/n!` (higher powers vanish).
pub fn exp_ext(h: &DoubleForm) -> Result<DoubleForm> {
    h.require_bidegree(1, 1)?;
    let n = h.n();
    let mut sum = DoubleForm::one(n);
    let mut power = DoubleForm::one(n);
    for p in 1..=n {
        power = &power * h;
        if power.is_zero() {
            break;
        }
        sum += &power.scale(&factorial_q(p).recip());
    }
    Ok(sum)
}

/// `ĥ_R(ω) = e^h ∘ ω`.
pub fn hat_r(h: &DoubleForm, omega: &DoubleForm) -> Result<DoubleForm> {
    exp_ext(h)?.compose(omega)
}

/// `ĥ_L(ω) = ω ∘ e^{hᵗ}`.
pub fn hat_l(h: &DoubleForm, omega: &DoubleForm) -> Result<DoubleForm> {
    omega.compose(&exp_ext(&h.transpose())?)
}

/// `det h`, read off `hⁿ/n! = det h · gⁿ/n!`.
pub fn determinant(h: &DoubleForm) -> Result<Scalar> {
    h.require_bidegree(1, 1)?;
    let n = h.n();
    let full = MultiIndex::full(n);
    Ok(divided_power(h, n).coefficient(full, full))
}

/// `s_p(h) = i_{h^p/p!}(g^p/p!)`, the `p`-th elementary symmetric function
/// of the eigenvalues of `h`.
pub fn invariant_s(h: &DoubleForm, p: usize) -> Result<Scalar> {
    h.require_bidegree(1, 1)?;
    let n = h.n();
    if p > n {
        return Err(out_of_range("p", p, format!("0..={n}")));
    }
    Ok(interior(&divided_power(h, p), &DoubleForm::unit(n, p))?.scalar_part())
}

/// `[s_0(h), …, s_n(h)]`.
pub fn invariants(h: &DoubleForm) -> Result<Vec<Scalar>> {
    (0..=h.n()).map(|p| invariant_s(h, p)).collect()
}

/// The `p`-th Newton transformation `t_p(h) = i_{h^p/p!}(g^{p+1}/(p+1)!)`.
pub fn newton_t(h: &DoubleForm, p: usize) -> Result<DoubleForm> {
    h.require_bidegree(1, 1)?;
    let n = h.n();
    if n == 0 || p > n - 1 {
        return Err(out_of_range("p", p, format!("0..={}", n.saturating_sub(1))));
    }
    interior(&divided_power(h, p), &DoubleForm::unit(n, p + 1))
}

/// The `(r, p)` cofactor transformation `s_(r,p)(h) = i_{h^p/p!}(g^{p+r}/(p+r)!)`.
pub fn cofactor_s(h: &DoubleForm, r: usize, p: usize) -> Result<DoubleForm> {
    h.require_bidegree(1, 1)?;
    let n = h.n();
    if r > n || p > n - r {
        return Err(out_of_range("p", p, format!("0..=n-r with r = {r}, n = {n}")));
    }
    interior(&divided_power(h, p), &DoubleForm::unit(n, p + r))
}

/// The `(r, pq)` cofactor transformation of a (p,p) form,
/// `h_(r,pq)(ω) = *(g^{n−pq−r} ω^q / (n−pq−r)!)`.
///
/// The result is an `(r, r)` form and equals `i_{ω^q}(g^{pq+r}/(pq+r)!)`;
/// debug builds check that agreement on every call.
pub fn cofactor_general(omega: &DoubleForm, r: usize, q: usize) -> Result<DoubleForm> {
    let p = omega.require_square()?;
    let n = omega.n();
    let pq = p * q;
    if pq > n || r > n - pq {
        return Err(out_of_range("r", r, format!("0..=n-pq with pq = {pq}, n = {n}")));
    }
    let m = n - pq - r;
    let wq = omega.pow(q);
    let star_form = hodge_star(&(&DoubleForm::unit(n, m) * &wq));
    debug_assert_eq!(
        star_form,
        interior(&wq, &DoubleForm::unit(n, pq + r)).unwrap(),
        "cofactor transformation: star and interior expressions disagree"
    );
    Ok(star_form)
}

/// `p_i(h)`, the trace of the `i`-fold composition power.
pub fn power_trace(h: &DoubleForm, i: usize) -> Result<Scalar> {
    Ok(h.comp_power(i)?.contraction().scalar_part())
}

/// `Σ_{r=0}^{n} (−1)^r s_{n−r}(h) h^{∘r}`, which vanishes identically.
pub fn cayley_hamilton_residual(h: &DoubleForm) -> Result<DoubleForm> {
    let n = h.n();
    let s = invariants(h)?;
    let mut acc = DoubleForm::zero(n);
    let mut power = h.comp_power(0)?;
    for r in 0..=n {
        let mut c = s[n - r].clone();
        if r % 2 == 1 {
            c = -c;
        }
        acc += &power.scale(&c);
        power = power.compose(h)?;
    }
    Ok(acc)
}

/// `r s_r(h) − Σ_{i=1}^{r} (−1)^{i+1} s_{r−i}(h) p_i(h)` for `r = 1..=n`.
pub fn girard_newton_residuals(h: &DoubleForm) -> Result<Vec<Scalar>> {
    let n = h.n();
    let s = invariants(h)?;
    let traces: Vec<Scalar> = (0..=n).map(|i| power_trace(h, i)).collect::<Result<_>>()?;
    Ok((1..=n)
        .map(|r| {
            let mut rhs = Scalar::zero();
            for i in 1..=r {
                let term = &s[r - i] * &traces[i];
                if i % 2 == 1 {
                    rhs += term;
                } else {
                    rhs -= term;
                }
            }
            &s[r] * Scalar::from_integer(r.into()) - rhs
        })
        .collect())
}
