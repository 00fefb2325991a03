//! Randomized exact verification of the algebra's identities.
//!
//! Every identity runs on seeded random rational inputs. Trials run in
//! parallel and are reduced in trial order, so a report depends only on
//! `(identity, n, trials, seed)`.

use std::fmt::{self, Debug, Write as _};
use std::path::{Path, PathBuf};

use biform_core::curvature::{alt_bianchi_constant, bianchi_power};
use biform_core::endo::{
    cayley_hamilton_residual, cofactor_s, determinant, divided_power, exp_ext, girard_newton_residuals, hat_l,
    hat_r, invariant_s, invariants, newton_t, power_trace,
};
use biform_core::oracle::{
    alt_permutation_sum, cayley_hamilton_matrix, characteristic_coefficients, compound, dense as dense_matrix,
    hat_right, leibniz_det, mat_mul, mat_power, permutations, ring_operator,
};
use biform_core::scalar::{binomial, factorial, factorial_q, int};
use biform_core::{
    alt, bianchi, change_basis, complement_with_sign, enumerate, hodge_star, interior, is_pure_in_basis,
    merge_with_sign, mu, pontrjagin_form, product_of_bilinears, pure_curvature, to_operator, volume,
    CurvatureTensor, DoubleForm, Matrix, MultiIndex, Scalar,
};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::document::{Kind, TensorDocument};
use crate::sample::Trial;

/// A failed check, with a one-line description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError(pub String);

impl From<biform_core::Error> for CheckError {
    fn from(e: biform_core::Error) -> Self {
        CheckError(format!("unexpected error: {e}"))
    }
}

type Outcome = Result<(), CheckError>;

fn brief<T: Debug>(value: &T) -> String {
    let text = format!("{value:?}");
    if text.chars().count() > 240 {
        format!("{}...", text.chars().take(240).collect::<String>())
    } else {
        text
    }
}

macro_rules! ensure_eq {
    ($lhs:expr, $rhs:expr, $($ctx:tt)+) => {{
        let (lhs, rhs) = (&$lhs, &$rhs);
        if lhs != rhs {
            return Err(CheckError(format!("{}: {} != {}", format!($($ctx)+), brief(lhs), brief(rhs))));
        }
    }};
}

macro_rules! ensure {
    ($cond:expr, $($ctx:tt)+) => {
        if !$cond {
            return Err(CheckError(format!($($ctx)+)));
        }
    };
}

/// A named identity of the verification suite.
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub min_n: usize,
    pub default_n: usize,
    /// Run by `verify` when no suite is named. Negative controls and
    /// statements known not to hold are opt-in.
    pub default_selected: bool,
    pub check: fn(&mut Trial) -> Outcome,
}

impl Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity").field("name", &self.name).finish()
    }
}

fn sign(odd: bool) -> Scalar {
    if odd {
        int(-1)
    } else {
        int(1)
    }
}

fn unit(n: usize, p: usize) -> DoubleForm {
    DoubleForm::unit(n, p)
}

fn random_index(t: &mut Trial, size: usize) -> MultiIndex {
    let all = enumerate(t.n, size);
    all[t.range(0, all.len() - 1)]
}

/// Dense `C(n,p) × C(n,q)` rows of 𝒯(ω) for ω ∈ 𝒟^{q,p}, zero forms included.
fn operator_rows(w: &DoubleForm, p: usize, q: usize) -> Result<Vec<Vec<Scalar>>, CheckError> {
    let n = w.n();
    if w.is_zero() {
        let (r, c) = (enumerate(n, p).len(), enumerate(n, q).len());
        return Ok(vec![vec![Scalar::zero(); c]; r]);
    }
    Ok(to_operator(w, p, q)?.matrix.to_rows())
}

// combinatorics

fn merge_sign_symmetry(t: &mut Trial) -> Outcome {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for i in 1..=t.n {
        match t.range(0, 2) {
            0 => a.push(i),
            1 => b.push(i),
            _ => {}
        }
    }
    let (i, j) = (MultiIndex::from_indices(&a), MultiIndex::from_indices(&b));
    let (k1, s1) = merge_with_sign(i, j).ok_or_else(|| CheckError(format!("{i} and {j} reported overlapping")))?;
    let (k2, s2) = merge_with_sign(j, i).ok_or_else(|| CheckError(format!("{j} and {i} reported overlapping")))?;
    ensure_eq!(k1, k2, "merged index of {i}, {j}");
    let expected = if (i.len() * j.len()) % 2 == 0 { s2 } else { -s2 };
    ensure_eq!(s1, expected, "merge sign of {i}, {j}");
    if !i.is_empty() {
        ensure!(merge_with_sign(i, i).is_none(), "{i} merged with itself");
    }
    Ok(())
}

fn complement_twice(t: &mut Trial) -> Outcome {
    let n = t.n;
    let size = t.range(0, n);
    let i = random_index(t, size);
    let (c, s1) = complement_with_sign(i, n);
    let (back, s2) = complement_with_sign(c, n);
    ensure_eq!(back, i, "double complement of {i}");
    let expected: i8 = if (size * (n - size)) % 2 == 0 { 1 } else { -1 };
    ensure_eq!(s1 * s2, expected, "double complement sign of {i}");
    ensure_eq!(merge_with_sign(i, c), Some((MultiIndex::full(n), s1)), "e_I ∧ e_Ic for {i}");
    Ok(())
}

// exterior algebra

fn metric_adjoint_contraction(t: &mut Trial) -> Outcome {
    let n = t.n;
    let g = DoubleForm::metric(n);
    for p in 0..n {
        for q in 0..n {
            if p + q > n {
                continue;
            }
            let w1 = t.form(&format!("w1({p},{q})"), p, q, 8);
            let w2 = t.form(&format!("w2({},{})", p + 1, q + 1), p + 1, q + 1, 8);
            ensure_eq!(
                (&g * &w1).inner_product(&w2)?,
                w1.inner_product(&w2.contraction())?,
                "⟨g w1, w2⟩ vs ⟨w1, c w2⟩ at bidegree ({p},{q})"
            );
        }
    }
    Ok(())
}

fn graded_commutativity(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q, r, s) = (t.range(0, n), t.range(0, n), t.range(0, n), t.range(0, n));
    let a = t.form("a", p, q, 5);
    let b = t.form("b", r, s, 5);
    let ab = &a * &b;
    ensure_eq!(ab, (&b * &a).scale(&sign((p * r + q * s) % 2 == 1)), "a b vs ±b a");
    ensure_eq!(ab.transpose(), &a.transpose() * &b.transpose(), "(a b)ᵗ vs aᵗ bᵗ");
    Ok(())
}

fn exterior_associativity(t: &mut Trial) -> Outcome {
    let (a, b, c) = (t.mixed("a", 4), t.mixed("b", 4), t.mixed("c", 4));
    ensure_eq!(&(&a * &b) * &c, &a * &(&b * &c), "(a b) c vs a (b c)");
    ensure_eq!(a.transpose().transpose(), a, "double transpose");
    Ok(())
}

// Hodge star and interior products

fn metric_star_contraction(t: &mut Trial) -> Outcome {
    let n = t.n;
    let g = DoubleForm::metric(n);
    for p in 0..=n {
        for q in 0..=n {
            let w = t.form(&format!("w({p},{q})"), p, q, 6);
            let signed = (&g * &w).scale(&sign((n * (p + q)) % 2 == 1));
            ensure_eq!(hodge_star(&hodge_star(&w).contraction()), signed, "*c*w vs (−1)^(n(p+q)) g w at ({p},{q})");
            if p == q {
                ensure_eq!(hodge_star(&hodge_star(&w).contraction()), &g * &w, "*c*w vs g w at ({p},{p})");
                ensure_eq!(hodge_star(&(&g * &hodge_star(&w))), w.contraction(), "*g*w vs c w at ({p},{p})");
            }
        }
    }
    Ok(())
}

fn metric_star_contraction_unsigned(t: &mut Trial) -> Outcome {
    let n = t.n;
    let g = DoubleForm::metric(n);
    for p in 0..=n {
        for q in 0..=n {
            let w = t.form(&format!("w({p},{q})"), p, q, 6);
            ensure_eq!(&g * &w, hodge_star(&hodge_star(&w).contraction()), "g w vs *c*w at bidegree ({p},{q})");
        }
    }
    Ok(())
}

fn star_inner_product(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q) = (t.range(0, n), t.range(0, n));
    let w = t.form("w", p, q, 8);
    let th = t.form("theta", p, q, 8);
    let ip = DoubleForm::scalar(n, w.inner_product(&th)?);
    ensure_eq!(hodge_star(&(&w * &hodge_star(&th))), ip, "*(w *θ) vs ⟨w,θ⟩");
    let s = sign(((p + q) * (n + p + q)) % 2 == 1);
    ensure_eq!(hodge_star(&(&hodge_star(&w) * &th)).scale(&s), ip, "±*((*w) θ) vs ⟨w,θ⟩");
    Ok(())
}

fn star_interior_volume(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q, k) = (t.range(0, n), t.range(0, n), t.range(1, n));
    let w = t.form("w", p, q, 8);
    ensure_eq!(hodge_star(&w), interior(&w, &volume(n))?, "*w vs i_w(gⁿ/n!)");
    ensure_eq!(
        hodge_star(&(&unit(n, n - k) * &w)),
        interior(&w, &unit(n, k))?,
        "*(g^(n−k)/(n−k)! w) vs i_w(g^k/k!) with k = {k}"
    );
    Ok(())
}

fn star_squared(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(0, n);
    let w = t.form("w", p, p, 8);
    ensure_eq!(hodge_star(&hodge_star(&w)), w, "** w at ({p},{p})");
    let q = t.range(0, n);
    let v = t.form("v", p, q, 8);
    let s = sign((p * (n - p) + q * (n - q)) % 2 == 1);
    ensure_eq!(hodge_star(&hodge_star(&v)), v.scale(&s), "** v at ({p},{q})");
    Ok(())
}

fn interior_adjoint(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (r, s) = (t.range(0, n), t.range(0, n));
    let (p, q) = (t.range(0, n - r), t.range(0, n - s));
    let psi = t.form("psi", r, s, 4);
    let w1 = t.form("w1", r + p, s + q, 8);
    let w2 = t.form("w2", p, q, 8);
    ensure_eq!(
        interior(&psi, &w1)?.inner_product(&w2)?,
        w1.inner_product(&mu(&psi, &w2)?)?,
        "⟨i_ψ w1, w2⟩ vs ⟨w1, ψ w2⟩"
    );
    Ok(())
}

fn interior_iterated(t: &mut Trial) -> Outcome {
    let (psi, phi, w) = (t.mixed("psi", 3), t.mixed("phi", 3), t.mixed("w", 10));
    ensure_eq!(interior(&psi, &interior(&phi, &w)?)?, interior(&(&phi * &psi), &w)?, "i_ψ i_φ w vs i_(φψ) w");
    Ok(())
}

fn interior_metric_powers(t: &mut Trial) -> Outcome {
    let k = t.range(0, 3);
    let w = t.mixed("w", 10);
    ensure_eq!(interior(&DoubleForm::metric_power(t.n, k), &w)?, w.contraction_power(k), "i_(g^{k}) w vs c^{k} w");
    Ok(())
}

fn interior_metric_closed_form(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(1, n.min(3));
    let k = t.range(1, p);
    let lhs = interior(&DoubleForm::metric_power(n, k), &unit(n, p))?;
    let c = factorial_q(n + k - p) / (factorial_q(p - k) * factorial_q(n - p));
    ensure_eq!(lhs, DoubleForm::metric_power(n, p - k).scale(&c), "i_(g^{k})(g^{p}/{p}!)");
    let h = t.bilinear("h");
    ensure_eq!(
        interior(&h, &unit(n, 2))?,
        &DoubleForm::metric(n).scale(&h.contraction().scalar_part()) - &h.transpose(),
        "i_h(g²/2)"
    );
    Ok(())
}

fn star_mu_star(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, r) = (t.range(0, n), t.range(0, n));
    let w = t.form("w", p, p, 6);
    let phi = t.form("phi", r, r, 6);
    ensure_eq!(hodge_star(&mu(&w, &hodge_star(&phi))?), interior(&w, &phi)?, "*μ_w* φ vs i_w φ");
    ensure_eq!(hodge_star(&interior(&w, &hodge_star(&phi))?), mu(&w, &phi)?, "*i_w* φ vs μ_w φ");
    ensure_eq!(hodge_star(&mu(&w, &phi)?), interior(&w, &hodge_star(&phi))?, "*μ_w φ vs i_w *φ");
    ensure_eq!(mu(&w, &hodge_star(&phi))?, hodge_star(&interior(&w, &phi)?), "μ_w *φ vs *i_w φ");
    Ok(())
}

fn interior_ring_operator(t: &mut Trial) -> Outcome {
    let h = t.bilinear("h");
    let r = t.curvature("R");
    ensure_eq!(interior(&h, &r)?, ring_operator(&r, &dense_matrix(&h)), "i_h R vs R̊h");
    let k = t.bilinear("k");
    ensure_eq!(interior(&h, &k)?.scalar_part(), h.inner_product(&k)?, "i_h k vs ⟨h,k⟩");
    Ok(())
}

fn star_composition(t: &mut Trial) -> Outcome {
    let (a, b) = (t.mixed("a", 6), t.mixed("b", 6));
    ensure_eq!(hodge_star(&a.compose(&b)?), hodge_star(&a).compose(&hodge_star(&b))?, "*(a∘b) vs *a∘*b");
    Ok(())
}

// composition algebra

fn operator_multiplicative(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q, r) = (t.range(0, n), t.range(0, n), t.range(0, n));
    // w1 ∈ D^{q,p} acts Λ^q → Λ^p, w2 ∈ D^{r,q} acts Λ^r → Λ^q
    let w1 = t.dense("w1", q, p);
    let w2 = t.dense("w2", r, q);
    let t1 = operator_rows(&w1, p, q)?;
    let t2 = operator_rows(&w2, q, r)?;
    ensure_eq!(operator_rows(&w1.compose(&w2)?, p, r)?, mat_mul(&t1, &t2), "𝒯(w1∘w2) vs 𝒯(w1)𝒯(w2)");
    let tt = operator_rows(&w1.transpose(), q, p)?;
    let t1t: Vec<Vec<Scalar>> = (0..t1.first().map_or(0, Vec::len))
        .map(|j| t1.iter().map(|row| row[j].clone()).collect())
        .collect();
    ensure_eq!(tt, t1t, "𝒯(w1ᵗ) vs 𝒯(w1)ᵗ");
    Ok(())
}

fn composition_transpose(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q, r) = (t.range(0, n), t.range(0, n), t.range(0, n));
    let a = t.form("a", p, q, 6);
    let b = t.form("b", r, p, 6);
    let c = t.form("c", r, q, 6);
    let ab = a.compose(&b)?;
    ensure_eq!(ab.transpose(), b.transpose().compose(&a.transpose())?, "(a∘b)ᵗ vs bᵗ∘aᵗ");
    let lhs = ab.inner_product(&c)?;
    ensure_eq!(lhs, b.inner_product(&a.transpose().compose(&c)?)?, "⟨a∘b, c⟩ vs ⟨b, aᵗ∘c⟩");
    ensure_eq!(lhs, a.inner_product(&c.compose(&b.transpose())?)?, "⟨a∘b, c⟩ vs ⟨a, c∘bᵗ⟩");
    Ok(())
}

fn composition_units(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q) = (t.range(0, n), t.range(0, n));
    let w = t.form("w", q, p, 8);
    ensure_eq!(unit(n, p).compose(&w)?, w, "(g^{p}/{p}!)∘w");
    ensure_eq!(w.compose(&unit(n, q))?, w, "w∘(g^{q}/{q}!)");
    ensure_eq!(DoubleForm::full_unit(n).compose(&w)?, w, "e^g∘w");
    let v1 = t.form("v1", p, p, 8);
    let v2 = t.form("v2", p, p, 8);
    let full = v2.transpose().compose(&v1)?.contraction_power(p).scale(&factorial_q(p).recip());
    ensure_eq!(full.scalar_part(), v1.inner_product(&v2)?, "c^p(v2ᵗ∘v1)/p! vs ⟨v1,v2⟩");
    Ok(())
}

fn composition_associative(t: &mut Trial) -> Outcome {
    let (a, b, c) = (t.mixed("a", 6), t.mixed("b", 6), t.mixed("c", 6));
    ensure_eq!(a.compose(&b)?.compose(&c)?, a.compose(&b.compose(&c)?)?, "(a∘b)∘c vs a∘(b∘c)");
    Ok(())
}

fn exterior_power_compound(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(0, n.min(3));
    let h = t.bilinear("h");
    let m = dense_matrix(&h);
    let mt: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect();
    ensure_eq!(operator_rows(&divided_power(&h, p), p, p)?, compound(&mt, p), "𝒯(h^{p}/{p}!) vs compound matrix");
    Ok(())
}

// endomorphisms and invariants

fn extension_unit_forms(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(0, n);
    let h = t.bilinear("h");
    ensure_eq!(hat_r(&h, &unit(n, p))?, divided_power(&h, p), "ĥ_R(g^{p}/{p}!) vs h^{p}/{p}!");
    ensure_eq!(hat_l(&h, &unit(n, p))?, divided_power(&h.transpose(), p), "ĥ_L(g^{p}/{p}!) vs (hᵗ)^{p}/{p}!");
    ensure_eq!(exp_ext(&h)?.component(p, p), divided_power(&h, p), "degree ({p},{p}) part of e^h");
    Ok(())
}

fn extension_minor_oracle(t: &mut Trial) -> Outcome {
    let n = t.n;
    let (p, q) = (t.range(0, n), t.range(0, n.min(3)));
    let h = t.bilinear("h");
    let w = t.form("w", p, q, 6);
    ensure_eq!(hat_r(&h, &w)?, hat_right(&dense_matrix(&h), &w), "e^h∘w vs minor expansion");
    ensure_eq!(hat_l(&h, &w)?, hat_r(&h, &w.transpose())?.transpose(), "ĥ_L(w) vs ĥ_R(wᵗ)ᵗ");
    Ok(())
}

fn extension_multiplicative(t: &mut Trial) -> Outcome {
    let h = t.bilinear("h");
    let (a, b) = (t.mixed("a", 4), t.mixed("b", 4));
    let ab = &a * &b;
    ensure_eq!(hat_r(&h, &ab)?, &hat_r(&h, &a)? * &hat_r(&h, &b)?, "ĥ_R(ab) vs ĥ_R(a)ĥ_R(b)");
    ensure_eq!(hat_l(&h, &ab)?, &hat_l(&h, &a)? * &hat_l(&h, &b)?, "ĥ_L(ab) vs ĥ_L(a)ĥ_L(b)");
    let ht = h.transpose();
    ensure_eq!(
        hat_r(&h, &a)?.inner_product(&b)?,
        a.inner_product(&hat_r(&ht, &b)?)?,
        "⟨ĥ_R a, b⟩ vs ⟨a, (hᵗ)^_R b⟩"
    );
    Ok(())
}

fn laplace_sides(t: &mut Trial) -> Result<(DoubleForm, DoubleForm, DoubleForm, Scalar), CheckError> {
    let n = t.n;
    let p = t.range(0, n);
    let h = t.bilinear("h");
    let det = determinant(&h)?;
    let ht = h.transpose();
    let lhs = divided_power(&ht, n - p).compose(&hodge_star(&divided_power(&h, p)))?;
    let mirror = hodge_star(&divided_power(&ht, p)).compose(&divided_power(&h, n - p))?;
    let leibniz = leibniz_det(&dense_matrix(&h));
    ensure_eq!(det, leibniz, "det h vs Leibniz sum");
    Ok((lhs, mirror, unit(n, n - p).scale(&det), det))
}

fn laplace(t: &mut Trial) -> Outcome {
    let (lhs, mirror, rhs, _) = laplace_sides(t)?;
    ensure_eq!(lhs, rhs, "(hᵗ)^(n−p)/(n−p)! ∘ *(h^p/p!) vs det h · g^(n−p)/(n−p)!");
    ensure_eq!(mirror, rhs, "*((hᵗ)^p/p!) ∘ h^(n−p)/(n−p)! vs det h · g^(n−p)/(n−p)!");
    Ok(())
}

/// Negative control: the Laplace expansion with its sign flipped.
fn laplace_wrong_sign(t: &mut Trial) -> Outcome {
    let (lhs, _, rhs, _) = laplace_sides(t)?;
    ensure_eq!(lhs, -rhs, "(hᵗ)^(n−p)/(n−p)! ∘ *(h^p/p!) vs −det h · g^(n−p)/(n−p)!");
    Ok(())
}

fn starred_powers(t: &mut Trial) -> Outcome {
    let n = t.n;
    let h = t.bilinear("h");
    let det = determinant(&h)?;
    for p in 0..=n {
        for q in n - p..=n {
            let m = p + q - n;
            let c = Scalar::from_integer(binomial(2 * n - p - q, n - p).into())
                * factorial_q(p)
                * factorial_q(q)
                * &det;
            let star_p = hodge_star(&h.pow(p));
            let star_q = hodge_star(&h.pow(q));
            ensure_eq!(interior(&star_p, &h.pow(q))?, divided_power(&h, m).scale(&c), "i_(*h^{p}) h^{q}");
            ensure_eq!(&star_p * &star_q, hodge_star(&divided_power(&h, m)).scale(&c), "(*h^{p})(*h^{q})");
        }
    }
    Ok(())
}

fn characteristic_coefficients_check(t: &mut Trial) -> Outcome {
    let n = t.n;
    let h = t.bilinear("h");
    let s = invariants(&h)?;
    ensure_eq!(s, characteristic_coefficients(&dense_matrix(&h)), "s_p(h) vs principal-minor sums");
    for p in 0..=n {
        ensure_eq!(
            hodge_star(&(&unit(n, n - p) * &divided_power(&h, p))),
            DoubleForm::scalar(n, s[p].clone()),
            "*(g^(n−p) h^p/((n−p)! p!)) vs s_{p}"
        );
    }
    ensure_eq!(determinant(&h)?, s[n], "det h vs s_n");
    Ok(())
}

fn newton_transformations(t: &mut Trial) -> Outcome {
    let n = t.n;
    let h = t.bilinear("h");
    let g = DoubleForm::metric(n);
    let ht = h.transpose();
    ensure_eq!(newton_t(&h, 0)?, g, "t_0");
    for p in 0..n {
        let star = hodge_star(&(&unit(n, n - p - 1) * &divided_power(&h, p)));
        ensure_eq!(newton_t(&h, p)?, star, "t_{p} vs star form");
        if p >= 1 {
            let rec = &g.scale(&invariant_s(&h, p)?) - &newton_t(&h, p - 1)?.compose(&ht)?;
            ensure_eq!(newton_t(&h, p)?, rec, "t_{p} vs s_p g − t_(p−1)∘hᵗ");
        }
    }
    let r = t.range(0, n);
    let p = t.range(0, n - r);
    ensure_eq!(
        cofactor_s(&h, r, p)?,
        hodge_star(&(&unit(n, n - p - r) * &divided_power(&h, p))),
        "s_({r},{p}) vs star form"
    );
    Ok(())
}

fn girard_newton(t: &mut Trial) -> Outcome {
    let h = t.symmetric("h");
    let residuals = girard_newton_residuals(&h)?;
    ensure!(residuals.iter().all(Zero::is_zero), "nonzero residuals {}", brief(&residuals));
    let residual = cayley_hamilton_residual(&h)?;
    ensure!(residual.is_zero(), "Σ(−1)^r s_(n−r) h^∘r = {}", brief(&residual));
    let m = dense_matrix(&h);
    for i in 0..=3 {
        let trace = (0..t.n).fold(Scalar::zero(), |acc, k| acc + &mat_power(&m, i)[k][k]);
        ensure_eq!(power_trace(&h, i)?, trace, "p_{i}(h) vs trace of the matrix power");
    }
    Ok(())
}

fn cayley_hamilton_general(t: &mut Trial) -> Outcome {
    let h = t.bilinear("h");
    let residual = cayley_hamilton_residual(&h)?;
    ensure!(residual.is_zero(), "Σ(−1)^r s_(n−r) h^∘r = {}", brief(&residual));
    let m = dense_matrix(&h);
    ensure!(
        cayley_hamilton_matrix(&m).iter().flatten().all(Zero::is_zero),
        "matrix characteristic polynomial does not annihilate h"
    );
    ensure_eq!(invariants(&h)?, characteristic_coefficients(&m), "s_p(h) vs matrix coefficients");
    Ok(())
}

fn greub_basic(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(1, n.min(3));
    let h = t.bilinear("h");
    let hs: Vec<DoubleForm> = (0..p).map(|i| t.bilinear(&format!("h{}", i + 1))).collect();
    let prod_without = |skip: &[usize]| {
        (0..p)
            .filter(|i| !skip.contains(i))
            .fold(DoubleForm::one(n), |acc, i| &acc * &hs[i])
    };
    let full = prod_without(&[]);
    let ht = h.transpose();
    let mut rhs = DoubleForm::zero(n);
    let mut contraction = DoubleForm::zero(n);
    for j in 0..p {
        let rest = prod_without(&[j]);
        rhs += &rest.scale(&h.inner_product(&hs[j])?);
        contraction += &(&hs[j].contraction() * &rest);
        for k in j + 1..p {
            let rest = prod_without(&[j, k]);
            let a = hs[j].compose(&ht)?.compose(&hs[k])?;
            let b = hs[k].compose(&ht)?.compose(&hs[j])?;
            rhs -= &(&(&a + &b) * &rest);
            let c = &hs[k].compose(&hs[j])? + &hs[j].compose(&hs[k])?;
            contraction -= &(&c * &rest);
        }
    }
    ensure_eq!(interior(&h, &full)?, rhs, "i_h(h1⋯h{p}) vs three-term expansion");
    ensure_eq!(full.contraction(), contraction, "c(h1⋯h{p}) vs its expansion");
    Ok(())
}

fn contraction_of_powers(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(1, n.min(4));
    let k = t.bilinear("k");
    let mut rhs = &k.contraction() * &k.pow(p - 1).scale(&int(p as i64));
    if p >= 2 {
        rhs -= &(&k.compose(&k)? * &k.pow(p - 2)).scale(&int((p * (p - 1)) as i64));
    }
    ensure_eq!(k.pow(p).contraction(), rhs, "c(k^{p})");
    let g = DoubleForm::metric(n);
    let mut rhs_g = &g.contraction() * &g.pow(p - 1).scale(&int(p as i64));
    if p >= 2 {
        rhs_g -= &(&g.compose(&g)? * &g.pow(p - 2)).scale(&int((p * (p - 1)) as i64));
    }
    ensure_eq!(rhs_g, g.pow(p - 1).scale(&int((p * (n - p + 1)) as i64)), "c(g^{p}) vs p(n−p+1) g^(p−1)");
    ensure_eq!(g.pow(p).contraction(), rhs_g, "c(g^{p})");
    Ok(())
}

fn vanstone(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(1, 2.min(n / 2));
    let k = t.range(p, n - p);
    let w = t.form("w", p, p, 10);
    let lhs = hodge_star(&(&unit(n, k - p) * &w));
    let wt = w.transpose();
    let mut rhs = DoubleForm::zero(n);
    for r in 0..=p {
        let Some(m) = (n + r).checked_sub(p + k) else { continue };
        let term = &unit(n, m) * &wt.contraction_power(r).scale(&factorial_q(r).recip());
        rhs += &term.scale(&sign((r + p) % 2 == 1));
    }
    ensure_eq!(lhs, rhs, "*(g^(k−p)/(k−p)! w) with k = {k}, p = {p}");
    Ok(())
}

fn greub_vanstone(t: &mut Trial) -> Outcome {
    let n = t.n;
    let p = t.range(1, n.min(3));
    let h = t.bilinear("h");
    let k = t.bilinear("k");
    ensure_eq!(
        h.pow(p).compose(&k.pow(p))?,
        h.compose(&k)?.pow(p).scale(&factorial_q(p)),
        "h^{p}∘k^{p} vs {p}!(h∘k)^{p}"
    );
    let hs: Vec<DoubleForm> = (0..p).map(|i| t.bilinear(&format!("h{}", i + 1))).collect();
    let ks: Vec<DoubleForm> = (0..p).map(|i| t.bilinear(&format!("k{}", i + 1))).collect();
    let prod = |fs: &[DoubleForm]| fs.iter().fold(DoubleForm::one(n), |acc, f| &acc * f);
    let lhs = prod(&hs).compose(&prod(&ks))?;
    let mut sum = DoubleForm::zero(n);
    for (perm, _) in permutations(p) {
        let factors = (0..p)
            .map(|i| hs[i].compose(&ks[perm[i]]))
            .collect::<Result<Vec<_>, _>>()?;
        sum += &prod(&factors);
    }
    ensure_eq!(lhs, sum, "(h1⋯h{p})∘(k1⋯k{p}) vs Σ_σ Π h_i∘k_σ(i)");
    Ok(())
}

// curvature

fn alt_oracle(t: &mut Trial) -> Outcome {
    let p = t.range(1, 2.min(t.n / 2));
    let w = t.form("w", p, p, 12);
    ensure_eq!(alt(&w)?, alt_permutation_sum(&w, p), "Alt(w) vs the (2p)!-term permutation sum");
    ensure_eq!(alt(&w)?, bianchi_power(&w)?.scale(&alt_bianchi_constant(p)), "Alt vs p!/(2p)! 𝔖^p");
    Ok(())
}

fn bianchi_kernel(t: &mut Trial) -> Outcome {
    let q = t.rotation("Q");
    let count = t.range(2, 3);
    let hs: Vec<DoubleForm> = (0..count).map(|i| t.diagonal_in(&format!("h{}", i + 1), &q)).collect();
    for a in &hs {
        for b in &hs {
            ensure_eq!(a.compose(b)?, b.compose(a)?, "factors do not commute");
        }
    }
    let product = product_of_bilinears(&hs)?;
    ensure!(bianchi(&product).is_zero(), "𝔖 of the product is nonzero");
    ensure!(alt(&product)?.is_zero(), "Alt of the product is {}", brief(&alt(&product)?));
    let pair = product_of_bilinears(&hs[..2])?;
    let square = &pair * &pair;
    ensure!(bianchi(&square).is_zero(), "𝔖 of a product of kernel elements is nonzero");
    ensure!(alt(&square)?.is_zero(), "Alt of a product of kernel elements is nonzero");
    Ok(())
}

fn pure_vanishing(t: &mut Trial) -> Outcome {
    let n = t.n;
    let lambda = t.pure_lambda();
    let r = pure_curvature(n, &lambda)?;
    t.note("R", Kind::Curvature, r.form());
    ensure!(is_pure_in_basis(r.form(), &Matrix::identity(n))?.pure, "R is not pure in the standard basis");
    ensure!(alt(&r.form().compose(r.form())?)?.is_zero(), "Alt(R∘R) is nonzero");
    let q = t.rotation("Q");
    let rotated = change_basis(r.form(), &q.transpose())?;
    t.note("R rotated", Kind::Curvature, &rotated);
    let rc = CurvatureTensor::new(rotated.clone())?;
    ensure!(is_pure_in_basis(&rotated, &q)?.pure, "rotated R is not pure in the rotated basis");
    ensure!(alt(&rotated.compose(&rotated)?)?.is_zero(), "Alt(R∘R) is nonzero for the rotated R");
    ensure!(pontrjagin_form(&rc, 1)?.form.is_zero(), "P_1 of the rotated R is nonzero");
    Ok(())
}

fn two_pure_witness(t: &mut Trial) -> Outcome {
    let n = t.n;
    let q = t.rotation("Q");
    let r = t.commuting_product_sum("R", &q, 3);
    CurvatureTensor::new(r.clone())?;
    let standard = Matrix::identity(n);
    let r2 = r.pow(2);
    ensure!(is_pure_in_basis(&r2, &standard)?.pure, "R² is not pure, so R is not 2-pure");
    ensure!(!is_pure_in_basis(&r, &standard)?.pure, "witness is pure in the standard basis");
    ensure!(is_pure_in_basis(&r, &q)?.pure, "witness is not pure in its eigenbasis");
    let alt_rr = alt(&r.compose(&r)?)?;
    ensure!(alt_rr.is_zero(), "Alt(R∘R) = {}", brief(&alt_rr));
    Ok(())
}

fn stehney(t: &mut Trial) -> Outcome {
    let a = t.symmetric("A");
    let c = t.nonzero_scalar();
    let r = (&a * &a).scale(&c);
    t.note("R", Kind::Curvature, &r);
    CurvatureTensor::new(r.clone())?;
    ensure!(alt(&r.compose(&r)?)?.is_zero(), "Alt(R∘R) is nonzero for R = {c}·A²");
    Ok(())
}

fn pontrjagin_alt_oracle(t: &mut Trial) -> Outcome {
    let r = t.curvature("R");
    let rc = CurvatureTensor::new(r.clone())?;
    let p1 = pontrjagin_form(&rc, 1)?;
    let oracle = alt_permutation_sum(&r.compose(&r)?, 2);
    for k in enumerate(t.n, 4) {
        ensure_eq!(p1.form.coefficient(k), oracle.coefficient(k), "Alt(R∘R) coefficient on {k}");
    }
    ensure_eq!(p1.normalization.rational, Scalar::new(1.into(), 4.into()), "P_1 normalization");
    Ok(())
}

fn alt_wedge(t: &mut Trial) -> Outcome {
    let n = t.n;
    let a_deg = t.range(1, ((n - 1) / 2).clamp(1, 2));
    let b_deg = t.range(1, (n.div_ceil(2) - a_deg).clamp(1, 2));
    let a = t.form("a", a_deg, a_deg, 8);
    let b = t.form("b", b_deg, b_deg, 8);
    let p = a_deg + b_deg;
    let sq = |k: usize| Scalar::from_integer(factorial(k) * factorial(k));
    let c = sq(a_deg) * sq(b_deg) * Scalar::from_integer(factorial(2 * p))
        / (Scalar::from_integer(factorial(2 * a_deg) * factorial(2 * b_deg)) * sq(p))
        * sign((a_deg * b_deg) % 2 == 1);
    let lhs = alt(&a)?.wedge(&alt(&b)?)?;
    let rhs = alt(&(&a * &b))?.scale(&c);
    if lhs.is_zero() || rhs.is_zero() {
        ensure!(lhs.is_zero() && rhs.is_zero(), "Alt(a)∧Alt(b) = {} but c·Alt(ab) = {}", brief(&lhs), brief(&rhs));
    } else {
        ensure_eq!(lhs, rhs, "Alt(a)∧Alt(b) vs c·Alt(ab)");
    }
    Ok(())
}

fn three_dimensional_curvature(t: &mut Trial) -> Outcome {
    let r = t.curvature("R");
    let g = DoubleForm::metric(3);
    let c = r.contraction();
    let a = &c - &g.scale(&(c.contraction().scalar_part() / int(4)));
    ensure_eq!(&a * &g, r, "R vs (cR − (c²R/4) g) g");
    Ok(())
}

macro_rules! identity {
    ($name:expr, $min:expr, $default:expr, $check:expr, $statement:expr) => {
        Identity {
            name: $name,
            statement: $statement,
            min_n: $min,
            default_n: $default,
            default_selected: true,
            check: $check,
        }
    };
    (opt_in $name:expr, $min:expr, $default:expr, $check:expr, $statement:expr) => {
        Identity {
            name: $name,
            statement: $statement,
            min_n: $min,
            default_n: $default,
            default_selected: false,
            check: $check,
        }
    };
}

/// Every identity of the suite, in report order.
pub static IDENTITIES: &[Identity] = &[
    identity!("merge-sign-symmetry", 2, 4, merge_sign_symmetry, "e_I∧e_J = (−1)^{|I||J|} e_J∧e_I"),
    identity!("complement-twice", 2, 4, complement_twice, "complementing twice returns I with sign (−1)^{|I|(n−|I|)}"),
    identity!("metric-adjoint-contraction", 2, 3, metric_adjoint_contraction, "⟨g w1, w2⟩ = ⟨w1, c w2⟩ for all bidegrees"),
    identity!("graded-commutativity", 2, 3, graded_commutativity, "a b = (−1)^{pr+qs} b a and (ab)ᵗ = aᵗ bᵗ"),
    identity!("exterior-associativity", 2, 3, exterior_associativity, "(a b) c = a (b c)"),
    identity!("metric-star-contraction", 2, 3, metric_star_contraction, "*c*w = (−1)^{n(p+q)} g w; g w = *c*w and c w = *g*w on the diagonal"),
    identity!(opt_in "metric-star-contraction-unsigned", 2, 3, metric_star_contraction_unsigned, "g w = *c*w for every bidegree"),
    identity!("star-inner-product", 2, 3, star_inner_product, "⟨w,θ⟩ = *(w *θ) = (−1)^{(p+q)(n−p−q)} *((*w) θ)"),
    identity!("star-interior-volume", 2, 3, star_interior_volume, "*w = i_w(gⁿ/n!)"),
    identity!("star-squared", 2, 3, star_squared, "** = identity on the diagonal"),
    identity!("interior-adjoint", 2, 3, interior_adjoint, "i_ψ is adjoint to left multiplication by ψ"),
    identity!("interior-iterated", 2, 3, interior_iterated, "i_ψ ∘ i_φ = i_{φψ}"),
    identity!("interior-metric-powers", 2, 3, interior_metric_powers, "i_{g^k} = c^k"),
    identity!("interior-metric-closed-form", 2, 3, interior_metric_closed_form, "i_{g^k}(g^p/p!) = (n+k−p)!/((p−k)!(n−p)!) g^{p−k}"),
    identity!("star-mu-star", 2, 3, star_mu_star, "*μ_w* = i_w on the diagonal"),
    identity!("interior-ring-operator", 2, 3, interior_ring_operator, "i_h R = R̊h and i_h k = ⟨h,k⟩"),
    identity!("star-composition", 2, 3, star_composition, "*(a∘b) = *a ∘ *b"),
    identity!("operator-multiplicative", 2, 3, operator_multiplicative, "𝒯(w1∘w2) = 𝒯(w1)𝒯(w2) and 𝒯(wᵗ) = 𝒯(w)ᵗ"),
    identity!("composition-transpose", 2, 3, composition_transpose, "(a∘b)ᵗ = bᵗ∘aᵗ"),
    identity!("composition-units", 2, 3, composition_units, "g^p/p! is the unit of the composition product"),
    identity!("composition-associative", 2, 3, composition_associative, "(a∘b)∘c = a∘(b∘c)"),
    identity!("exterior-power-compound", 2, 3, exterior_power_compound, "𝒯(h^p/p!) is the p-th compound of hᵀ"),
    identity!("extension-unit-forms", 2, 3, extension_unit_forms, "ĥ_R(g^p/p!) = h^p/p!"),
    identity!("extension-minor-oracle", 2, 3, extension_minor_oracle, "ĥ_R(w) = e^h∘w agrees with the minor expansion"),
    identity!("extension-multiplicative", 2, 3, extension_multiplicative, "ĥ_R and ĥ_L are algebra endomorphisms"),
    identity!("laplace", 3, 3, laplace, "(hᵗ)^{n−p}/(n−p)! ∘ *(h^p/p!) = det h · g^{n−p}/(n−p)!"),
    identity!(opt_in "laplace-wrong-sign", 3, 3, laplace_wrong_sign, "negative control: the Laplace expansion with a flipped sign"),
    identity!("starred-powers", 3, 3, starred_powers, "i_{*h^p} h^q and (*h^p)(*h^q) for p+q ≥ n"),
    identity!("characteristic-coefficients", 2, 3, characteristic_coefficients_check, "s_p(h) = *(g^{n−p}h^p/((n−p)!p!)) = sum of principal p-minors"),
    identity!("newton-transformations", 2, 3, newton_transformations, "t_p(h) = *(g^{n−p−1}h^p/((n−p−1)!p!)) and its recursion"),
    identity!("girard-newton", 2, 4, girard_newton, "r s_r = Σ (−1)^{i+1} s_{r−i} p_i and Σ (−1)^r s_{n−r}(h) h^{∘r} = 0 for symmetric h"),
    identity!("cayley-hamilton-general", 2, 4, cayley_hamilton_general, "Σ (−1)^r s_{n−r}(h) h^{∘r} = 0 for any h"),
    identity!("greub-basic", 2, 3, greub_basic, "i_h(h1⋯hp) three-term expansion"),
    identity!("contraction-of-powers", 2, 3, contraction_of_powers, "c k^p = p(ck)k^{p−1} − p(p−1)(k∘k)k^{p−2}"),
    identity!("vanstone", 2, 4, vanstone, "*(g^{k−p}w/(k−p)!) = Σ_r (−1)^{r+p} g^{n+r−p−k} c^r wᵗ/((n+r−p−k)! r!)"),
    identity!("greub-vanstone", 2, 4, greub_vanstone, "h^p∘k^p = p!(h∘k)^p and the permutation-sum form"),
    identity!("alt-oracle", 2, 4, alt_oracle, "Alt agrees with the (2p)!-term permutation sum"),
    identity!("bianchi-kernel", 4, 4, bianchi_kernel, "products of commuting symmetric forms lie in ker 𝔖 and alternate to zero"),
    identity!("pure-vanishing", 4, 4, pure_vanishing, "pure curvature has Alt(R∘R) = 0"),
    identity!("two-pure-witness", 4, 4, two_pure_witness, "constructed 2-pure witnesses have Alt(R∘R) = 0"),
    identity!("stehney", 4, 4, stehney, "R = c A² has Alt(R∘R) = 0"),
    identity!("pontrjagin-alt-oracle", 4, 4, pontrjagin_alt_oracle, "P_1 coefficients agree with the permutation-sum Alt(R∘R)"),
    identity!("alt-wedge", 4, 4, alt_wedge, "Alt(a)∧Alt(b) = (−1)^{ab}(a!)²(b!)²(2p)!/((2a)!(2b)!(p!)²) Alt(ab)"),
    identity!("three-dimensional-curvature", 3, 3, three_dimensional_curvature, "in dimension 3, R = (cR − (c²R/4) g) g"),
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown identity {0:?} (run `biform verify --list` for the names)")]
    UnknownIdentity(String),
}

pub fn find(name: &str) -> Result<&'static Identity, VerifyError> {
    IDENTITIES
        .iter()
        .find(|id| id.name == name)
        .ok_or_else(|| VerifyError::UnknownIdentity(name.to_string()))
}

/// The named identities, or every default-selected one when `names` is empty.
pub fn select(names: &[String]) -> Result<Vec<&'static Identity>, VerifyError> {
    if names.is_empty() {
        return Ok(IDENTITIES.iter().filter(|id| id.default_selected).collect());
    }
    names.iter().map(|name| find(name)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub message: String,
    pub inputs: Vec<(String, TensorDocument)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Counterexample),
    Skip { min_n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: &'static str,
    pub statement: &'static str,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub status: Status,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail(_))
    }

    /// The counterexample as a JSON document, when the identity failed.
    pub fn counterexample_json(&self) -> Option<String> {
        let Status::Fail(ce) = &self.status else { return None };
        let inputs: Vec<_> = ce
            .inputs
            .iter()
            .map(|(label, doc)| json!({"label": label, "document": doc.to_value()}))
            .collect();
        let value = json!({
            "identity": self.identity,
            "statement": self.statement,
            "n": self.n,
            "seed": self.seed,
            "trial": ce.trial,
            "message": ce.message,
            "inputs": inputs,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("reports always serialize");
        text.push('\n');
        Some(text)
    }

    pub fn counterexample_file_name(&self) -> String {
        format!("{}-n{}-seed{}.json", self.identity, self.n, self.seed)
    }

    /// Writes the counterexample (if any) into `dir` and returns its path.
    pub fn write_counterexample(&self, dir: &Path) -> std::io::Result<Option<PathBuf>> {
        let Some(text) = self.counterexample_json() else { return Ok(None) };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.counterexample_file_name());
        std::fs::write(&path, text)?;
        Ok(Some(path))
    }

    /// One or more report lines; `counterexample` names the written file.
    pub fn render(&self, counterexample: Option<&Path>) -> String {
        let head = format!("{} n={} trials={} seed={}", self.identity, self.n, self.trials, self.seed);
        let mut out = String::new();
        match &self.status {
            Status::Pass => {
                let _ = write!(out, "PASS {head}: {}", self.statement);
            }
            Status::Skip { min_n } => {
                let _ = write!(out, "SKIP {head}: needs n >= {min_n}");
            }
            Status::Fail(ce) => {
                let _ = write!(out, "FAIL {head}: {}\n  trial {}: {}", self.statement, ce.trial, ce.message);
                if let Some(path) = counterexample {
                    let _ = write!(out, "\n  counterexample: {}", path.display());
                }
            }
        }
        out
    }
}

/// Runs `trials` seeded trials of `identity` at dimension `n`.
pub fn run_identity(identity: &'static Identity, n: usize, trials: usize, seed: u64) -> VerificationReport {
    let status = if n < identity.min_n {
        Status::Skip { min_n: identity.min_n }
    } else {
        let failure = (0..trials).into_par_iter().find_map_first(|k| {
            let mut trial = Trial::new(identity.name, seed, k, n);
            match (identity.check)(&mut trial) {
                Ok(()) => None,
                Err(CheckError(message)) => Some(Counterexample {
                    trial: k,
                    message,
                    inputs: trial.into_inputs(),
                }),
            }
        });
        failure.map_or(Status::Pass, Status::Fail)
    };
    log::debug!("{} at n = {n}: {:?}", identity.name, matches!(status, Status::Pass));
    VerificationReport {
        identity: identity.name,
        statement: identity.statement,
        n,
        trials,
        seed,
        status,
    }
}
