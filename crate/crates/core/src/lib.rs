//! Exact computer algebra for double forms on an `n`-dimensional Euclidean
//! space with orthonormal basis `e_1, …, e_n`.
//!
//! A double form of bidegree `(p, q)` is an element of `Λ^p V* ⊗ Λ^q V*`. The
//! crate provides the exterior product, the composition product, interior
//! products, the double Hodge star, exterior extensions of endomorphisms and
//! their characteristic invariants, and the curvature-level operations used
//! to study Pontrjagin forms. All coefficients are exact rationals.

pub mod combinatorics;
pub mod composition;
pub mod curvature;
pub mod double_form;
pub mod endo;
pub mod error;
pub mod interior;
pub mod linalg;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod scalar;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 32;

pub use combinatorics::{complement_with_sign, enumerate, merge_with_sign, MultiIndex};
pub use composition::{from_operator, to_operator, OperatorBlock};
pub use curvature::{
    alt, bianchi, change_basis, constant_curvature, is_pure_in_basis, pontrjagin_form,
    pontrjagin_product, product_of_bilinears, pure_curvature, CharacteristicForm,
    CurvatureTensor, ExteriorForm, Normalization, PurityReport,
};
pub use double_form::DoubleForm;
pub use endo::{
    cofactor_general, cofactor_s, determinant, exp_ext, hat_l, hat_r, invariant_s, invariants,
    newton_t,
};
pub use error::{Error, Result};
pub use interior::{hodge_star, interior, interior_left, interior_right, mu, volume};
pub use linalg::Matrix;
pub use scalar::Scalar;
