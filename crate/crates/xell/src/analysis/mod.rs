//! Floating-point layer: high-precision reals, Gauss quadrature, inner
//! products and norms, the integration formula, Gram-Schmidt, exact
//! generating-function checks, the recurrence substitute and root analysis.

pub mod genfun;
pub mod inner;
pub mod mp;
pub mod quadrature;
pub mod recurrence;
pub mod zeros;

pub use inner::{
    classical_inner, gram_check, gram_schmidt, gram_schmidt_check, inner_product,
    integration_formula_check, norm_identity_check,
};
pub use mp::{rat_to_f64, rel_diff, Mp};
pub use quadrature::QuadratureRule;
pub use zeros::{zeros, zeros_check, RootSet};
